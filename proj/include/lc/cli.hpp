#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lc/boehm.hpp"

namespace lc::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitUnknown = 2;
inline constexpr int kExitDistinct = 3;

enum class Strategy { Leftmost, Random };

struct CliConfig {
    std::size_t fuel = 1000;
    std::size_t depth = 8;
    std::size_t width = 256;
    std::uint64_t seed = 0;
    RenderFormat format = RenderFormat::Text;
    bool constants = true;
    Strategy strategy = Strategy::Leftmost;
};

struct Streams {
    std::ostream& out;
    std::ostream& err;
};

int cmd_normalize(std::string_view input, const CliConfig& config, Streams io);
int cmd_eq(std::string_view lhs, std::string_view rhs, const CliConfig& config, Streams io);
int cmd_compile(std::string_view input, const CliConfig& config, Streams io);
int cmd_bt(std::string_view input, const CliConfig& config, Streams io);
int cmd_decode(std::string_view input, const CliConfig& config, Streams io);
int cmd_encode(std::string_view number, const CliConfig& config, Streams io);
int cmd_solve(std::string_view input, const CliConfig& config, Streams io);

/// Line-oriented session; returns when `in` is exhausted or on ":quit".
void repl(CliConfig config, std::istream& in, Streams io);

/// Entry point; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, Streams io);

}  // namespace lc::cli
