#include "lc/cli.hpp"

#include <charconv>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lc/combinatory.hpp"
#include "lc/reduction.hpp"

namespace lc::cli {

namespace {

using json = nlohmann::ordered_json;

std::string_view trim(std::string_view s)
{
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::optional<Term> parse_or_report(std::string_view input, const CliConfig& config, Streams io)
{
    try {
        return parse(input, config.constants);
    } catch (const ParseError& e) {
        io.err << "error: " << e.what() << '\n';
        return std::nullopt;
    }
}

json path_json(const TermPath& path)
{
    json out = json::array();
    for (auto s : path.steps) out.push_back(step_name(s));
    return out;
}

std::string_view status_name(TraceStatus s) { return s == TraceStatus::NormalForm ? "NormalForm" : "FuelExhausted"; }

std::optional<std::size_t> parse_count(std::string_view text)
{
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
    return value;
}

}  // namespace

int cmd_normalize(std::string_view input, const CliConfig& config, Streams io)
{
    auto term = parse_or_report(input, config, io);
    if (!term) return kExitUsage;

    Trace trace = [&] {
        if (config.strategy == Strategy::Random) {
            std::mt19937_64 rng(config.seed);
            return random_normalize(*term, config.fuel, rng);
        }
        return normalize(*term, config.fuel);
    }();

    if (config.format == RenderFormat::Json) {
        json steps = json::array();
        std::size_t n = 0;
        for (const auto& s : trace.steps) {
            steps.push_back({{"step", n++},
                             {"term", print(s.term)},
                             {"kind", s.redex.kind == RedexKind::Beta ? "beta" : "eta"},
                             {"path", path_json(s.redex.path)}});
        }
        json doc{{"status", status_name(trace.status)},
                 {"steps", trace.length()},
                 {"final", print(trace.final)},
                 {"trace", std::move(steps)}};
        io.out << doc.dump() << '\n';
    } else {
        io.out << render_trace(trace);
    }
    return trace.status == TraceStatus::NormalForm ? kExitOk : kExitUnknown;
}

int cmd_eq(std::string_view lhs, std::string_view rhs, const CliConfig& config, Streams io)
{
    auto a = parse_or_report(lhs, config, io);
    if (!a) return kExitUsage;
    auto b = parse_or_report(rhs, config, io);
    if (!b) return kExitUsage;

    auto outcome = beta_eta_eq(*a, *b, config.fuel);
    std::string_view word = outcome.is_positive() ? "Equal" : outcome.is_negative() ? "Distinct" : "Unknown";
    if (config.format == RenderFormat::Json) {
        json doc{{"verdict", word}, {"fuel_spent", outcome.fuel_spent}};
        if (outcome.witness) doc["normal_form"] = print(*outcome.witness);
        io.out << doc.dump() << '\n';
    } else {
        io.out << word;
        if (outcome.witness) io.out << "   (common normal form " << print(*outcome.witness) << ')';
        io.out << '\n';
    }
    if (outcome.is_positive()) return kExitOk;
    return outcome.is_negative() ? kExitDistinct : kExitUnknown;
}

int cmd_compile(std::string_view input, const CliConfig& config, Streams io)
{
    auto term = parse_or_report(input, config, io);
    if (!term) return kExitUsage;
    auto cl = print(compile(*term));
    if (config.format == RenderFormat::Json)
        io.out << json{{"cl", cl}}.dump() << '\n';
    else
        io.out << cl << '\n';
    return kExitOk;
}

int cmd_bt(std::string_view input, const CliConfig& config, Streams io)
{
    auto term = parse_or_report(input, config, io);
    if (!term) return kExitUsage;
    io.out << bt_render(bt_compute(*term, config.depth, config.fuel), config.format);
    if (config.format == RenderFormat::Json) io.out << '\n';
    return kExitOk;
}

int cmd_decode(std::string_view input, const CliConfig& config, Streams io)
{
    auto term = parse_or_report(input, config, io);
    if (!term) return kExitUsage;
    auto outcome = numeral_decode(*term, config.fuel);
    if (config.format == RenderFormat::Json) {
        json doc{{"verdict", verdict_name(outcome.verdict)}, {"fuel_spent", outcome.fuel_spent}};
        if (outcome.witness) doc["value"] = *outcome.witness;
        io.out << doc.dump() << '\n';
    } else if (outcome.witness) {
        io.out << *outcome.witness << '\n';
    } else {
        io.out << "Unknown\n";
    }
    return outcome.is_positive() ? kExitOk : kExitUnknown;
}

int cmd_encode(std::string_view number, const CliConfig& config, Streams io)
{
    auto n = parse_count(trim(number));
    if (!n) {
        io.err << "error: expected a natural number, got '" << trim(number) << "'\n";
        return kExitUsage;
    }
    auto text = print(numeral_encode(*n));
    if (config.format == RenderFormat::Json)
        io.out << json{{"n", *n}, {"term", text}}.dump() << '\n';
    else
        io.out << text << '\n';
    return kExitOk;
}

int cmd_solve(std::string_view input, const CliConfig& config, Streams io)
{
    auto functional = parse_or_report(input, config, io);
    if (!functional) return kExitUsage;
    try {
        auto text = print(solve_equation(*functional));
        if (config.format == RenderFormat::Json)
            io.out << json{{"term", text}}.dump() << '\n';
        else
            io.out << text << '\n';
        return kExitOk;
    } catch (const NotAnAbstraction& e) {
        io.err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

// ---------------------------------------------------------------------------
// REPL

namespace {

constexpr std::string_view kReplHelp =
    ":normalize M      leftmost reduction trace of M\n"
    ":eq M = N         βη-equality check\n"
    ":compile M        bracket abstraction to S/K/I\n"
    ":bt M             Böhm tree approximant\n"
    ":step [M]         one leftmost step (on M, or on the current term)\n"
    ":set OPTION VALUE fuel|depth|width|seed N, format text|json, constants on|off\n"
    ":quit\n"
    "M                 normalize M and make it the current term\n";

bool set_option(CliConfig& config, std::string_view option, std::string_view value, Streams io)
{
    if (option == "format") {
        if (value == "text" || value == "json") {
            config.format = value == "json" ? RenderFormat::Json : RenderFormat::Text;
            return true;
        }
    } else if (option == "constants") {
        if (value == "on" || value == "off") {
            config.constants = value == "on";
            return true;
        }
    } else if (auto n = parse_count(value)) {
        if (option == "fuel") config.fuel = *n;
        else if (option == "depth") config.depth = *n;
        else if (option == "width") config.width = *n;
        else if (option == "seed") config.seed = *n;
        else {
            io.err << "error: unknown option '" << option << "'\n";
            return false;
        }
        return true;
    }
    io.err << "error: bad value '" << value << "' for " << option << '\n';
    return false;
}

}  // namespace

void repl(CliConfig config, std::istream& in, Streams io)
{
    std::optional<Term> current;
    std::string line;
    for (;;) {
        io.out << "λ> " << std::flush;
        if (!std::getline(in, line)) break;
        auto input = trim(line);
        if (input.empty()) continue;

        if (input[0] != ':') {
            auto term = parse_or_report(input, config, io);
            if (!term) continue;
            auto trace = normalize(*term, config.fuel);
            io.out << print(trace.final) << "   (" << status_name(trace.status) << " after " << trace.length()
                   << " steps)\n";
            current = std::move(trace.final);
            continue;
        }

        auto space = input.find_first_of(" \t");
        auto command = input.substr(0, space);
        auto rest = space == std::string_view::npos ? std::string_view{} : trim(input.substr(space));

        if (command == ":quit" || command == ":q") break;
        if (command == ":help") {
            io.out << kReplHelp;
        } else if (command == ":normalize") {
            cmd_normalize(rest, config, io);
        } else if (command == ":compile") {
            cmd_compile(rest, config, io);
        } else if (command == ":bt") {
            cmd_bt(rest, config, io);
        } else if (command == ":eq") {
            auto eq = rest.find('=');
            if (eq == std::string_view::npos) {
                io.err << "error: usage :eq M = N\n";
                continue;
            }
            cmd_eq(trim(rest.substr(0, eq)), trim(rest.substr(eq + 1)), config, io);
        } else if (command == ":step") {
            if (!rest.empty()) {
                auto term = parse_or_report(rest, config, io);
                if (!term) continue;
                current = std::move(*term);
            }
            if (!current) {
                io.err << "error: no current term\n";
                continue;
            }
            if (auto next = leftmost_step(*current)) {
                current = std::move(*next);
                io.out << print(*current) << '\n';
            } else {
                io.out << "AlreadyNormal\n";
            }
        } else if (command == ":set") {
            auto sp = rest.find_first_of(" \t");
            if (sp == std::string_view::npos) {
                io.err << "error: usage :set OPTION VALUE\n";
                continue;
            }
            set_option(config, rest.substr(0, sp), trim(rest.substr(sp)), io);
        } else {
            io.err << "error: unknown command '" << command << "' (try :help)\n";
        }
    }
    io.out << '\n';
}

// ---------------------------------------------------------------------------
// Command line

int run(const std::vector<std::string>& args, std::istream& in, Streams io)
{
    CliConfig config;
    CLI::App app{"Workbench for the untyped λβη-calculus"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text";
    std::string strategy = "leftmost";
    bool no_constants = false;
    app.add_option("--fuel", config.fuel, "Contraction budget")->capture_default_str();
    app.add_option("--depth", config.depth, "Böhm tree depth")->capture_default_str();
    app.add_option("--width", config.width, "Search frontier width")->capture_default_str();
    app.add_option("--seed", config.seed, "Seed for the random strategy")->capture_default_str();
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_flag("--no-constants", no_constants, "Do not expand library names (S, K, Theta, ...)");

    std::vector<std::string> inputs;
    auto add_input = [&](CLI::App* sub, std::string_view what) {
        sub->add_option("input", inputs, std::string(what) + " (read from stdin when omitted)");
    };

    auto* normalize_cmd = app.add_subcommand("normalize", "Leftmost reduction trace");
    add_input(normalize_cmd, "Term");
    normalize_cmd->add_option("--strategy", strategy, "leftmost or random")
        ->check(CLI::IsMember({"leftmost", "random"}))
        ->capture_default_str();
    auto* eq_cmd = app.add_subcommand("eq", "βη-equality of two terms");
    add_input(eq_cmd, "Two terms");
    auto* compile_cmd = app.add_subcommand("compile", "Bracket abstraction to S/K/I");
    add_input(compile_cmd, "Term");
    auto* bt_cmd = app.add_subcommand("bt", "Böhm tree approximant");
    add_input(bt_cmd, "Term");
    auto* decode_cmd = app.add_subcommand("decode", "Read a standard numeral");
    add_input(decode_cmd, "Term");
    auto* encode_cmd = app.add_subcommand("encode", "Print the standard numeral for n");
    add_input(encode_cmd, "Natural number");
    auto* solve_cmd = app.add_subcommand("solve", "Solve F = M[f := F] for a functional λf.M");
    add_input(solve_cmd, "Functional");
    auto* repl_cmd = app.add_subcommand("repl", "Interactive session");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        io.out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        io.out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        io.err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    config.format = format == "json" ? RenderFormat::Json : RenderFormat::Text;
    config.constants = !no_constants;
    config.strategy = strategy == "random" ? Strategy::Random : Strategy::Leftmost;

    if (repl_cmd->parsed()) {
        repl(config, in, io);
        return kExitOk;
    }

    if (inputs.empty()) {
        if (eq_cmd->parsed()) {
            std::string line;
            while (std::getline(in, line))
                if (!trim(line).empty()) inputs.emplace_back(trim(line));
        } else {
            inputs.emplace_back(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
        }
    }

    if (eq_cmd->parsed()) {
        if (inputs.size() != 2) {
            io.err << "error: eq expects exactly two terms\n";
            return kExitUsage;
        }
        return cmd_eq(inputs[0], inputs[1], config, io);
    }
    if (inputs.size() != 1) {
        io.err << "error: expected exactly one input\n";
        return kExitUsage;
    }
    const auto& input = inputs.front();
    if (normalize_cmd->parsed()) return cmd_normalize(input, config, io);
    if (compile_cmd->parsed()) return cmd_compile(input, config, io);
    if (bt_cmd->parsed()) return cmd_bt(input, config, io);
    if (decode_cmd->parsed()) return cmd_decode(input, config, io);
    if (encode_cmd->parsed()) return cmd_encode(input, config, io);
    if (solve_cmd->parsed()) return cmd_solve(input, config, io);
    return kExitUsage;
}

}  // namespace lc::cli
