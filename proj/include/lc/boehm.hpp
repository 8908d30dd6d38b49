#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "lc/syntax.hpp"

namespace lc {

/// A finite sequence of child indices ⟨n1, …, nk⟩.
class Seq {
public:
    Seq() = default;
    Seq(std::initializer_list<std::size_t> items) : items_(items) {}
    explicit Seq(std::vector<std::size_t> items) : items_(std::move(items)) {}

    std::size_t lh() const { return items_.size(); }
    const std::vector<std::size_t>& items() const { return items_; }
    std::size_t operator[](std::size_t i) const { return items_[i]; }

    /// Concatenation α * β.
    friend Seq operator*(const Seq& a, const Seq& b);

    /// Initial segment: a ≤ b.
    bool prefix_of(const Seq& other) const;

    Seq child(std::size_t k) const;
    Seq parent() const;  // precondition: lh() > 0

    friend bool operator==(const Seq&, const Seq&) = default;
    /// By length, then lexicographically.
    friend std::strong_ordering operator<=>(const Seq& a, const Seq& b);

private:
    std::vector<std::size_t> items_;
};

std::size_t seq_lh(const Seq& s);
Seq seq_concat(const Seq& a, const Seq& b);
bool seq_prefix_le(const Seq& a, const Seq& b);

/// "⟨⟩", "⟨0,1⟩".
std::string to_string(const Seq& s);

/// ⟨λx1 … λxn.x, m⟩.
struct BTLabel {
    std::vector<std::string> binders;
    std::string head;
    std::size_t arity = 0;

    friend bool operator==(const BTLabel&, const BTLabel&) = default;
};

/// "λx.λy.x", or just the head when there are no binders.
std::string to_string(const BTLabel& label);

/// A present node whose label is not (yet) known: head normalization ran out
/// of fuel, or the node lies on the depth frontier (fuel_spent 0).
struct Unresolved {
    std::size_t fuel_spent = 0;
    friend bool operator==(const Unresolved&, const Unresolved&) = default;
};

using BTNode = std::variant<BTLabel, Unresolved>;

struct Budgets {
    std::size_t depth = 0;
    std::size_t fuel = 0;
    friend bool operator==(const Budgets&, const Budgets&) = default;
};

/// Finite approximant of a Böhm tree: a partial map from paths to nodes.
/// Well-formed trees contain the root, are prefix-closed, respect the arity
/// of labeled nodes and have no children below unresolved nodes.
struct BohmTree {
    std::map<Seq, BTNode> nodes;
    Budgets budgets;

    const BTNode* find(const Seq& at) const;
    const BTNode& root() const { return nodes.at(Seq{}); }
    bool root_labeled() const { return std::holds_alternative<BTLabel>(root()); }
    bool well_formed() const;

    friend bool operator==(const BohmTree&, const BohmTree&) = default;
};

class PathOutsideTree : public std::out_of_range {
public:
    explicit PathOutsideTree(const Seq& at);
};

/// Unfolds principal head normal forms, node by node, to `depth` levels.
/// Each node gets its own `fuel` for head normalization.
BohmTree bt_compute(const Term& term, std::size_t depth, std::size_t fuel);

/// β ↦ tree(at * β). The depth budget shrinks by lh(at).
BohmTree bt_subtree(const BohmTree& tree, const Seq& at);

/// Approximation order: every labeled node of `a` appears in `b` with the same
/// label, up to a renaming of binders consistent along root paths.
bool bt_le(const BohmTree& a, const BohmTree& b);

/// Least upper bound of two approximants, or nullopt when some node carries
/// conflicting labels.
std::optional<BohmTree> bt_merge(const BohmTree& a, const BohmTree& b);

enum class RenderFormat { Text, Json };

std::string bt_render(const BohmTree& tree, RenderFormat format);

/// Reads the JSON rendering back. Throws std::invalid_argument on schema
/// violations.
BohmTree bt_from_json(std::string_view json);

}  // namespace lc
