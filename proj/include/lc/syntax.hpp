#pragma once

#include <cstddef>
#include <memory>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lc {

enum class TermKind { Var, Lam, App };

/// An immutable λ-term. Copies are cheap and share structure internally, but
/// no sharing is observable: every operation returns a new value.
class Term {
public:
    static Term var(std::string name);
    static Term lam(std::string binder, Term body);
    static Term app(Term fun, Term arg);

    TermKind kind() const;
    bool is_var() const { return kind() == TermKind::Var; }
    bool is_lam() const { return kind() == TermKind::Lam; }
    bool is_app() const { return kind() == TermKind::App; }

    // Var: the variable name. Lam: the binder.
    const std::string& name() const;
    const std::string& binder() const { return name(); }
    const Term& body() const;
    const Term& fun() const;
    const Term& arg() const;

    /// Number of nodes.
    std::size_t size() const;

    /// Structural identity (binder names included).
    friend bool operator==(const Term& a, const Term& b);

    bool same_node(const Term& other) const { return node_ == other.node_; }

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

/// Left-nested application f a1 a2 ... an.
Term apply(Term fun, std::initializer_list<Term> args);

using VarSet = std::set<std::string, std::less<>>;

enum class Step : unsigned char { Body, Fun, Arg };

/// Address of a subterm occurrence: the steps taken from the root.
struct TermPath {
    std::vector<Step> steps;

    bool empty() const { return steps.empty(); }
    std::size_t size() const { return steps.size(); }
    TermPath then(Step s) const;
    TermPath concat(const TermPath& tail) const;
    friend bool operator==(const TermPath&, const TermPath&) = default;
};

/// "ε" for the root, otherwise e.g. "Fun.Arg.Body".
std::string to_string(const TermPath& path);
std::string_view step_name(Step s);

class ParseError : public std::runtime_error {
public:
    ParseError(std::string message, std::size_t position);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Parses the term grammar. Both "λ" and "\" introduce abstractions, and a
/// binder list "λx y.M" abbreviates "λx.λy.M". With `allow_constants`, free
/// identifiers naming a library combinator (S, K, Theta, ...) are replaced by
/// their definitions.
Term parse(std::string_view text, bool allow_constants = false);

/// Minimal parenthesization; parse(print(t)) == t.
std::string print(const Term& term);
std::ostream& operator<<(std::ostream& os, const Term& term);

VarSet free_vars(const Term& term);
bool occurs_free(std::string_view name, const Term& term);
bool is_combinator(const Term& term);

/// Preorder listing of all subterm occurrences (node before children, Fun
/// before Arg), starting with the term itself at the empty path.
std::vector<std::pair<TermPath, Term>> subterms(const Term& term);

/// nullptr when the path leaves the tree.
const Term* subterm_at(const Term& term, const TermPath& path);

/// Replaces the occurrence at `path` (context filling C[replacement]).
/// Throws std::out_of_range when the path leaves the tree.
Term replace_at(const Term& term, const TermPath& path, Term replacement);

bool alpha_eq(const Term& a, const Term& b);

/// A string that is equal for two terms iff they are α-equivalent. Bound
/// variables are written as binder depth indices, free ones by name.
std::string alpha_key(const Term& term);

/// `base` if unused, otherwise base1, base2, ... (the first not in `avoid`).
std::string fresh_var(const VarSet& avoid, std::string_view base);

/// Capture-avoiding M[x := N]. Binders that would capture a free variable of
/// the replacement are renamed with fresh_var.
Term substitute(const Term& term, std::string_view var, const Term& replacement);

}  // namespace lc
