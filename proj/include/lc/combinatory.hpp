#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lc/reduction.hpp"
#include "lc/syntax.hpp"

namespace lc {

// ---------------------------------------------------------------------------
// Standard library of combinators

class UnknownConstant : public std::out_of_range {
public:
    explicit UnknownConstant(std::string_view name);
};

/// Names accepted by lib_lookup and by the parser's constant expansion, in
/// table order: S K I T F omega Omega X Theta Ycurry Zero Succ Pred Pair.
std::span<const std::string_view> library_names();

/// The defining closed term of a library entry. "ω", "Ω" and "Θ" are
/// accepted as aliases. Throws UnknownConstant.
Term lib_lookup(std::string_view name);
std::optional<Term> find_constant(std::string_view name);

/// Conditional: `cond` applied to the two branches (T picks the first).
Term if_then_else(const Term& cond, const Term& then_branch, const Term& else_branch);

/// [a, b] ≡ λp.p a b with p fresh for a and b.
Term make_pair(const Term& a, const Term& b);

// ---------------------------------------------------------------------------
// Combinatory logic

enum class CLKind { K, S, I, Var, App };

class CLTerm {
public:
    static CLTerm k();
    static CLTerm s();
    static CLTerm i();
    static CLTerm var(std::string name);
    static CLTerm app(CLTerm fun, CLTerm arg);

    CLKind kind() const;
    const std::string& name() const;
    const CLTerm& fun() const;
    const CLTerm& arg() const;
    std::size_t size() const;

    friend bool operator==(const CLTerm& a, const CLTerm& b);

private:
    struct Node;
    explicit CLTerm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Applicative notation, left-associative with minimal parentheses.
std::string print(const CLTerm& term);

bool occurs_in(std::string_view name, const CLTerm& term);

/// Bracket abstraction [x]: [x]x = I, [x]P = K P when x does not occur in P,
/// [x](P Q) = S ([x]P) ([x]Q). Free variables become CL variables.
CLTerm compile(const Term& term);

struct CLReduction {
    CLTerm term;
    TraceStatus status;
    std::size_t steps;
};

/// Leftmost-outermost weak reduction with K P Q → P, S P Q R → P R (Q R),
/// I P → P, at most `fuel` contractions.
CLReduction cl_reduce(const CLTerm& term, std::size_t fuel);

/// Atoms become their λ definitions, variables and applications carry over.
Term cl_to_lambda(const CLTerm& term);

// ---------------------------------------------------------------------------
// Numerals: ⌜0⌝ ≡ I, ⌜n+1⌝ ≡ [F, ⌜n⌝]

struct NumeralSystem {
    Term zero;
    Term succ;
    Term iszero;
    Term pred;
};

const NumeralSystem& standard_numerals();

/// Normalized standard numeral.
Term numeral_encode(std::size_t n);

/// Counts predecessor applications until the zero test yields T. `fuel` is
/// the total number of contractions the whole decode may spend.
Outcome<std::size_t> numeral_decode(const Term& term, std::size_t fuel);

// ---------------------------------------------------------------------------
// Fixed points

/// W W with W ≡ λx.f (x x).
Term fix_curry(const Term& f);

/// Θ f.
Term fix_turing(const Term& f);

class NotAnAbstraction : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// For a functional λf.body, returns Θ (λf.body), a term F with F ↠ body[f := F].
Term solve_equation(const Term& functional);

// ---------------------------------------------------------------------------
// Applicative closure

class EmptyBasis : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Enumerates applicative combinations of `basis` by number of application
/// nodes (0 … size_bound), then by left-subtree size, then basis order.
/// Positive carries the first combination βη-equal to `target`.
Outcome<Term> closure_generates(std::span<const Term> basis, const Term& target, std::size_t size_bound,
                                std::size_t fuel);

}  // namespace lc
