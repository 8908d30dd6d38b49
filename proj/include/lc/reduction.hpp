#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "lc/syntax.hpp"

namespace lc {

enum class RedexKind { Beta, Eta };

struct Redex {
    TermPath path;
    RedexKind kind;
    friend bool operator==(const Redex&, const Redex&) = default;
};

std::string_view kind_symbol(RedexKind kind);  // "β" / "η"

class InvalidRedex : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Answer of a semi-decidable query. `fuel_spent` counts contractions (or
/// search expansions) whatever the verdict; Unknown never claims absence.
enum class Verdict { Positive, Negative, Unknown };

template <typename Witness>
struct Outcome {
    Verdict verdict = Verdict::Unknown;
    std::optional<Witness> witness;
    std::size_t fuel_spent = 0;

    static Outcome positive(Witness w, std::size_t spent) { return {Verdict::Positive, std::move(w), spent}; }
    static Outcome negative(std::size_t spent) { return {Verdict::Negative, std::nullopt, spent}; }
    static Outcome unknown(std::size_t spent) { return {Verdict::Unknown, std::nullopt, spent}; }

    bool is_positive() const { return verdict == Verdict::Positive; }
    bool is_negative() const { return verdict == Verdict::Negative; }
    bool is_unknown() const { return verdict == Verdict::Unknown; }
};

std::string_view verdict_name(Verdict v);

struct TraceStep {
    Term term;    // before the contraction
    Redex redex;  // contracted in `term`
};

enum class TraceStatus { NormalForm, FuelExhausted };

struct Trace {
    std::vector<TraceStep> steps;
    Term final;
    TraceStatus status;

    std::size_t length() const { return steps.size(); }
};

/// All βη-redexes, ordered by the textual position of their λ in print(term).
/// A β-redex (λx.M) N and an η-redex λx.M at its Fun child share that λ; the
/// β-redex is listed first.
std::vector<Redex> find_redexes(const Term& term);

/// Replaces the redex at `redex.path` by its contractum.
/// Throws InvalidRedex when the path does not address a redex of that kind.
Term contract(const Term& term, const Redex& redex);

/// The redex the leftmost strategy contracts: the leftmost β-redex, or the
/// leftmost η-redex when there is no β-redex.
std::optional<Redex> leftmost_redex(const Term& term);

/// One step of leftmost reduction; nullopt when already normal.
std::optional<Term> leftmost_step(const Term& term);

/// Iterates leftmost_step at most `fuel` times.
Trace normalize(const Term& term, std::size_t fuel);

bool is_normal_form(const Term& term);

/// λx1…λxn.x M1…Mm with a variable head.
bool is_hnf(const Term& term);

/// Leftmost reduction until a head normal form appears. Positive carries the
/// principal hnf; never Negative.
Outcome<Term> head_normalize(const Term& term, std::size_t fuel);

/// Closes `term` over its free variables (in sorted order) and head-normalizes.
Outcome<Term> solvable(const Term& term, std::size_t fuel);

/// Positive (with the shared normal form) when both sides normalize to
/// α-equal terms, Negative when they normalize to distinct normal forms,
/// Unknown when either side runs out of fuel.
Outcome<Term> beta_eta_eq(const Term& a, const Term& b, std::size_t fuel);

/// Breadth-first search of the one-step reduction graph from `from`, at most
/// `fuel` node expansions and `width` queued states, deduplicated by α-class.
/// Positive carries the witnessing reduction sequence.
Outcome<Trace> reduces_to(const Term& from, const Term& to, std::size_t fuel, std::size_t width);

/// Contracts a redex chosen with `rng`. With probability `right_bias` the
/// textually rightmost redex is taken; otherwise the choice is uniform.
std::optional<Term> random_strategy_step(const Term& term, std::mt19937_64& rng, double right_bias = 0.0);

/// Runs random_strategy_step up to `fuel` times.
Trace random_normalize(const Term& term, std::size_t fuel, std::mt19937_64& rng, double right_bias = 0.0);

/// "n: <term>   [β at <path>]" per step, then the final term and status.
std::string render_trace(const Trace& trace);

}  // namespace lc
