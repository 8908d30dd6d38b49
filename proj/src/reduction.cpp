#include "lc/reduction.hpp"

#include <algorithm>
#include <deque>
#include <unordered_set>

namespace lc {

std::string_view kind_symbol(RedexKind kind) { return kind == RedexKind::Beta ? "β" : "η"; }

std::string_view verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Positive: return "Positive";
    case Verdict::Negative: return "Negative";
    case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

bool is_beta(const Term& t) { return t.is_app() && t.fun().is_lam(); }

bool is_eta(const Term& t)
{
    if (!t.is_lam()) return false;
    const Term& body = t.body();
    return body.is_app() && body.arg().is_var() && body.arg().name() == t.binder() &&
           !occurs_free(t.binder(), body.fun());
}

void collect_redexes(const Term& t, TermPath& path, std::vector<Redex>& out)
{
    if (is_beta(t)) out.push_back({path, RedexKind::Beta});
    if (is_eta(t)) out.push_back({path, RedexKind::Eta});
    auto descend = [&](Step s, const Term& child) {
        path.steps.push_back(s);
        collect_redexes(child, path, out);
        path.steps.pop_back();
    };
    if (t.is_lam()) {
        descend(Step::Body, t.body());
    } else if (t.is_app()) {
        descend(Step::Fun, t.fun());
        descend(Step::Arg, t.arg());
    }
}

// First redex in preorder satisfying `pred`.
template <typename Pred>
bool first_redex(const Term& t, TermPath& path, Pred pred)
{
    if (pred(t)) return true;
    auto descend = [&](Step s, const Term& child) {
        path.steps.push_back(s);
        if (first_redex(child, path, pred)) return true;
        path.steps.pop_back();
        return false;
    };
    if (t.is_lam()) return descend(Step::Body, t.body());
    if (t.is_app()) return descend(Step::Fun, t.fun()) || descend(Step::Arg, t.arg());
    return false;
}

Term contractum(const Term& redex, RedexKind kind)
{
    if (kind == RedexKind::Beta) return substitute(redex.fun().body(), redex.fun().binder(), redex.arg());
    return redex.body().fun();
}

}  // namespace

std::vector<Redex> find_redexes(const Term& term)
{
    std::vector<Redex> out;
    TermPath path;
    collect_redexes(term, path, out);
    return out;
}

Term contract(const Term& term, const Redex& redex)
{
    const Term* at = subterm_at(term, redex.path);
    if (at == nullptr) throw InvalidRedex("path " + to_string(redex.path) + " leaves the term");
    bool ok = redex.kind == RedexKind::Beta ? is_beta(*at) : is_eta(*at);
    if (!ok) {
        throw InvalidRedex("no " + std::string(kind_symbol(redex.kind)) + "-redex at " + to_string(redex.path));
    }
    return replace_at(term, redex.path, contractum(*at, redex.kind));
}

std::optional<Redex> leftmost_redex(const Term& term)
{
    TermPath path;
    if (first_redex(term, path, is_beta)) return Redex{std::move(path), RedexKind::Beta};
    path.steps.clear();
    if (first_redex(term, path, is_eta)) return Redex{std::move(path), RedexKind::Eta};
    return std::nullopt;
}

std::optional<Term> leftmost_step(const Term& term)
{
    auto r = leftmost_redex(term);
    if (!r) return std::nullopt;
    return contract(term, *r);
}

Trace normalize(const Term& term, std::size_t fuel)
{
    Trace trace{{}, term, TraceStatus::FuelExhausted};
    for (;;) {
        auto r = leftmost_redex(trace.final);
        if (!r) {
            trace.status = TraceStatus::NormalForm;
            return trace;
        }
        if (trace.steps.size() >= fuel) return trace;
        Term next = contract(trace.final, *r);
        trace.steps.push_back({std::move(trace.final), std::move(*r)});
        trace.final = std::move(next);
    }
}

bool is_normal_form(const Term& term) { return !leftmost_redex(term).has_value(); }

bool is_hnf(const Term& term)
{
    const Term* t = &term;
    while (t->is_lam()) t = &t->body();
    while (t->is_app()) t = &t->fun();
    return t->is_var();
}

Outcome<Term> head_normalize(const Term& term, std::size_t fuel)
{
    Term cur = term;
    std::size_t steps = 0;
    while (!is_hnf(cur)) {
        if (steps >= fuel) return Outcome<Term>::unknown(steps);
        // Outside an hnf the leftmost β-redex is the head redex.
        auto next = leftmost_step(cur);
        if (!next) return Outcome<Term>::unknown(steps);
        cur = std::move(*next);
        ++steps;
    }
    return Outcome<Term>::positive(std::move(cur), steps);
}

Outcome<Term> solvable(const Term& term, std::size_t fuel)
{
    Term closed = term;
    auto fv = free_vars(term);
    for (auto it = fv.rbegin(); it != fv.rend(); ++it) closed = Term::lam(*it, std::move(closed));
    return head_normalize(closed, fuel);
}

Outcome<Term> beta_eta_eq(const Term& a, const Term& b, std::size_t fuel)
{
    auto na = normalize(a, fuel);
    auto nb = normalize(b, fuel);
    auto spent = na.length() + nb.length();
    if (na.status != TraceStatus::NormalForm || nb.status != TraceStatus::NormalForm)
        return Outcome<Term>::unknown(spent);
    if (alpha_eq(na.final, nb.final)) return Outcome<Term>::positive(std::move(na.final), spent);
    return Outcome<Term>::negative(spent);
}

Outcome<Trace> reduces_to(const Term& from, const Term& to, std::size_t fuel, std::size_t width)
{
    struct Node {
        Term term;
        std::size_t parent;
        Redex via;
    };
    constexpr auto root = static_cast<std::size_t>(-1);

    auto witness = [&](const std::vector<Node>& nodes, std::size_t last) {
        Trace t{{}, nodes[last].term, TraceStatus::NormalForm};
        for (auto i = last; nodes[i].parent != root; i = nodes[i].parent)
            t.steps.push_back({nodes[nodes[i].parent].term, nodes[i].via});
        std::reverse(t.steps.begin(), t.steps.end());
        t.status = is_normal_form(t.final) ? TraceStatus::NormalForm : TraceStatus::FuelExhausted;
        return t;
    };

    const auto target = alpha_key(to);
    std::vector<Node> nodes{{from, root, {}}};
    if (alpha_key(from) == target) return Outcome<Trace>::positive(witness(nodes, 0), 0);

    std::unordered_set<std::string> seen{alpha_key(from)};
    std::deque<std::size_t> frontier{0};
    std::size_t expansions = 0;
    while (!frontier.empty() && expansions < fuel) {
        auto idx = frontier.front();
        frontier.pop_front();
        ++expansions;
        for (auto& r : find_redexes(nodes[idx].term)) {
            Term next = contract(nodes[idx].term, r);
            auto key = alpha_key(next);
            if (!seen.insert(key).second) continue;
            nodes.push_back({std::move(next), idx, std::move(r)});
            if (key == target) return Outcome<Trace>::positive(witness(nodes, nodes.size() - 1), expansions);
            if (frontier.size() < width) frontier.push_back(nodes.size() - 1);
        }
    }
    return Outcome<Trace>::unknown(expansions);
}

namespace {

std::size_t pick_redex(std::size_t count, std::mt19937_64& rng, double right_bias)
{
    if (right_bias > 0.0 && std::uniform_real_distribution<double>(0.0, 1.0)(rng) < right_bias) return count - 1;
    return std::uniform_int_distribution<std::size_t>(0, count - 1)(rng);
}

}  // namespace

std::optional<Term> random_strategy_step(const Term& term, std::mt19937_64& rng, double right_bias)
{
    auto redexes = find_redexes(term);
    if (redexes.empty()) return std::nullopt;
    return contract(term, redexes[pick_redex(redexes.size(), rng, right_bias)]);
}

Trace random_normalize(const Term& term, std::size_t fuel, std::mt19937_64& rng, double right_bias)
{
    Trace trace{{}, term, TraceStatus::FuelExhausted};
    for (;;) {
        auto redexes = find_redexes(trace.final);
        if (redexes.empty()) {
            trace.status = TraceStatus::NormalForm;
            return trace;
        }
        if (trace.steps.size() >= fuel) return trace;
        auto pick = pick_redex(redexes.size(), rng, right_bias);
        Term next = contract(trace.final, redexes[pick]);
        trace.steps.push_back({std::move(trace.final), std::move(redexes[pick])});
        trace.final = std::move(next);
    }
}

std::string render_trace(const Trace& trace)
{
    std::string out;
    std::size_t n = 0;
    for (const auto& s : trace.steps) {
        out += std::to_string(n++) + ": " + print(s.term) + "   [" + std::string(kind_symbol(s.redex.kind)) + " at " +
               to_string(s.redex.path) + "]\n";
    }
    out += std::to_string(n) + ": " + print(trace.final) + "\n";
    out += trace.status == TraceStatus::NormalForm ? "NormalForm\n" : "FuelExhausted\n";
    return out;
}

}  // namespace lc
