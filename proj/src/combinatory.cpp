#include "lc/combinatory.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace lc {

// ---------------------------------------------------------------------------
// Standard library

namespace {

struct LibraryEntry {
    std::string_view name;
    std::string_view source;
};

// Sources are written without constants so the table parses with the bare
// grammar.
constexpr std::array<LibraryEntry, 14> kLibrary{{
    {"S", "λx.λy.λz.x z (y z)"},
    {"K", "λx.λy.x"},
    {"I", "λx.x"},
    {"T", "λx.λy.x"},
    {"F", "λx.λy.y"},
    {"omega", "λx.x x"},
    {"Omega", "(λx.x x) (λx.x x)"},
    {"X", "λx.x (λx.λy.x) (λx.λy.λz.x z (y z)) (λx.λy.x)"},
    {"Theta", "(λx.λy.y (x x y)) (λx.λy.y (x x y))"},
    {"Ycurry", "λf.(λx.f (x x)) (λx.f (x x))"},
    {"Zero", "λx.x (λx.λy.x)"},
    {"Succ", "λx.λp.p (λx.λy.y) x"},
    {"Pred", "λx.x (λx.λy.y)"},
    {"Pair", "λa.λb.λp.p a b"},
}};

constexpr std::array<std::pair<std::string_view, std::string_view>, 3> kAliases{{
    {"ω", "omega"},
    {"Ω", "Omega"},
    {"Θ", "Theta"},
}};

const std::vector<Term>& library_terms()
{
    static const std::vector<Term> terms = [] {
        std::vector<Term> out;
        out.reserve(kLibrary.size());
        for (const auto& e : kLibrary) out.push_back(parse(e.source, false));
        return out;
    }();
    return terms;
}

}  // namespace

UnknownConstant::UnknownConstant(std::string_view name)
    : std::out_of_range("unknown constant '" + std::string(name) + "'")
{
}

std::span<const std::string_view> library_names()
{
    static const std::array<std::string_view, kLibrary.size()> names = [] {
        std::array<std::string_view, kLibrary.size()> out{};
        for (std::size_t i = 0; i < kLibrary.size(); ++i) out[i] = kLibrary[i].name;
        return out;
    }();
    return names;
}

std::optional<Term> find_constant(std::string_view name)
{
    for (const auto& [alias, target] : kAliases)
        if (alias == name) name = target;
    for (std::size_t i = 0; i < kLibrary.size(); ++i)
        if (kLibrary[i].name == name) return library_terms()[i];
    return std::nullopt;
}

Term lib_lookup(std::string_view name)
{
    if (auto t = find_constant(name)) return *t;
    throw UnknownConstant(name);
}

Term if_then_else(const Term& cond, const Term& then_branch, const Term& else_branch)
{
    return apply(cond, {then_branch, else_branch});
}

Term make_pair(const Term& a, const Term& b)
{
    auto avoid = free_vars(a);
    avoid.merge(free_vars(b));
    auto p = fresh_var(avoid, "p");
    return Term::lam(p, apply(Term::var(p), {a, b}));
}

// ---------------------------------------------------------------------------
// CL terms

struct CLTerm::Node {
    CLKind kind;
    std::string name;
    std::optional<CLTerm> fun;
    std::optional<CLTerm> arg;
    std::size_t size;
};

CLTerm CLTerm::k()
{
    static const CLTerm atom(std::make_shared<const Node>(Node{CLKind::K, "K", std::nullopt, std::nullopt, 1}));
    return atom;
}

CLTerm CLTerm::s()
{
    static const CLTerm atom(std::make_shared<const Node>(Node{CLKind::S, "S", std::nullopt, std::nullopt, 1}));
    return atom;
}

CLTerm CLTerm::i()
{
    static const CLTerm atom(std::make_shared<const Node>(Node{CLKind::I, "I", std::nullopt, std::nullopt, 1}));
    return atom;
}

CLTerm CLTerm::var(std::string name)
{
    return CLTerm(std::make_shared<const Node>(Node{CLKind::Var, std::move(name), std::nullopt, std::nullopt, 1}));
}

CLTerm CLTerm::app(CLTerm fun, CLTerm arg)
{
    auto size = fun.size() + arg.size() + 1;
    return CLTerm(std::make_shared<const Node>(Node{CLKind::App, {}, std::move(fun), std::move(arg), size}));
}

CLKind CLTerm::kind() const { return node_->kind; }
const std::string& CLTerm::name() const { return node_->name; }
const CLTerm& CLTerm::fun() const { return *node_->fun; }
const CLTerm& CLTerm::arg() const { return *node_->arg; }
std::size_t CLTerm::size() const { return node_->size; }

bool operator==(const CLTerm& a, const CLTerm& b)
{
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    if (a.kind() == CLKind::App) return a.fun() == b.fun() && a.arg() == b.arg();
    return a.name() == b.name();
}

namespace {

void print_cl(const CLTerm& t, std::string& out)
{
    if (t.kind() != CLKind::App) {
        out += t.name();
        return;
    }
    print_cl(t.fun(), out);
    out += ' ';
    if (t.arg().kind() == CLKind::App) {
        out += '(';
        print_cl(t.arg(), out);
        out += ')';
    } else {
        out += t.arg().name();
    }
}

}  // namespace

std::string print(const CLTerm& term)
{
    std::string out;
    print_cl(term, out);
    return out;
}

bool occurs_in(std::string_view name, const CLTerm& term)
{
    switch (term.kind()) {
    case CLKind::Var: return term.name() == name;
    case CLKind::App: return occurs_in(name, term.fun()) || occurs_in(name, term.arg());
    default: return false;
    }
}

namespace {

CLTerm abstract(std::string_view x, const CLTerm& body)
{
    if (body.kind() == CLKind::Var && body.name() == x) return CLTerm::i();
    if (!occurs_in(x, body)) return CLTerm::app(CLTerm::k(), body);
    return CLTerm::app(CLTerm::app(CLTerm::s(), abstract(x, body.fun())), abstract(x, body.arg()));
}

}  // namespace

CLTerm compile(const Term& term)
{
    switch (term.kind()) {
    case TermKind::Var: return CLTerm::var(term.name());
    case TermKind::App: return CLTerm::app(compile(term.fun()), compile(term.arg()));
    case TermKind::Lam: return abstract(term.binder(), compile(term.body()));
    }
    return CLTerm::i();
}

namespace {

CLTerm rebuild(CLTerm head, const std::vector<CLTerm>& args, std::size_t from)
{
    for (auto i = from; i < args.size(); ++i) head = CLTerm::app(std::move(head), args[i]);
    return head;
}

std::optional<CLTerm> cl_step(const CLTerm& t)
{
    std::vector<CLTerm> args;
    const CLTerm* head = &t;
    while (head->kind() == CLKind::App) {
        args.push_back(head->arg());
        head = &head->fun();
    }
    std::reverse(args.begin(), args.end());

    switch (head->kind()) {
    case CLKind::I:
        if (args.size() >= 1) return rebuild(args[0], args, 1);
        break;
    case CLKind::K:
        if (args.size() >= 2) return rebuild(args[0], args, 2);
        break;
    case CLKind::S:
        if (args.size() >= 3) {
            auto r = CLTerm::app(CLTerm::app(args[0], args[2]), CLTerm::app(args[1], args[2]));
            return rebuild(std::move(r), args, 3);
        }
        break;
    default: break;
    }

    for (std::size_t i = 0; i < args.size(); ++i) {
        if (auto reduced = cl_step(args[i])) {
            args[i] = std::move(*reduced);
            return rebuild(*head, args, 0);
        }
    }
    return std::nullopt;
}

}  // namespace

CLReduction cl_reduce(const CLTerm& term, std::size_t fuel)
{
    CLReduction r{term, TraceStatus::FuelExhausted, 0};
    for (;;) {
        auto next = cl_step(r.term);
        if (!next) {
            r.status = TraceStatus::NormalForm;
            return r;
        }
        if (r.steps >= fuel) return r;
        r.term = std::move(*next);
        ++r.steps;
    }
}

Term cl_to_lambda(const CLTerm& term)
{
    switch (term.kind()) {
    case CLKind::K: return lib_lookup("K");
    case CLKind::S: return lib_lookup("S");
    case CLKind::I: return lib_lookup("I");
    case CLKind::Var: return Term::var(term.name());
    case CLKind::App: return Term::app(cl_to_lambda(term.fun()), cl_to_lambda(term.arg()));
    }
    return lib_lookup("I");
}

// ---------------------------------------------------------------------------
// Numerals

const NumeralSystem& standard_numerals()
{
    static const NumeralSystem system{lib_lookup("I"), lib_lookup("Succ"), lib_lookup("Zero"), lib_lookup("Pred")};
    return system;
}

Term numeral_encode(std::size_t n)
{
    const auto& sys = standard_numerals();
    Term cur = sys.zero;
    for (std::size_t i = 0; i < n; ++i) {
        // S⁺ ⌜i⌝ is one β-step from [F, ⌜i⌝].
        cur = normalize(Term::app(sys.succ, cur), 4).final;
    }
    return cur;
}

Outcome<std::size_t> numeral_decode(const Term& term, std::size_t fuel)
{
    const auto& sys = standard_numerals();
    const Term t_true = lib_lookup("T");
    const Term f_false = lib_lookup("F");

    std::size_t spent = 0;
    auto remaining = [&] { return fuel > spent ? fuel - spent : 0; };

    Term cur = term;
    for (std::size_t count = 0;; ++count) {
        Term test = Term::app(sys.iszero, cur);
        auto is_zero = beta_eta_eq(test, t_true, remaining());
        spent += is_zero.fuel_spent;
        if (is_zero.is_positive()) return Outcome<std::size_t>::positive(count, spent);
        if (is_zero.is_unknown()) return Outcome<std::size_t>::unknown(spent);

        auto is_succ = beta_eta_eq(test, f_false, remaining());
        spent += is_succ.fuel_spent;
        if (!is_succ.is_positive()) return Outcome<std::size_t>::unknown(spent);

        auto prev = normalize(Term::app(sys.pred, cur), remaining());
        spent += prev.length();
        if (prev.status != TraceStatus::NormalForm) return Outcome<std::size_t>::unknown(spent);
        cur = std::move(prev.final);
    }
}

// ---------------------------------------------------------------------------
// Fixed points

Term fix_curry(const Term& f)
{
    auto x = fresh_var(free_vars(f), "x");
    auto xx = Term::app(Term::var(x), Term::var(x));
    Term w = Term::lam(x, Term::app(f, xx));
    return Term::app(w, w);
}

Term fix_turing(const Term& f) { return Term::app(lib_lookup("Theta"), f); }

Term solve_equation(const Term& functional)
{
    if (!functional.is_lam()) throw NotAnAbstraction("expected a functional λf.M, got " + print(functional));
    return fix_turing(functional);
}

// ---------------------------------------------------------------------------
// Applicative closure

Outcome<Term> closure_generates(std::span<const Term> basis, const Term& target, std::size_t size_bound,
                                std::size_t fuel)
{
    if (basis.empty()) throw EmptyBasis("closure_generates needs a nonempty basis");
    for (const auto& b : basis)
        if (!is_combinator(b)) throw std::invalid_argument("basis element " + print(b) + " is not closed");

    // by_size[n]: every combination with n application nodes, in enumeration order.
    std::vector<std::vector<Term>> by_size;
    std::size_t spent = 0;
    for (std::size_t n = 0; n <= size_bound; ++n) {
        std::vector<Term> level;
        if (n == 0) {
            level.assign(basis.begin(), basis.end());
        } else {
            for (std::size_t left = 0; left < n; ++left)
                for (const auto& l : by_size[left])
                    for (const auto& r : by_size[n - 1 - left]) level.push_back(Term::app(l, r));
        }
        for (const auto& candidate : level) {
            auto eq = beta_eta_eq(candidate, target, fuel);
            spent += eq.fuel_spent;
            if (eq.is_positive()) return Outcome<Term>::positive(candidate, spent);
        }
        by_size.push_back(std::move(level));
    }
    return Outcome<Term>::unknown(spent);
}

}  // namespace lc
