#include "doctest.h"

#include <random>

#include "lc/combinatory.hpp"
#include "support/term_gen.hpp"

using namespace lc;

namespace {

Term p(const char* text) { return parse(text, true); }

CLTerm clv(const char* n) { return CLTerm::var(n); }
CLTerm C(CLTerm f, CLTerm a) { return CLTerm::app(std::move(f), std::move(a)); }

}  // namespace

TEST_CASE("library lookup")
{
    CHECK(lib_lookup("K") == parse("λx.λy.x"));
    CHECK(lib_lookup("Ω") == parse("(λx.x x)(λx.x x)"));
    CHECK(lib_lookup("Omega") == lib_lookup("Ω"));
    CHECK(lib_lookup("Θ") == parse("(λx.λy.y (x x y)) (λx.λy.y (x x y))"));
    CHECK(alpha_eq(lib_lookup("F"), parse("λx.λy.y")));
    CHECK_THROWS_AS(lib_lookup("Nope"), UnknownConstant);
    CHECK(library_names().size() == 14);
    for (auto name : library_names()) {
        CAPTURE(name);
        CHECK(is_combinator(lib_lookup(name)));
        CHECK(parse(print(lib_lookup(name))) == lib_lookup(name));
    }
}

TEST_CASE("compile: bracket abstraction")
{
    CHECK(compile(p("λx.x")) == CLTerm::i());
    CHECK(print(compile(p("λx.y"))) == "K y");
    auto k = compile(p("λx.λy.x"));
    CHECK(print(k) == "S (K K) I");
    CHECK(beta_eta_eq(cl_to_lambda(k), p("K"), 100).is_positive());
    CHECK(print(compile(p("f (g h)"))) == "f (g h)");
    CHECK(print(compile(p("λx.f x"))) == "S (K f) I");
}

TEST_CASE("cl_reduce axioms")
{
    auto k = cl_reduce(C(C(CLTerm::k(), clv("a")), clv("b")), 10);
    CHECK(k.term == clv("a"));
    CHECK(k.status == TraceStatus::NormalForm);

    auto s = cl_reduce(C(C(C(CLTerm::s(), clv("a")), clv("b")), clv("c")), 10);
    CHECK(print(s.term) == "a c (b c)");

    auto skk = cl_reduce(C(C(C(CLTerm::s(), CLTerm::k()), CLTerm::k()), clv("a")), 10);
    CHECK(skk.term == clv("a"));
    CHECK(skk.steps == 2);

    auto sii = C(C(CLTerm::s(), CLTerm::i()), CLTerm::i());
    auto loop = cl_reduce(C(sii, sii), 50);
    CHECK(loop.status == TraceStatus::FuelExhausted);
    CHECK(loop.steps == 50);

    // Reduction under a stuck head.
    auto inner = cl_reduce(C(clv("f"), C(CLTerm::i(), clv("x"))), 5);
    CHECK(print(inner.term) == "f x");
}

TEST_CASE("cl_to_lambda")
{
    CHECK(cl_to_lambda(CLTerm::k()) == parse("λx.λy.x"));
    CHECK(cl_to_lambda(C(CLTerm::k(), clv("y"))) == Term::app(parse("λx.λy.x"), Term::var("y")));
    auto omega = p("omega");
    CHECK(beta_eta_eq(cl_to_lambda(compile(omega)), omega, 500).is_positive());
}

TEST_CASE("pairs and booleans")
{
    auto pair = make_pair(p("M"), p("N"));
    CHECK(reduces_to(Term::app(pair, p("T")), p("M"), 20, 50).is_positive());
    CHECK(reduces_to(Term::app(pair, p("F")), p("N"), 20, 50).is_positive());
    CHECK(free_vars(make_pair(p("x"), p("x"))) == VarSet{"x"});
    CHECK(free_vars(make_pair(p("p"), p("p1"))) == VarSet{"p", "p1"});

    CHECK(beta_eta_eq(if_then_else(p("T"), p("a"), p("b")), p("a"), 50).is_positive());
    CHECK(beta_eta_eq(if_then_else(p("F"), p("a"), p("b")), p("b"), 50).is_positive());
}

TEST_CASE("numerals")
{
    CHECK(numeral_encode(0) == p("I"));
    CHECK(alpha_eq(numeral_encode(1), p("λp.p (λx.λy.y) (λx.x)")));
    CHECK(beta_eta_eq(p("Zero I"), p("T"), 100).is_positive());

    auto three = numeral_decode(numeral_encode(3), 1000);
    REQUIRE(three.is_positive());
    CHECK(*three.witness == 3);
    CHECK(*numeral_decode(p("I"), 100).witness == 0);
    CHECK(numeral_decode(p("Omega"), 1000).is_unknown());
    CHECK(numeral_decode(p("K"), 1000).is_unknown());
    CHECK(numeral_decode(numeral_encode(5), 10).is_unknown());

    // Θ Succ is an "infinite numeral" and never decodes.
    CHECK(numeral_decode(p("Theta Succ"), 500).is_unknown());
}

TEST_CASE("property: numeral laws up to 20")
{
    const auto& sys = standard_numerals();
    CHECK(beta_eta_eq(Term::app(sys.iszero, numeral_encode(0)), p("T"), 100).is_positive());
    for (std::size_t n = 0; n <= 20; ++n) {
        CAPTURE(n);
        auto cur = numeral_encode(n);
        auto next = numeral_encode(n + 1);
        CHECK(beta_eta_eq(Term::app(sys.iszero, next), p("F"), 100).is_positive());
        CHECK(beta_eta_eq(Term::app(sys.succ, cur), next, 100).is_positive());
        CHECK(beta_eta_eq(Term::app(sys.pred, next), cur, 100).is_positive());
        auto decoded = numeral_decode(cur, 2000);
        REQUIRE(decoded.is_positive());
        CHECK(*decoded.witness == n);
    }
    // Linear size.
    CHECK(numeral_encode(20).size() < 20 * 12);
}

TEST_CASE("fixed points")
{
    auto f = p("f");
    auto curry = fix_curry(f);
    CHECK(reduces_to(curry, Term::app(f, curry), 10, 50).is_positive());
    auto turing = fix_turing(f);
    auto t = reduces_to(turing, Term::app(f, turing), 10, 50);
    REQUIRE(t.is_positive());
    CHECK(t.witness->length() == 2);

    CHECK(beta_eta_eq(fix_curry(p("K I")), p("I"), 100).is_positive());
    CHECK(beta_eta_eq(fix_turing(p("K I")), p("I"), 100).is_positive());
    CHECK(is_combinator(p("Theta")));

    // x in W must be fresh for f.
    auto capture = fix_curry(p("x"));
    CHECK(free_vars(capture) == VarSet{"x"});
    CHECK(reduces_to(capture, Term::app(p("x"), capture), 10, 50).is_positive());
}

TEST_CASE("solve_equation")
{
    auto F = solve_equation(p("λf.λx.λy.f y x f"));
    auto x = p("x"), y = p("y");
    CHECK(reduces_to(apply(F, {x, y}), apply(F, {y, x, F}), 50, 200).is_positive());

    auto degenerate = solve_equation(p("λf.f"));
    CHECK(degenerate == Term::app(p("Theta"), p("λf.f")));
    CHECK(reduces_to(degenerate, degenerate, 0, 1).is_positive());

    auto id = solve_equation(p("λf.λx.x"));
    auto r = normalize(Term::app(id, p("z")), 100);
    CHECK(r.status == TraceStatus::NormalForm);
    CHECK(r.final == p("z"));

    CHECK_THROWS_AS(solve_equation(p("f x")), NotAnAbstraction);
}

TEST_CASE("closure_generates")
{
    std::vector<Term> x{p("X")};
    auto k = closure_generates(x, p("K"), 3, 200);
    REQUIRE(k.is_positive());
    CHECK(*k.witness == p("X X X"));
    auto s = closure_generates(x, p("S"), 3, 200);
    REQUIRE(s.is_positive());
    CHECK(*s.witness == p("X (X X)"));

    std::vector<Term> konly{p("K")};
    CHECK(closure_generates(konly, p("S"), 4, 200).is_unknown());
    CHECK(closure_generates(konly, p("K"), 0, 10).is_positive());

    // Exhaustive oracle over CL terms: no K-only combination with at most four
    // applications has S's normal form.
    std::vector<std::vector<CLTerm>> levels{{CLTerm::k()}};
    for (std::size_t n = 1; n <= 4; ++n) {
        levels.emplace_back();
        for (std::size_t l = 0; l < n; ++l)
            for (const auto& a : levels[l])
                for (const auto& b : levels[n - 1 - l]) levels[n].push_back(C(a, b));
    }
    std::size_t total = 0;
    for (const auto& level : levels) {
        for (const auto& c : level) {
            auto nf = normalize(cl_to_lambda(c), 200);
            REQUIRE(nf.status == TraceStatus::NormalForm);
            CHECK_FALSE(alpha_eq(nf.final, p("S")));
            ++total;
        }
    }
    CHECK(total == 1 + 1 + 2 + 5 + 14);

    std::vector<Term> none;
    CHECK_THROWS_AS(closure_generates(none, p("K"), 3, 10), EmptyBasis);
    std::vector<Term> open{p("x")};
    CHECK_THROWS_AS(closure_generates(open, p("K"), 3, 10), std::invalid_argument);
}

TEST_CASE("property: compile is sound")
{
    std::mt19937_64 rng(41);
    int checked = 0;
    for (int i = 0; checked < 100 && i < 1000; ++i) {
        auto t = lc::testing::random_term(rng, 10, i % 2 == 0);
        if (normalize(t, 300).status != TraceStatus::NormalForm) continue;
        CAPTURE(print(t));
        CHECK(beta_eta_eq(cl_to_lambda(compile(t)), t, 1000).is_positive());
        ++checked;
    }
    CHECK(checked == 100);
}

TEST_CASE("property: CL reduction agrees with the λ side")
{
    std::mt19937_64 rng(43);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        auto t = lc::testing::random_cl(rng, 1 + 2 * std::uniform_int_distribution<std::size_t>(0, 3)(rng));
        auto r = cl_reduce(t, 200);
        if (r.status != TraceStatus::NormalForm) continue;
        CAPTURE(print(t));
        CHECK(beta_eta_eq(cl_to_lambda(t), cl_to_lambda(r.term), 1000).is_positive());
        ++checked;
    }
    CHECK(checked > 200);
}
