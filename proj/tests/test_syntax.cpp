#include "doctest.h"

#include <random>

#include "lc/syntax.hpp"
#include "support/term_gen.hpp"

using namespace lc;
using lc::testing::random_term;

namespace {

Term v(const char* n) { return Term::var(n); }
Term L(const char* b, Term body) { return Term::lam(b, std::move(body)); }
Term A(Term f, Term a) { return Term::app(std::move(f), std::move(a)); }

}  // namespace

TEST_CASE("parse: application is left-associative")
{
    CHECK(parse("M N P") == A(A(v("M"), v("N")), v("P")));
    CHECK(parse("x") == v("x"));
    CHECK(parse("(M)") == v("M"));
    CHECK(parse("M (N P)") == A(v("M"), A(v("N"), v("P"))));
}

TEST_CASE("parse: abstraction body extends to the right, binder lists")
{
    auto s_body = L("x", L("y", A(A(v("x"), v("z")), A(v("y"), v("z")))));
    CHECK(parse("\\x.\\y.x z (y z)") == s_body);
    CHECK(parse("λx.λy.x z (y z)") == s_body);
    CHECK(parse("λx y.x z (y z)") == s_body);
    CHECK(parse("λx.M N") == L("x", A(v("M"), v("N"))));
    CHECK(parse("f λx.x") == A(v("f"), L("x", v("x"))));
    CHECK(parse("  x'  _y1 ") == A(v("x'"), v("_y1")));
}

TEST_CASE("parse errors carry a position")
{
    auto fails_at = [](const char* text, std::size_t pos) {
        try {
            parse(text);
        } catch (const ParseError& e) {
            CHECK(e.position() == pos);
            return true;
        }
        return false;
    };
    CHECK(fails_at("", 0));
    CHECK(fails_at("   ", 3));
    CHECK(fails_at("(x y", 0));
    CHECK(fails_at("x y)", 3));
    CHECK(fails_at("\\x.", 3));
    CHECK(fails_at("\\x y", 4));
    CHECK(fails_at("\\.x", 1));
    CHECK(fails_at("x # y", 2));
    CHECK(fails_at("()", 1));
}

TEST_CASE("parse with constants expands free library names only")
{
    CHECK(parse("K", true) == parse("λx.λy.x"));
    CHECK(parse("K", false) == v("K"));
    CHECK(parse("λK.K", true) == L("K", v("K")));
    CHECK(is_combinator(parse("λx.x K S K", true)));
    CHECK_FALSE(is_combinator(parse("λx.x K S K", false)));
}

TEST_CASE("print uses minimal parentheses")
{
    CHECK(print(A(A(v("M"), v("N")), v("P"))) == "M N P");
    CHECK(print(A(v("M"), A(v("N"), v("P")))) == "M (N P)");
    CHECK(print(L("x", A(v("x"), v("x")))) == "λx.x x");
    CHECK(print(A(L("x", v("x")), v("y"))) == "(λx.x) y");
    CHECK(print(A(v("f"), L("x", v("x")))) == "f (λx.x)");
}

TEST_CASE("free variables")
{
    CHECK(free_vars(v("x")) == VarSet{"x"});
    CHECK(free_vars(parse("λx.x y")) == VarSet{"y"});
    CHECK(free_vars(parse("(λx.x) (λy.y)")).empty());
    CHECK(is_combinator(parse("λx.x")));
    CHECK_FALSE(is_combinator(parse("x y")));
}

TEST_CASE("subterms: preorder, reflexive")
{
    auto s = subterms(v("x"));
    REQUIRE(s.size() == 1);
    CHECK(s[0].first.empty());

    auto l = subterms(parse("λx.y"));
    REQUIRE(l.size() == 2);
    CHECK(l[0].second == parse("λx.y"));
    CHECK(l[1].first == TermPath{{Step::Body}});
    CHECK(l[1].second == v("y"));

    auto mn = subterms(parse("M N"));
    REQUIRE(mn.size() == 3);
    CHECK(mn[1].first == TermPath{{Step::Fun}});
    CHECK(mn[1].second == v("M"));
    CHECK(mn[2].first == TermPath{{Step::Arg}});
    CHECK(mn[2].second == v("N"));
}

TEST_CASE("alpha equivalence")
{
    CHECK(alpha_eq(parse("λx.x"), parse("λy.y")));
    CHECK_FALSE(alpha_eq(parse("λx.y"), parse("λx.z")));
    CHECK(alpha_eq(parse("λx.λy.x y"), parse("λy.λx.y x")));
    CHECK_FALSE(alpha_eq(parse("λx.λy.x"), parse("λx.λy.y")));
    CHECK_FALSE(alpha_eq(parse("λx.y"), parse("λy.y")));
    CHECK(alpha_eq(parse("λx.λx.x"), parse("λy.λz.z")));
    // Oracle agreement on the fixed examples.
    CHECK(lc::testing::nameless_eq(parse("λx.λy.x y"), parse("λy.λx.y x")));
}

TEST_CASE("fresh_var scheme")
{
    CHECK(fresh_var({"x"}, "x") == "x1");
    CHECK(fresh_var({}, "y") == "y");
    CHECK(fresh_var({"x", "x1"}, "x") == "x2");
}

TEST_CASE("substitution clauses and capture avoidance")
{
    auto P = parse("p q");
    CHECK(substitute(v("x"), "x", P) == P);
    CHECK(substitute(v("y"), "x", P) == v("y"));
    CHECK(substitute(parse("λx.x"), "x", P) == parse("λx.x"));
    CHECK(substitute(parse("f x x"), "x", P) == parse("f (p q) (p q)"));

    auto r = substitute(parse("λy.x"), "x", v("y"));
    CHECK(alpha_eq(r, parse("λz.y")));
    CHECK(r.binder() != "y");
    CHECK(r == parse("λy1.y"));

    // Renaming must not capture through nested binders either.
    auto nested = substitute(parse("λy.λy1.x y y1"), "x", parse("y y1"));
    CHECK(alpha_eq(nested, parse("λa.λb.y y1 a b")));
}

TEST_CASE("property: parse after print is the identity")
{
    std::mt19937_64 rng(7);
    for (int i = 0; i < 500; ++i) {
        auto t = random_term(rng, 50, i % 2 == 0);
        CHECK(parse(print(t)) == t);
    }
}

TEST_CASE("property: alpha_eq agrees with the nameless oracle and is an equivalence")
{
    std::mt19937_64 rng(11);
    for (int i = 0; i < 400; ++i) {
        auto a = random_term(rng, 8, true);
        auto b = random_term(rng, 8, true);
        auto c = random_term(rng, 8, true);
        CHECK(alpha_eq(a, b) == lc::testing::nameless_eq(a, b));
        CHECK(alpha_eq(a, b) == (alpha_key(a) == alpha_key(b)));
        CHECK(alpha_eq(a, a));
        CHECK(alpha_eq(a, b) == alpha_eq(b, a));
        if (alpha_eq(a, b) && alpha_eq(b, c)) CHECK(alpha_eq(a, c));
    }
    // Renamed copies are α-equal.
    for (int i = 0; i < 200; ++i) {
        auto t = random_term(rng, 12, true);
        if (!t.is_lam()) continue;
        auto renamed = Term::lam("fresh", substitute(t.body(), t.binder(), v("fresh")));
        CHECK(alpha_eq(t, renamed));
        CHECK(lc::testing::nameless_eq(t, renamed));
    }
}

TEST_CASE("property: free variables of a substitution")
{
    std::mt19937_64 rng(13);
    for (int i = 0; i < 500; ++i) {
        auto M = random_term(rng, 12, false);
        auto N = random_term(rng, 6, false);
        auto r = substitute(M, "x", N);
        auto fm = free_vars(M);
        auto bound = fm;
        bound.erase("x");
        bound.merge(free_vars(N));
        auto fr = free_vars(r);
        for (const auto& name : fr) CHECK(bound.contains(name));
        if (fm.contains("x")) CHECK(fr == bound);
    }
}

TEST_CASE("property: substitution lemma")
{
    std::mt19937_64 rng(17);
    int checked = 0;
    for (int i = 0; i < 600; ++i) {
        auto M = random_term(rng, 10, false);
        auto N = random_term(rng, 6, false);
        auto P = random_term(rng, 6, false);
        if (occurs_free("x", P)) continue;
        auto lhs = substitute(substitute(M, "x", N), "y", P);
        auto rhs = substitute(substitute(M, "y", P), "x", substitute(N, "y", P));
        CHECK(alpha_eq(lhs, rhs));
        ++checked;
    }
    CHECK(checked > 200);
}

TEST_CASE("property: substitution respects alpha equivalence")
{
    std::mt19937_64 rng(19);
    for (int i = 0; i < 300; ++i) {
        auto t = random_term(rng, 10, false);
        auto N = random_term(rng, 5, false);
        if (!t.is_lam() || t.binder() == "x") continue;
        auto renamed = Term::lam("q", substitute(t.body(), t.binder(), v("q")));
        if (occurs_free("q", t)) continue;
        CHECK(alpha_eq(substitute(t, "x", N), substitute(renamed, "x", N)));
    }
}

TEST_CASE("property: subterm listing is transitive")
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        auto M = random_term(rng, 14, false);
        for (const auto& [p, A] : subterms(M)) {
            for (const auto& [q, B] : subterms(A)) {
                const Term* at = subterm_at(M, p.concat(q));
                REQUIRE(at != nullptr);
                CHECK(*at == B);
            }
        }
    }
}

TEST_CASE("replace_at fills a context")
{
    auto t = parse("z ((λx.x) y)");
    CHECK(replace_at(t, TermPath{{Step::Arg}}, v("w")) == parse("z w"));
    CHECK_THROWS_AS(replace_at(t, TermPath{{Step::Body}}, v("w")), std::out_of_range);
    CHECK(subterm_at(t, TermPath{{Step::Body}}) == nullptr);
}
