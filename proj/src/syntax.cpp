#include "lc/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "lc/combinatory.hpp"

namespace lc {

struct Term::Node {
    TermKind kind;
    std::string name;
    std::optional<Term> left;   // Lam body, App fun
    std::optional<Term> right;  // App arg
    std::size_t size;
};

Term Term::var(std::string name)
{
    return Term(std::make_shared<const Node>(Node{TermKind::Var, std::move(name), std::nullopt, std::nullopt, 1}));
}

Term Term::lam(std::string binder, Term body)
{
    auto size = body.size() + 1;
    return Term(std::make_shared<const Node>(Node{TermKind::Lam, std::move(binder), std::move(body), std::nullopt, size}));
}

Term Term::app(Term fun, Term arg)
{
    auto size = fun.size() + arg.size() + 1;
    return Term(std::make_shared<const Node>(Node{TermKind::App, {}, std::move(fun), std::move(arg), size}));
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::body() const { return *node_->left; }
const Term& Term::fun() const { return *node_->left; }
const Term& Term::arg() const { return *node_->right; }
std::size_t Term::size() const { return node_->size; }

bool operator==(const Term& a, const Term& b)
{
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind() || a.size() != b.size()) return false;
    switch (a.kind()) {
    case TermKind::Var: return a.name() == b.name();
    case TermKind::Lam: return a.binder() == b.binder() && a.body() == b.body();
    case TermKind::App: return a.fun() == b.fun() && a.arg() == b.arg();
    }
    return false;
}

Term apply(Term fun, std::initializer_list<Term> args)
{
    for (const auto& a : args) fun = Term::app(std::move(fun), a);
    return fun;
}

// ---------------------------------------------------------------------------
// Paths

TermPath TermPath::then(Step s) const
{
    TermPath p = *this;
    p.steps.push_back(s);
    return p;
}

TermPath TermPath::concat(const TermPath& tail) const
{
    TermPath p = *this;
    p.steps.insert(p.steps.end(), tail.steps.begin(), tail.steps.end());
    return p;
}

std::string_view step_name(Step s)
{
    switch (s) {
    case Step::Body: return "Body";
    case Step::Fun: return "Fun";
    case Step::Arg: return "Arg";
    }
    return "?";
}

std::string to_string(const TermPath& path)
{
    if (path.empty()) return "ε";
    std::string out;
    for (auto s : path.steps) {
        if (!out.empty()) out += '.';
        out += step_name(s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

ParseError::ParseError(std::string message, std::size_t position)
    : std::runtime_error("parse error at " + std::to_string(position) + ": " + message), position_(position)
{
}

namespace {

enum class Tok { Ident, Lambda, Dot, LParen, RParen, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

std::vector<Token> tokenize(std::string_view text)
{
    static constexpr std::string_view utf8_lambda = "\xCE\xBB";
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '\\') {
            out.push_back({Tok::Lambda, "\\", i++});
        } else if (text.substr(i, utf8_lambda.size()) == utf8_lambda) {
            out.push_back({Tok::Lambda, "λ", i});
            i += utf8_lambda.size();
        } else if (c == '.') {
            out.push_back({Tok::Dot, ".", i++});
        } else if (c == '(') {
            out.push_back({Tok::LParen, "(", i++});
        } else if (c == ')') {
            out.push_back({Tok::RParen, ")", i++});
        } else if (ident_start(c)) {
            auto start = i;
            while (i < text.size() && ident_char(text[i])) ++i;
            out.push_back({Tok::Ident, std::string(text.substr(start, i - start)), start});
        } else {
            throw ParseError("unexpected character '" + std::string(1, c) + "'", i);
        }
    }
    out.push_back({Tok::End, "", text.size()});
    return out;
}

class Parser {
public:
    Parser(std::string_view text, bool allow_constants) : tokens_(tokenize(text)), constants_(allow_constants) {}

    Term parse_all()
    {
        if (peek().kind == Tok::End) throw ParseError("empty input", peek().pos);
        Term t = term();
        if (peek().kind == Tok::RParen) throw ParseError("unbalanced parentheses: unexpected ')'", peek().pos);
        if (peek().kind != Tok::End) throw ParseError("unexpected '" + peek().text + "'", peek().pos);
        return t;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_++]; }

    Term term() { return peek().kind == Tok::Lambda ? abstraction() : application(); }

    Term abstraction()
    {
        next();  // λ
        std::vector<std::string> binders;
        while (peek().kind == Tok::Ident) binders.push_back(next().text);
        if (binders.empty()) throw ParseError("expected binder after λ", peek().pos);
        if (peek().kind != Tok::Dot) throw ParseError("expected '.'", peek().pos);
        next();
        auto k = peek().kind;
        if (k == Tok::End || k == Tok::RParen || k == Tok::Dot) throw ParseError("missing abstraction body", peek().pos);

        for (const auto& b : binders) bound_.push_back(b);
        Term body = term();
        bound_.resize(bound_.size() - binders.size());

        for (auto it = binders.rbegin(); it != binders.rend(); ++it) body = Term::lam(*it, std::move(body));
        return body;
    }

    Term application()
    {
        Term acc = atom();
        for (;;) {
            auto k = peek().kind;
            if (k == Tok::Ident || k == Tok::LParen) {
                acc = Term::app(std::move(acc), atom());
            } else if (k == Tok::Lambda) {
                // A trailing abstraction extends to the right: f λx.M ≡ f (λx.M).
                return Term::app(std::move(acc), abstraction());
            } else {
                return acc;
            }
        }
    }

    Term atom()
    {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Ident: {
            next();
            if (constants_ && std::find(bound_.begin(), bound_.end(), t.text) == bound_.end()) {
                if (auto c = find_constant(t.text)) return *c;
            }
            return Term::var(t.text);
        }
        case Tok::LParen: {
            auto open = t.pos;
            next();
            if (peek().kind == Tok::RParen) throw ParseError("empty parentheses", peek().pos);
            if (peek().kind == Tok::End) throw ParseError("unbalanced parentheses: missing ')'", open);
            Term inner = term();
            if (peek().kind != Tok::RParen) throw ParseError("unbalanced parentheses: missing ')'", open);
            next();
            return inner;
        }
        case Tok::End: throw ParseError("unexpected end of input", t.pos);
        case Tok::RParen: throw ParseError("unbalanced parentheses: unexpected ')'", t.pos);
        default: throw ParseError("unexpected '" + t.text + "'", t.pos);
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    bool constants_;
    std::vector<std::string> bound_;
};

}  // namespace

Term parse(std::string_view text, bool allow_constants) { return Parser(text, allow_constants).parse_all(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_to(const Term& t, std::string& out)
{
    switch (t.kind()) {
    case TermKind::Var: out += t.name(); return;
    case TermKind::Lam:
        out += "λ";
        out += t.binder();
        out += '.';
        print_to(t.body(), out);
        return;
    case TermKind::App:
        if (t.fun().is_lam()) {
            out += '(';
            print_to(t.fun(), out);
            out += ')';
        } else {
            print_to(t.fun(), out);
        }
        out += ' ';
        if (t.arg().is_var()) {
            print_to(t.arg(), out);
        } else {
            out += '(';
            print_to(t.arg(), out);
            out += ')';
        }
        return;
    }
}

}  // namespace

std::string print(const Term& term)
{
    std::string out;
    print_to(term, out);
    return out;
}

std::ostream& operator<<(std::ostream& os, const Term& term) { return os << print(term); }

// ---------------------------------------------------------------------------
// Variables and subterms

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound, VarSet& out)
{
    switch (t.kind()) {
    case TermKind::Var:
        if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) out.insert(t.name());
        return;
    case TermKind::Lam:
        bound.push_back(t.binder());
        collect_free(t.body(), bound, out);
        bound.pop_back();
        return;
    case TermKind::App:
        collect_free(t.fun(), bound, out);
        collect_free(t.arg(), bound, out);
        return;
    }
}

}  // namespace

VarSet free_vars(const Term& term)
{
    VarSet out;
    std::vector<std::string> bound;
    collect_free(term, bound, out);
    return out;
}

bool occurs_free(std::string_view name, const Term& term)
{
    switch (term.kind()) {
    case TermKind::Var: return term.name() == name;
    case TermKind::Lam: return term.binder() != name && occurs_free(name, term.body());
    case TermKind::App: return occurs_free(name, term.fun()) || occurs_free(name, term.arg());
    }
    return false;
}

bool is_combinator(const Term& term) { return free_vars(term).empty(); }

namespace {

void collect_subterms(const Term& t, TermPath& path, std::vector<std::pair<TermPath, Term>>& out)
{
    out.emplace_back(path, t);
    auto descend = [&](Step s, const Term& child) {
        path.steps.push_back(s);
        collect_subterms(child, path, out);
        path.steps.pop_back();
    };
    if (t.is_lam()) {
        descend(Step::Body, t.body());
    } else if (t.is_app()) {
        descend(Step::Fun, t.fun());
        descend(Step::Arg, t.arg());
    }
}

}  // namespace

std::vector<std::pair<TermPath, Term>> subterms(const Term& term)
{
    std::vector<std::pair<TermPath, Term>> out;
    TermPath path;
    collect_subterms(term, path, out);
    return out;
}

const Term* subterm_at(const Term& term, const TermPath& path)
{
    const Term* cur = &term;
    for (auto s : path.steps) {
        if (s == Step::Body && cur->is_lam()) {
            cur = &cur->body();
        } else if (s == Step::Fun && cur->is_app()) {
            cur = &cur->fun();
        } else if (s == Step::Arg && cur->is_app()) {
            cur = &cur->arg();
        } else {
            return nullptr;
        }
    }
    return cur;
}

namespace {

Term replace_from(const Term& t, const TermPath& path, std::size_t i, Term replacement)
{
    if (i == path.size()) return replacement;
    auto s = path.steps[i];
    if (s == Step::Body && t.is_lam())
        return Term::lam(t.binder(), replace_from(t.body(), path, i + 1, std::move(replacement)));
    if (s == Step::Fun && t.is_app())
        return Term::app(replace_from(t.fun(), path, i + 1, std::move(replacement)), t.arg());
    if (s == Step::Arg && t.is_app())
        return Term::app(t.fun(), replace_from(t.arg(), path, i + 1, std::move(replacement)));
    throw std::out_of_range("path " + to_string(path) + " leaves the term");
}

}  // namespace

Term replace_at(const Term& term, const TermPath& path, Term replacement)
{
    return replace_from(term, path, 0, std::move(replacement));
}

// ---------------------------------------------------------------------------
// α-equivalence

namespace {

// Distance to the innermost binder of `name`, or -1 when free.
long binder_index(const std::vector<std::string_view>& env, std::string_view name)
{
    for (std::size_t i = env.size(); i-- > 0;)
        if (env[i] == name) return static_cast<long>(env.size() - 1 - i);
    return -1;
}

bool alpha_eq_in(const Term& a, const Term& b, std::vector<std::string_view>& ea, std::vector<std::string_view>& eb)
{
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case TermKind::Var: {
        auto ia = binder_index(ea, a.name());
        auto ib = binder_index(eb, b.name());
        return ia == ib && (ia >= 0 || a.name() == b.name());
    }
    case TermKind::Lam: {
        ea.push_back(a.binder());
        eb.push_back(b.binder());
        bool r = alpha_eq_in(a.body(), b.body(), ea, eb);
        ea.pop_back();
        eb.pop_back();
        return r;
    }
    case TermKind::App: return alpha_eq_in(a.fun(), b.fun(), ea, eb) && alpha_eq_in(a.arg(), b.arg(), ea, eb);
    }
    return false;
}

void alpha_key_to(const Term& t, std::vector<std::string_view>& env, std::string& out)
{
    switch (t.kind()) {
    case TermKind::Var: {
        auto i = binder_index(env, t.name());
        if (i >= 0) {
            out += '#';
            out += std::to_string(i);
        } else {
            out += t.name();
        }
        out += ' ';
        return;
    }
    case TermKind::Lam:
        out += "\\ ";
        env.push_back(t.binder());
        alpha_key_to(t.body(), env, out);
        env.pop_back();
        return;
    case TermKind::App:
        out += "@ ";
        alpha_key_to(t.fun(), env, out);
        alpha_key_to(t.arg(), env, out);
        return;
    }
}

}  // namespace

bool alpha_eq(const Term& a, const Term& b)
{
    if (a.same_node(b)) return true;
    std::vector<std::string_view> ea, eb;
    return alpha_eq_in(a, b, ea, eb);
}

std::string alpha_key(const Term& term)
{
    std::string out;
    std::vector<std::string_view> env;
    alpha_key_to(term, env, out);
    return out;
}

// ---------------------------------------------------------------------------
// Substitution

std::string fresh_var(const VarSet& avoid, std::string_view base)
{
    if (!avoid.contains(base)) return std::string(base);
    for (std::size_t i = 1;; ++i) {
        auto candidate = std::string(base) + std::to_string(i);
        if (!avoid.contains(candidate)) return candidate;
    }
}

namespace {

// Returns nullopt when `var` does not occur free, so unchanged subtrees are
// shared instead of rebuilt.
std::optional<Term> subst(const Term& t, std::string_view var, const Term& repl, const VarSet& repl_free)
{
    switch (t.kind()) {
    case TermKind::Var:
        if (t.name() == var) return repl;
        return std::nullopt;
    case TermKind::App: {
        auto f = subst(t.fun(), var, repl, repl_free);
        auto a = subst(t.arg(), var, repl, repl_free);
        if (!f && !a) return std::nullopt;
        return Term::app(f ? std::move(*f) : t.fun(), a ? std::move(*a) : t.arg());
    }
    case TermKind::Lam: {
        if (t.binder() == var) return std::nullopt;
        if (repl_free.contains(t.binder())) {
            if (!occurs_free(var, t.body())) return std::nullopt;
            VarSet avoid = repl_free;
            avoid.merge(free_vars(t.body()));
            avoid.emplace(var);
            auto renamed = fresh_var(avoid, t.binder());
            auto body = subst(t.body(), t.binder(), Term::var(renamed), VarSet{renamed});
            const Term& b0 = body ? *body : t.body();
            auto b1 = subst(b0, var, repl, repl_free);
            return Term::lam(renamed, b1 ? std::move(*b1) : b0);
        }
        auto body = subst(t.body(), var, repl, repl_free);
        if (!body) return std::nullopt;
        return Term::lam(t.binder(), std::move(*body));
    }
    }
    return std::nullopt;
}

}  // namespace

Term substitute(const Term& term, std::string_view var, const Term& replacement)
{
    auto r = subst(term, var, replacement, free_vars(replacement));
    return r ? std::move(*r) : term;
}

}  // namespace lc
