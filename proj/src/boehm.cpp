#include "lc/boehm.hpp"

#include <algorithm>
#include "json.hpp"

#include "lc/reduction.hpp"

namespace lc {

// ---------------------------------------------------------------------------
// Sequences

Seq operator*(const Seq& a, const Seq& b)
{
    auto items = a.items_;
    items.insert(items.end(), b.items_.begin(), b.items_.end());
    return Seq(std::move(items));
}

bool Seq::prefix_of(const Seq& other) const
{
    return lh() <= other.lh() && std::equal(items_.begin(), items_.end(), other.items_.begin());
}

Seq Seq::child(std::size_t k) const
{
    auto items = items_;
    items.push_back(k);
    return Seq(std::move(items));
}

Seq Seq::parent() const { return Seq(std::vector<std::size_t>(items_.begin(), items_.end() - 1)); }

std::strong_ordering operator<=>(const Seq& a, const Seq& b)
{
    if (auto c = a.lh() <=> b.lh(); c != 0) return c;
    return a.items_ <=> b.items_;
}

std::size_t seq_lh(const Seq& s) { return s.lh(); }
Seq seq_concat(const Seq& a, const Seq& b) { return a * b; }
bool seq_prefix_le(const Seq& a, const Seq& b) { return a.prefix_of(b); }

std::string to_string(const Seq& s)
{
    std::string out = "⟨";
    for (std::size_t i = 0; i < s.lh(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(s[i]);
    }
    return out + "⟩";
}

std::string to_string(const BTLabel& label)
{
    std::string out;
    for (const auto& b : label.binders) out += "λ" + b + ".";
    return out + label.head;
}

// ---------------------------------------------------------------------------
// Trees

PathOutsideTree::PathOutsideTree(const Seq& at) : std::out_of_range("path " + to_string(at) + " is not in the tree") {}

const BTNode* BohmTree::find(const Seq& at) const
{
    auto it = nodes.find(at);
    return it == nodes.end() ? nullptr : &it->second;
}

bool BohmTree::well_formed() const
{
    if (!nodes.contains(Seq{})) return false;
    for (const auto& [path, node] : nodes) {
        if (path.lh() == 0) continue;
        const BTNode* parent = find(path.parent());
        if (parent == nullptr) return false;
        const auto* label = std::get_if<BTLabel>(parent);
        if (label == nullptr) return false;  // below an unresolved node
        if (path[path.lh() - 1] >= label->arity) return false;
    }
    return true;
}

namespace {

void build(const Term& term, const Seq& at, const Budgets& budgets, std::map<Seq, BTNode>& out)
{
    if (at.lh() >= budgets.depth) {
        out.emplace(at, Unresolved{0});
        return;
    }
    auto hnf = head_normalize(term, budgets.fuel);
    if (!hnf.is_positive()) {
        out.emplace(at, Unresolved{hnf.fuel_spent});
        return;
    }

    BTLabel label;
    const Term* t = &*hnf.witness;
    while (t->is_lam()) {
        label.binders.push_back(t->binder());
        t = &t->body();
    }
    std::vector<const Term*> args;
    while (t->is_app()) {
        args.push_back(&t->arg());
        t = &t->fun();
    }
    std::reverse(args.begin(), args.end());
    label.head = t->name();
    label.arity = args.size();
    out.emplace(at, std::move(label));

    for (std::size_t k = 0; k < args.size(); ++k) build(*args[k], at.child(k), budgets, out);
}

// Binder lists of the labels on a root path, outermost first.
using Env = std::vector<const std::vector<std::string>*>;

struct HeadRef {
    long level = -1;  // -1: free
    long position = -1;
    std::string name;
    friend bool operator==(const HeadRef&, const HeadRef&) = default;
};

HeadRef resolve(const Env& env, const std::string& head)
{
    for (std::size_t lvl = env.size(); lvl-- > 0;) {
        const auto& binders = *env[lvl];
        for (std::size_t i = binders.size(); i-- > 0;)
            if (binders[i] == head) return {static_cast<long>(lvl), static_cast<long>(i), {}};
    }
    return {-1, -1, head};
}

bool labels_match(const BTLabel& a, Env& env_a, const BTLabel& b, Env& env_b)
{
    if (a.arity != b.arity || a.binders.size() != b.binders.size()) return false;
    env_a.push_back(&a.binders);
    env_b.push_back(&b.binders);
    bool same = resolve(env_a, a.head) == resolve(env_b, b.head);
    env_a.pop_back();
    env_b.pop_back();
    return same;
}

bool le_at(const BohmTree& a, const BohmTree& b, const Seq& at, Env& env_a, Env& env_b)
{
    const auto* la = std::get_if<BTLabel>(a.find(at));
    if (la == nullptr) return true;
    const BTNode* nb = b.find(at);
    const auto* lb = nb ? std::get_if<BTLabel>(nb) : nullptr;
    if (lb == nullptr || !labels_match(*la, env_a, *lb, env_b)) return false;

    env_a.push_back(&la->binders);
    env_b.push_back(&lb->binders);
    bool ok = true;
    for (std::size_t k = 0; ok && k < la->arity; ++k) {
        auto child = at.child(k);
        if (a.find(child) != nullptr) ok = le_at(a, b, child, env_a, env_b);
    }
    env_a.pop_back();
    env_b.pop_back();
    return ok;
}

void copy_subtree(const BohmTree& src, const Seq& at, std::map<Seq, BTNode>& out)
{
    for (auto it = src.nodes.lower_bound(at); it != src.nodes.end(); ++it)
        if (at.prefix_of(it->first)) out.emplace(it->first, it->second);
}

// Copies b's subtree at `at`, rewriting heads bound by the first `shared`
// levels of env_b to the names of the same binders in env_a.
// FIXME: a translated head can be shadowed by a binder introduced inside the
// copied subtree; such binders would need renaming as well.
void copy_translated(const BohmTree& b, const Seq& at, Env& env_b, const Env& env_a, std::size_t shared,
                     std::map<Seq, BTNode>& out)
{
    const BTNode* node = b.find(at);
    if (node == nullptr) return;
    const auto* label = std::get_if<BTLabel>(node);
    if (label == nullptr) {
        out.emplace(at, *node);
        return;
    }
    BTLabel copy = *label;
    env_b.push_back(&label->binders);
    auto ref = resolve(env_b, label->head);
    if (ref.level >= 0 && static_cast<std::size_t>(ref.level) < shared)
        copy.head = (*env_a[static_cast<std::size_t>(ref.level)])[static_cast<std::size_t>(ref.position)];
    out.emplace(at, std::move(copy));
    for (std::size_t k = 0; k < label->arity; ++k) copy_translated(b, at.child(k), env_b, env_a, shared, out);
    env_b.pop_back();
}

bool merge_at(const BohmTree& a, const BohmTree& b, const Seq& at, Env& env_a, Env& env_b,
              std::map<Seq, BTNode>& out)
{
    const BTNode* na = a.find(at);
    const BTNode* nb = b.find(at);
    const auto* la = na ? std::get_if<BTLabel>(na) : nullptr;
    const auto* lb = nb ? std::get_if<BTLabel>(nb) : nullptr;

    if (la != nullptr && lb != nullptr) {
        if (!labels_match(*la, env_a, *lb, env_b)) return false;
        out.emplace(at, *la);
        env_a.push_back(&la->binders);
        env_b.push_back(&lb->binders);
        bool ok = true;
        for (std::size_t k = 0; ok && k < la->arity; ++k) ok = merge_at(a, b, at.child(k), env_a, env_b, out);
        env_a.pop_back();
        env_b.pop_back();
        return ok;
    }
    if (la != nullptr) {
        copy_subtree(a, at, out);
    } else if (lb != nullptr) {
        copy_translated(b, at, env_b, env_a, env_a.size(), out);
    } else if (na != nullptr || nb != nullptr) {
        std::size_t spent = 0;
        if (na) spent = std::get<Unresolved>(*na).fuel_spent;
        if (nb) spent = std::max(spent, std::get<Unresolved>(*nb).fuel_spent);
        out.emplace(at, Unresolved{spent});
    }
    return true;
}

}  // namespace

BohmTree bt_compute(const Term& term, std::size_t depth, std::size_t fuel)
{
    BohmTree tree{{}, {depth, fuel}};
    build(term, Seq{}, tree.budgets, tree.nodes);
    return tree;
}

BohmTree bt_subtree(const BohmTree& tree, const Seq& at)
{
    if (tree.find(at) == nullptr) throw PathOutsideTree(at);
    BohmTree sub{{}, {tree.budgets.depth > at.lh() ? tree.budgets.depth - at.lh() : 0, tree.budgets.fuel}};
    for (const auto& [path, node] : tree.nodes) {
        if (!at.prefix_of(path)) continue;
        sub.nodes.emplace(Seq(std::vector<std::size_t>(path.items().begin() + static_cast<long>(at.lh()),
                                                       path.items().end())),
                          node);
    }
    return sub;
}

bool bt_le(const BohmTree& a, const BohmTree& b)
{
    if (a.find(Seq{}) == nullptr) return true;
    Env env_a, env_b;
    return le_at(a, b, Seq{}, env_a, env_b);
}

std::optional<BohmTree> bt_merge(const BohmTree& a, const BohmTree& b)
{
    BohmTree out{{}, {std::max(a.budgets.depth, b.budgets.depth), std::max(a.budgets.fuel, b.budgets.fuel)}};
    Env env_a, env_b;
    if (!merge_at(a, b, Seq{}, env_a, env_b, out.nodes)) return std::nullopt;
    return out;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

void render_text(const BohmTree& tree, const Seq& at, std::string& out)
{
    const BTNode* node = tree.find(at);
    if (node == nullptr) return;
    out.append(2 * at.lh(), ' ');
    out += to_string(at);
    if (const auto* label = std::get_if<BTLabel>(node)) {
        out += ' ' + to_string(*label) + " /" + std::to_string(label->arity) + '\n';
        for (std::size_t k = 0; k < label->arity; ++k) render_text(tree, at.child(k), out);
    } else {
        out += " ⊥?\n";
    }
}

}  // namespace

std::string bt_render(const BohmTree& tree, RenderFormat format)
{
    if (format == RenderFormat::Text) {
        std::string out;
        render_text(tree, Seq{}, out);
        return out;
    }

    nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
    for (const auto& [path, node] : tree.nodes) {  // map order: length, then lexicographic
        nlohmann::ordered_json rec;
        rec["path"] = path.items();
        if (const auto* label = std::get_if<BTLabel>(&node)) {
            rec["status"] = "labeled";
            rec["binders"] = label->binders;
            rec["head"] = label->head;
            rec["arity"] = label->arity;
        } else {
            rec["status"] = "unresolved";
            rec["fuel_spent"] = std::get<Unresolved>(node).fuel_spent;
        }
        nodes.push_back(std::move(rec));
    }
    nlohmann::ordered_json doc;
    doc["budgets"] = {{"depth", tree.budgets.depth}, {"fuel", tree.budgets.fuel}};
    doc["nodes"] = std::move(nodes);
    return doc.dump();
}

BohmTree bt_from_json(std::string_view json)
{
    try {
        auto doc = nlohmann::json::parse(json);
        BohmTree tree;
        tree.budgets.depth = doc.at("budgets").at("depth").get<std::size_t>();
        tree.budgets.fuel = doc.at("budgets").at("fuel").get<std::size_t>();
        for (const auto& rec : doc.at("nodes")) {
            Seq path(rec.at("path").get<std::vector<std::size_t>>());
            auto status = rec.at("status").get<std::string>();
            if (status == "labeled") {
                BTLabel label{rec.at("binders").get<std::vector<std::string>>(), rec.at("head").get<std::string>(),
                              rec.at("arity").get<std::size_t>()};
                tree.nodes.emplace(std::move(path), std::move(label));
            } else if (status == "unresolved") {
                tree.nodes.emplace(std::move(path), Unresolved{rec.value("fuel_spent", std::size_t{0})});
            } else {
                throw std::invalid_argument("unknown node status '" + status + "'");
            }
        }
        return tree;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("malformed Böhm tree JSON: ") + e.what());
    }
}

}  // namespace lc
