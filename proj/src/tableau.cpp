#include "tableau.hpp"

#include <algorithm>
#include <cassert>

#include "errors.hpp"

namespace mcl {

bool FiniteModel::Node::has(const Concept& c) const {
    return std::binary_search(label.begin(), label.end(), c, ConceptLess{});
}

TBoxView::TBoxView(std::vector<StrictInclusion> axioms, std::uint64_t node_limit)
    : axioms_(std::move(axioms)), node_limit_(node_limit) {
    for (const auto& ax : axioms_) internalized_.push_back(nnf(Concept::disj(Concept::negation(ax.lhs), ax.rhs)));
}

namespace {

// ---------------------------------------------------------------------------
// Completion graph. Rule application is deterministic: clash detection first,
// then conjunctions, forced disjuncts and universal propagation, then the
// first open disjunction (branching), and existential expansion last, always
// at the lowest node id and the structurally smallest concept.
// ---------------------------------------------------------------------------

struct TNode {
    int parent = -1;
    std::set<Concept, ConceptLess> label;
    std::vector<std::pair<std::string, int>> succs;
    bool clash = false;
};

struct GraphState {
    std::vector<TNode> nodes;
};

class Engine {
public:
    Engine(const TBoxView& tbox, std::uint64_t limit) : tbox_(tbox), limit_(limit) {}

    Outcome run(GraphState& st) {
        for (auto& n : st.nodes) scan_clash(n);
        return expand(st);
    }

    std::uint64_t nodes_created() const { return created_; }

private:
    // Clash detection for labels assembled outside of insert().
    static void scan_clash(TNode& n) {
        for (const auto& c : n.label) {
            if (c.kind() == ConceptKind::Bot) n.clash = true;
            if (c.kind() == ConceptKind::Not && n.label.count(c.child())) n.clash = true;
        }
    }

    bool insert(TNode& node, const Concept& c) {
        auto [it, fresh] = node.label.insert(c);
        if (!fresh) return false;
        if (c.kind() == ConceptKind::Bot) node.clash = true;
        if (c.kind() == ConceptKind::Name && node.label.count(Concept::negation(c))) node.clash = true;
        if (c.kind() == ConceptKind::Not && node.label.count(c.child())) node.clash = true;
        return true;
    }

    bool blocked(const GraphState& st, int idx) const {
        const auto& lbl = st.nodes[idx].label;
        for (int a = st.nodes[idx].parent; a >= 0; a = st.nodes[a].parent) {
            const auto& anc = st.nodes[a].label;
            if (std::includes(anc.begin(), anc.end(), lbl.begin(), lbl.end(), ConceptLess{})) return true;
        }
        return false;
    }

    Outcome expand(GraphState& st) {
        for (;;) {
            for (const auto& n : st.nodes)
                if (n.clash) return Outcome::Unsatisfiable;

            if (apply_and(st)) continue;
            if (apply_or_forced(st)) continue;
            if (apply_forall(st)) continue;

            // Branching disjunction.
            if (auto b = find_open_or(st)) {
                auto [node_idx, disj] = *b;
                GraphState left = st;
                insert(left.nodes[node_idx], disj.left());
                Outcome lo = expand(left);
                if (lo == Outcome::Satisfiable) {
                    st = std::move(left);
                    return Outcome::Satisfiable;
                }
                if (lo == Outcome::ResourceLimit) return Outcome::ResourceLimit;
                insert(st.nodes[node_idx], disj.right());
                continue;
            }

            auto ex = apply_exists(st);
            if (ex == Applied::Resource) return Outcome::ResourceLimit;
            if (ex == Applied::Yes) continue;
            return Outcome::Satisfiable;
        }
    }

    bool apply_and(GraphState& st) {
        for (auto& n : st.nodes) {
            for (const auto& c : n.label) {
                if (c.kind() != ConceptKind::And) continue;
                bool l = n.label.count(c.left()), r = n.label.count(c.right());
                if (l && r) continue;
                insert(n, c.left());
                insert(n, c.right());
                return true;
            }
        }
        return false;
    }

    // A disjunction whose one side is already refuted in the label forces the
    // other side; a disjunction with a present side is satisfied.
    bool apply_or_forced(GraphState& st) {
        for (auto& n : st.nodes) {
            for (const auto& c : n.label) {
                if (c.kind() != ConceptKind::Or) continue;
                if (n.label.count(c.left()) || n.label.count(c.right())) continue;
                if (n.label.count(complement(c.left()))) {
                    insert(n, c.right());
                    return true;
                }
                if (n.label.count(complement(c.right()))) {
                    insert(n, c.left());
                    return true;
                }
            }
        }
        return false;
    }

    bool apply_forall(GraphState& st) {
        for (auto& n : st.nodes) {
            for (const auto& c : n.label) {
                if (c.kind() != ConceptKind::Forall) continue;
                for (auto& [role, tgt] : n.succs) {
                    if (role != c.label()) continue;
                    if (!st.nodes[tgt].label.count(c.child())) {
                        insert(st.nodes[tgt], c.child());
                        return true;
                    }
                }
            }
        }
        return false;
    }

    std::optional<std::pair<int, Concept>> find_open_or(const GraphState& st) const {
        for (std::size_t i = 0; i < st.nodes.size(); ++i) {
            for (const auto& c : st.nodes[i].label) {
                if (c.kind() != ConceptKind::Or) continue;
                if (st.nodes[i].label.count(c.left()) || st.nodes[i].label.count(c.right())) continue;
                return std::make_pair(static_cast<int>(i), c);
            }
        }
        return std::nullopt;
    }

    enum class Applied { No, Yes, Resource };

    Applied apply_exists(GraphState& st) {
        for (std::size_t i = 0; i < st.nodes.size(); ++i) {
            for (const auto& c : st.nodes[i].label) {
                if (c.kind() != ConceptKind::Exists) continue;
                bool realized = false;
                for (auto& [role, tgt] : st.nodes[i].succs) {
                    if (role == c.label() && st.nodes[tgt].label.count(c.child())) {
                        realized = true;
                        break;
                    }
                }
                if (realized) continue;
                if (blocked(st, static_cast<int>(i))) continue;
                if (++created_ > limit_) return Applied::Resource;
                TNode fresh;
                fresh.parent = static_cast<int>(i);
                st.nodes.push_back(fresh);
                int idx = static_cast<int>(st.nodes.size()) - 1;
                st.nodes[i].succs.emplace_back(c.label(), idx);
                insert(st.nodes[idx], c.child());
                for (const auto& g : tbox_.internalized()) insert(st.nodes[idx], g);
                return Applied::Yes;
            }
        }
        return Applied::No;
    }

    const TBoxView& tbox_;
    std::uint64_t limit_;
    std::uint64_t created_ = 0;
};

// Folds blocked nodes onto their nearest strictly-enclosing blocker and keeps
// only what is reachable from the roots.
FiniteModel build_model(const GraphState& st, const std::vector<std::uint32_t>& roots,
                        const std::map<std::string, std::uint32_t>& individuals) {
    const std::size_t n = st.nodes.size();
    std::vector<int> anchor(n);
    auto blocker_of = [&](int idx) -> int {
        const auto& lbl = st.nodes[idx].label;
        for (int a = st.nodes[idx].parent; a >= 0; a = st.nodes[a].parent) {
            const auto& anc = st.nodes[a].label;
            if (std::includes(anc.begin(), anc.end(), lbl.begin(), lbl.end(), ConceptLess{})) return a;
        }
        return -1;
    };
    for (std::size_t i = 0; i < n; ++i) anchor[i] = static_cast<int>(i);
    // Nodes are indexed in creation order, so parents precede children and one
    // ascending pass resolves anchor chains.
    for (std::size_t i = 0; i < n; ++i) {
        int b = blocker_of(static_cast<int>(i));
        if (b >= 0) anchor[i] = anchor[b];
    }

    std::vector<int> model_index(n, -1);
    FiniteModel m;
    std::vector<std::uint32_t> queue;
    auto intern = [&](int idx) -> std::uint32_t {
        idx = anchor[idx];
        if (model_index[idx] >= 0) return static_cast<std::uint32_t>(model_index[idx]);
        FiniteModel::Node node;
        node.label.assign(st.nodes[idx].label.begin(), st.nodes[idx].label.end());
        m.nodes.push_back(std::move(node));
        model_index[idx] = static_cast<int>(m.nodes.size()) - 1;
        queue.push_back(static_cast<std::uint32_t>(idx));
        return static_cast<std::uint32_t>(model_index[idx]);
    };
    for (auto r : roots) m.roots.push_back(intern(static_cast<int>(r)));
    for (const auto& [name, idx] : individuals) m.individuals[name] = intern(static_cast<int>(idx));
    for (std::size_t q = 0; q < queue.size(); ++q) {
        int src = static_cast<int>(queue[q]);
        for (const auto& [role, tgt] : st.nodes[src].succs) {
            std::uint32_t t = intern(tgt);
            m.nodes[model_index[src]].edges.emplace_back(role, t);
        }
    }
    return m;
}

}  // namespace

TableauResult run_tableau(const TBoxView& tbox, const std::vector<std::vector<Concept>>& root_labels,
                          const std::vector<std::tuple<std::uint32_t, std::string, std::uint32_t>>& root_edges,
                          std::uint64_t node_limit) {
    GraphState st;
    for (const auto& lbl : root_labels) {
        TNode n;
        for (const auto& c : lbl) n.label.insert(nnf(c));
        for (const auto& g : tbox.internalized()) n.label.insert(g);
        st.nodes.push_back(std::move(n));
    }
    if (st.nodes.empty()) {
        TNode n;
        n.label.insert(Concept::top());
        for (const auto& g : tbox.internalized()) n.label.insert(g);
        st.nodes.push_back(std::move(n));
    }
    for (const auto& [from, role, to] : root_edges) st.nodes[from].succs.emplace_back(role, static_cast<int>(to));

    Engine engine(tbox, node_limit);
    Outcome out = engine.run(st);
    TableauResult result{out, std::nullopt};
    if (out == Outcome::Satisfiable) {
        std::vector<std::uint32_t> roots;
        for (std::uint32_t i = 0; i < root_labels.size(); ++i) roots.push_back(i);
        if (roots.empty()) roots.push_back(0);
        result.witness = build_model(st, roots, {});
    }
    return result;
}

Outcome TBoxView::satisfiable(const Concept& c) const { return satisfiable_conj({c}); }

Outcome TBoxView::satisfiable_conj(const std::vector<Concept>& cs) const {
    std::vector<std::string> keys;
    std::vector<Concept> normalized;
    for (const auto& c : cs) {
        Concept n = nnf(c);
        normalized.push_back(n);
        keys.push_back(n.str());
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::string key;
    for (const auto& k : keys) {
        key += k;
        key += '\x1f';
    }
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
    }
    TableauResult r = run_tableau(*this, {normalized}, {}, node_limit_);
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        cache_.emplace(key, r.outcome);
    }
    return r.outcome;
}

TableauResult TBoxView::satisfiable_model(const Concept& c) const {
    return run_tableau(*this, {{nnf(c)}}, {}, node_limit_);
}

TableauResult is_satisfiable(const Concept& c, const TBoxView& tbox) { return tbox.satisfiable_model(c); }

bool subsumes(const TBoxView& tbox, const Concept& c, const Concept& d) {
    Outcome out = tbox.satisfiable_conj({c, complement(d)});
    if (out == Outcome::ResourceLimit) throw ResourceLimitError(tbox.node_limit());
    return out == Outcome::Unsatisfiable;
}

TableauResult kb_consistent(const TBoxView& tbox, const std::vector<Assertion>& abox) {
    std::map<std::string, std::uint32_t> individuals;
    std::vector<std::vector<Concept>> labels;
    auto node_of = [&](const std::string& name) {
        auto it = individuals.find(name);
        if (it != individuals.end()) return it->second;
        std::uint32_t idx = static_cast<std::uint32_t>(labels.size());
        individuals.emplace(name, idx);
        labels.push_back({});
        return idx;
    };
    std::vector<std::tuple<std::uint32_t, std::string, std::uint32_t>> edges;
    for (const auto& a : abox) {
        if (const auto* ca = std::get_if<ConceptAssertion>(&a)) {
            labels[node_of(ca->individual)].push_back(nnf(ca->concept_expr));
        } else {
            const auto& ra = std::get<RoleAssertion>(a);
            std::uint32_t s = node_of(ra.subject);
            std::uint32_t o = node_of(ra.object);
            edges.emplace_back(s, ra.role, o);
        }
    }
    TableauResult r = run_tableau(tbox, labels, edges, tbox.node_limit());
    if (r.outcome == Outcome::ResourceLimit) throw ResourceLimitError(tbox.node_limit());
    if (r.witness && !individuals.empty()) {
        // run_tableau keeps root order; re-attach individual names.
        for (const auto& [name, idx] : individuals) r.witness->individuals[name] = r.witness->roots[idx];
    }
    return r;
}

bool model_eval(const FiniteModel& m, std::uint32_t node, const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Top:
            return true;
        case ConceptKind::Bot:
            return false;
        case ConceptKind::Name:
            return m.nodes[node].has(c);
        case ConceptKind::Not:
            return !model_eval(m, node, c.child());
        case ConceptKind::And:
            return model_eval(m, node, c.left()) && model_eval(m, node, c.right());
        case ConceptKind::Or:
            return model_eval(m, node, c.left()) || model_eval(m, node, c.right());
        case ConceptKind::Exists:
            for (const auto& [role, tgt] : m.nodes[node].edges)
                if (role == c.label() && model_eval(m, tgt, c.child())) return true;
            return false;
        case ConceptKind::Forall:
            for (const auto& [role, tgt] : m.nodes[node].edges)
                if (role == c.label() && !model_eval(m, tgt, c.child())) return false;
            return true;
    }
    return false;  // unreachable
}

bool model_satisfies_tbox(const FiniteModel& m, const std::vector<StrictInclusion>& axioms) {
    for (std::uint32_t i = 0; i < m.nodes.size(); ++i) {
        for (const auto& ax : axioms) {
            if (model_eval(m, i, ax.lhs) && !model_eval(m, i, ax.rhs)) return false;
        }
    }
    return true;
}

bool model_realizes_labels(const FiniteModel& m) {
    for (std::uint32_t i = 0; i < m.nodes.size(); ++i) {
        for (const auto& c : m.nodes[i].label) {
            if (!model_eval(m, i, c)) return false;
        }
    }
    return true;
}

}  // namespace mcl
