#include "prop_oracle.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "entailment.hpp"
#include "errors.hpp"
#include "ranking.hpp"

namespace mcl::oracle {

namespace {

std::map<std::string, std::uint32_t> name_indices(const PropKB& kb) {
    std::map<std::string, std::uint32_t> out;
    for (std::uint32_t i = 0; i < kb.names.size(); ++i) out.emplace(kb.names[i], i);
    return out;
}

bool eval(const Concept& c, std::uint32_t world, const std::map<std::string, std::uint32_t>& idx) {
    switch (c.kind()) {
        case ConceptKind::Top:
            return true;
        case ConceptKind::Bot:
            return false;
        case ConceptKind::Name: {
            auto it = idx.find(c.label());
            if (it == idx.end()) throw BadQueryError("proposition '" + c.label() + "' is not in the oracle alphabet");
            return (world >> it->second) & 1u;
        }
        case ConceptKind::Not:
            return !eval(c.child(), world, idx);
        case ConceptKind::And:
            return eval(c.left(), world, idx) && eval(c.right(), world, idx);
        case ConceptKind::Or:
            return eval(c.left(), world, idx) || eval(c.right(), world, idx);
        default:
            throw BadQueryError("the propositional oracle cannot evaluate quantified concepts");
    }
}

void require_role_free(const Concept& c) {
    if (!role_names(c).empty()) throw BadQueryError("the propositional oracle requires role-free concepts");
}

}  // namespace

PropKB flatten(const ModularKB& kb, const std::vector<Concept>& extra) {
    if (!kb.abox.empty()) throw BadQueryError("the propositional oracle does not handle assertions");
    PropKB out;
    std::set<std::string> names;
    auto take = [&](const Concept& c) {
        require_role_free(c);
        for (const auto& n : concept_names(c)) names.insert(n);
    };
    for (const auto& ax : kb.strict) {
        take(ax.lhs);
        take(ax.rhs);
        out.strict.emplace_back(ax.lhs, ax.rhs);
    }
    for (const auto& d : kb.all_defaults()) {
        take(d.antecedent);
        take(d.consequent);
        out.defaults.emplace_back(d.antecedent, d.consequent);
    }
    for (const auto& c : extra) take(c);
    out.names.assign(names.begin(), names.end());
    return out;
}

bool world_eval(const PropKB& kb, const Concept& c, std::uint32_t world) {
    auto idx = name_indices(kb);
    return eval(c, world, idx);
}

std::vector<std::uint32_t> strict_worlds(const PropKB& kb) {
    if (kb.names.size() > kMaxPropAtoms) throw AtomCapError(kb.names.size(), kMaxPropAtoms);
    auto idx = name_indices(kb);
    std::vector<std::uint32_t> out;
    const std::uint32_t limit = 1u << kb.names.size();
    for (std::uint32_t w = 0; w < limit; ++w) {
        bool ok = true;
        for (const auto& [lhs, rhs] : kb.strict) {
            if (eval(lhs, w, idx) && !eval(rhs, w, idx)) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(w);
    }
    return out;
}

PropRankTable prop_ranks(const PropKB& kb) {
    auto idx = name_indices(kb);
    std::vector<std::uint32_t> worlds = strict_worlds(kb);
    if (worlds.empty()) throw BadQueryError("the strict part of the oracle knowledge base is unsatisfiable");

    // exceptional(E, C): no strict world satisfies C plus the material
    // implications of E.
    auto exceptional = [&](const std::vector<std::size_t>& level, const Concept& c) {
        for (auto w : worlds) {
            if (!eval(c, w, idx)) continue;
            bool all = true;
            for (auto k : level) {
                const auto& [a, b] = kb.defaults[k];
                if (eval(a, w, idx) && !eval(b, w, idx)) {
                    all = false;
                    break;
                }
            }
            if (all) return false;
        }
        return true;
    };

    std::vector<std::vector<std::size_t>> levels;
    {
        std::vector<std::size_t> all(kb.defaults.size());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        levels.push_back(std::move(all));
    }
    for (;;) {
        const auto& cur = levels.back();
        std::vector<std::size_t> next;
        for (auto k : cur) {
            if (exceptional(cur, kb.defaults[k].first)) next.push_back(k);
        }
        if (next.size() == cur.size()) break;
        levels.push_back(std::move(next));
    }

    PropRankTable table;
    table.default_rank.assign(kb.defaults.size(), std::nullopt);
    for (std::size_t k = 0; k < kb.defaults.size(); ++k) {
        for (std::size_t i = 0; i < levels.size(); ++i) {
            if (!exceptional(levels[i], kb.defaults[k].first)) {
                table.default_rank[k] = static_cast<int>(i);
                break;
            }
        }
        if (table.default_rank[k].has_value())
            table.order = std::max(table.order, *table.default_rank[k] + 1);
    }
    return table;
}

std::vector<int> violation_tuple(const PropKB& kb, const PropRankTable& ranks, std::uint32_t world) {
    auto idx = name_indices(kb);
    std::vector<int> tuple(ranks.order, 0);
    for (std::size_t k = 0; k < kb.defaults.size(); ++k) {
        if (!ranks.default_rank[k].has_value()) continue;
        const auto& [a, b] = kb.defaults[k];
        if (eval(a, world, idx) && !eval(b, world, idx)) ++tuple[ranks.order - 1 - *ranks.default_rank[k]];
    }
    return tuple;
}

bool tuple_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

bool lex_entails(const PropKB& kb, const Concept& antecedent, const Concept& consequent) {
    require_role_free(antecedent);
    require_role_free(consequent);
    auto idx = name_indices(kb);
    PropRankTable ranks = prop_ranks(kb);

    // Worlds of the semantics: strict-satisfying worlds that also satisfy
    // every infinite-rank default materially.
    std::vector<std::uint32_t> worlds;
    for (auto w : strict_worlds(kb)) {
        bool ok = true;
        for (std::size_t k = 0; k < kb.defaults.size(); ++k) {
            if (ranks.default_rank[k].has_value()) continue;
            const auto& [a, b] = kb.defaults[k];
            if (eval(a, w, idx) && !eval(b, w, idx)) {
                ok = false;
                break;
            }
        }
        if (ok) worlds.push_back(w);
    }

    std::vector<std::uint32_t> ante_worlds;
    for (auto w : worlds)
        if (eval(antecedent, w, idx)) ante_worlds.push_back(w);

    std::vector<std::vector<int>> tuples;
    tuples.reserve(ante_worlds.size());
    for (auto w : ante_worlds) tuples.push_back(violation_tuple(kb, ranks, w));

    for (std::size_t i = 0; i < ante_worlds.size(); ++i) {
        bool minimal = true;
        for (std::size_t j = 0; j < ante_worlds.size(); ++j) {
            if (tuple_less(tuples[j], tuples[i])) {
                minimal = false;
                break;
            }
        }
        if (minimal && !eval(consequent, ante_worlds[i], idx)) return false;
    }
    return true;
}

CrossCheckReport cross_check(const PropKB& kb, const std::vector<std::pair<Concept, Concept>>& queries) {
    CrossCheckReport report;

    ModularKB mkb;
    for (const auto& [lhs, rhs] : kb.strict) mkb.strict.push_back({lhs, rhs});
    DefeasibleModule flat{"all", Concept::top(), {}};
    for (const auto& [a, b] : kb.defaults) {
        TypicalityInclusion d{a, b};
        if (std::find(flat.defaults.begin(), flat.defaults.end(), d) == flat.defaults.end())
            flat.defaults.push_back(d);
    }
    mkb.modules.push_back(std::move(flat));

    for (const auto& [a, b] : queries) {
        CrossCheckItem item{a, b, false, false};
        item.oracle = lex_entails(kb, a, b);
        item.engine = entails_mcl(mkb, DefeasibleQuery{a, b}).entailed;
        if (item.engine != item.oracle) ++report.disagreements;
        report.items.push_back(std::move(item));
    }

    // Compare the two rank constructions on the shared default list.
    PropRankTable oracle_ranks = prop_ranks(kb);
    TBoxView tbox(mkb.strict);
    RankTable engine_ranks = compute_ranks(mkb, tbox);
    for (std::size_t k = 0; k < kb.defaults.size(); ++k) {
        Rank er = engine_ranks.rank_of_default({kb.defaults[k].first, kb.defaults[k].second});
        const auto& pr = oracle_ranks.default_rank[k];
        bool same = (rank_is_infinite(er) && !pr.has_value()) ||
                    (!rank_is_infinite(er) && pr.has_value() && *er == *pr);
        if (!same) report.ranks_agree = false;
    }
    return report;
}

}  // namespace mcl::oracle
