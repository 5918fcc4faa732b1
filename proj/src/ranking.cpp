#include "ranking.hpp"

#include <algorithm>

#include "errors.hpp"

namespace mcl {

Concept materialize(std::span<const TypicalityInclusion> defaults) {
    Concept out = Concept::top();
    bool first = true;
    for (const auto& d : defaults) {
        Concept piece = Concept::disj(Concept::negation(d.antecedent), d.consequent);
        out = first ? piece : Concept::conj(out, piece);
        first = false;
    }
    return out;
}

bool exceptional(const TBoxView& tbox, std::span<const TypicalityInclusion> defaults, const Concept& c) {
    Outcome out = tbox.satisfiable_conj({materialize(defaults), c});
    if (out == Outcome::ResourceLimit) throw ResourceLimitError(tbox.node_limit());
    return out == Outcome::Unsatisfiable;
}

Rank RankTable::rank_of_default(const TypicalityInclusion& d) const {
    for (const auto& [incl, rank] : default_ranks) {
        if (incl == d) return rank;
    }
    return std::nullopt;
}

std::vector<TypicalityInclusion> RankTable::infinite_defaults() const {
    std::vector<TypicalityInclusion> out;
    for (const auto& [incl, rank] : default_ranks) {
        if (rank_is_infinite(rank)) out.push_back(incl);
    }
    return out;
}

namespace {

Rank rank_against_levels(const TBoxView& tbox, const std::vector<std::vector<TypicalityInclusion>>& levels,
                         const Concept& c) {
    for (std::size_t i = 0; i < levels.size(); ++i) {
        if (!exceptional(tbox, levels[i], c)) return static_cast<int>(i);
    }
    return std::nullopt;
}

}  // namespace

RankTable compute_ranks(const ModularKB& kb, const TBoxView& tbox) {
    RankTable table;
    table.levels.push_back(kb.all_defaults());
    for (;;) {
        const auto& cur = table.levels.back();
        std::vector<TypicalityInclusion> next;
        for (const auto& d : cur) {
            if (exceptional(tbox, cur, d.antecedent)) next.push_back(d);
        }
        if (next.size() == cur.size()) break;  // fixpoint; sequence is anti-monotone
        table.levels.push_back(std::move(next));
    }

    auto rank_concept = [&](const Concept& c) {
        auto it = table.concept_ranks.find(c);
        if (it != table.concept_ranks.end()) return it->second;
        Rank r = rank_against_levels(tbox, table.levels, c);
        table.concept_ranks.emplace(c, r);
        return r;
    };

    for (const auto& d : table.levels.front()) rank_concept(d.antecedent);
    for (const auto& m : kb.modules) rank_concept(m.subject);

    for (const auto& d : table.levels.front()) {
        Rank r = table.concept_ranks.at(d.antecedent);
        table.default_ranks.emplace_back(d, r);
        if (r.has_value()) table.order = std::max(table.order, *r + 1);
    }
    return table;
}

Rank RankingEngine::concept_rank(const Concept& c) const {
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        auto it = table_.concept_ranks.find(c);
        if (it != table_.concept_ranks.end()) return it->second;
        auto mt = memo_.find(c);
        if (mt != memo_.end()) return mt->second;
    }
    Rank r = rank_against_levels(*tbox_, table_.levels, c);
    std::lock_guard<std::mutex> lock(memo_mutex_);
    memo_.emplace(c, r);
    return r;
}

}  // namespace mcl
