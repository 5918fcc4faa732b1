#include "preference.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

#include "errors.hpp"

namespace mcl {

bool lex_less(const ViolationVector& a, const ViolationVector& b) {
    assert(a.counts.size() == b.counts.size() && "violation vectors must share the global order");
    for (std::size_t i = 0; i < a.counts.size(); ++i) {
        if (a.counts[i] != b.counts[i]) return a.counts[i] < b.counts[i];
    }
    return false;
}

ViolationVector violations(const DomainType& x, const DefeasibleModule& m, const RankTable& ranks,
                           const CanonicalDomain& dom) {
    ViolationVector v{std::vector<std::uint16_t>(ranks.order, 0)};
    if (ranks.order == 0) return v;
    if (!dom.member(x, m.subject)) return v;
    for (const auto& d : m.defaults) {
        Rank r = ranks.rank_of_default(d);
        if (rank_is_infinite(r)) continue;
        if (dom.member(x, d.antecedent) && !dom.member(x, d.consequent)) {
            ++v.counts[static_cast<std::size_t>(ranks.order - 1 - *r)];
        }
    }
    return v;
}

ModulePref module_order(const CanonicalDomain& dom, const DefeasibleModule& m, const RankTable& ranks) {
    ModulePref pref{m.name, {}};
    pref.per_type.reserve(dom.size());
    for (const auto& t : dom.types()) pref.per_type.push_back(violations(t, m, ranks, dom));
    return pref;
}

bool global_less(std::uint32_t x, std::uint32_t y, std::span<const ModulePref> prefs) {
    bool strict = false;
    for (const auto& p : prefs) {
        if (p.less(y, x)) return false;
        if (p.less(x, y)) strict = true;
    }
    return strict;
}

PreferenceModel::PreferenceModel(const CanonicalDomain& dom, const ModularKB& kb, const RankTable& ranks)
    : dom_(&dom) {
    for (const auto& m : kb.modules) prefs_.push_back(module_order(dom, m, ranks));

    // Group types by their concatenated per-module vectors.
    struct KeyHash {
        std::size_t operator()(const std::vector<std::uint16_t>& v) const {
            std::size_t h = 1469598103934665603ULL;
            for (auto x : v) h = (h ^ x) * 1099511628211ULL;
            return h;
        }
    };
    std::unordered_map<std::vector<std::uint16_t>, std::uint32_t, KeyHash> index;
    profile_of_.resize(dom.size());
    for (std::uint32_t t = 0; t < dom.size(); ++t) {
        std::vector<std::uint16_t> key;
        for (const auto& p : prefs_) key.insert(key.end(), p.per_type[t].counts.begin(), p.per_type[t].counts.end());
        auto it = index.find(key);
        if (it == index.end()) {
            std::uint32_t pid = static_cast<std::uint32_t>(profile_members_.size());
            index.emplace(std::move(key), pid);
            profile_members_.push_back({t});
            profile_rep_.push_back(t);
            profile_of_[t] = pid;
        } else {
            profile_members_[it->second].push_back(t);
            profile_of_[t] = it->second;
        }
    }
}

bool PreferenceModel::less(std::uint32_t x, std::uint32_t y) const { return global_less(x, y, prefs_); }

bool PreferenceModel::profile_less(std::uint32_t p, std::uint32_t q) const {
    return less(profile_rep_[p], profile_rep_[q]);
}

bool PreferenceModel::profile_module_less(std::size_t i, std::uint32_t p, std::uint32_t q) const {
    return prefs_[i].less(profile_rep_[p], profile_rep_[q]);
}

namespace {

template <typename ProfileLess>
std::vector<std::uint32_t> minimal_by_profile(std::span<const std::uint32_t> ids,
                                              const std::vector<std::uint32_t>& profile_of, ProfileLess&& pless) {
    // Distinct occupied profiles, in first-seen order.
    std::vector<std::uint32_t> occupied;
    std::vector<char> seen;
    for (auto id : ids) {
        std::uint32_t p = profile_of[id];
        if (p >= seen.size()) seen.resize(p + 1, 0);
        if (!seen[p]) {
            seen[p] = 1;
            occupied.push_back(p);
        }
    }
    std::vector<char> is_min(seen.size(), 0);
    for (auto p : occupied) {
        bool dominated = false;
        for (auto q : occupied) {
            if (q != p && pless(q, p)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) is_min[p] = 1;
    }
    std::vector<std::uint32_t> out;
    for (auto id : ids)
        if (is_min[profile_of[id]]) out.push_back(id);
    return out;
}

}  // namespace

std::vector<std::uint32_t> PreferenceModel::global_minimal(std::span<const std::uint32_t> ids) const {
    return minimal_by_profile(ids, profile_of_,
                              [this](std::uint32_t p, std::uint32_t q) { return profile_less(p, q); });
}

std::vector<std::uint32_t> PreferenceModel::module_minimal(std::size_t module_idx,
                                                           std::span<const std::uint32_t> ids) const {
    return minimal_by_profile(ids, profile_of_, [this, module_idx](std::uint32_t p, std::uint32_t q) {
        return profile_module_less(module_idx, p, q);
    });
}

ComplianceReport t_compliant(const CanonicalDomain& dom, const PreferenceModel& prefs, const ModularKB& kb,
                             const RankTable& ranks, const TBoxView& tbox) {
    ComplianceReport report;
    for (const auto& d : kb.all_defaults()) {
        Rank r = ranks.rank_of_default(d);
        bool violated = false;
        if (rank_is_infinite(r)) {
            Outcome sat = tbox.satisfiable(d.antecedent);
            if (sat == Outcome::ResourceLimit) throw ResourceLimitError(tbox.node_limit());
            violated = sat == Outcome::Satisfiable;
        } else {
            const auto& ext = dom.extension(d.antecedent);
            for (auto id : prefs.global_minimal(ext)) {
                if (!dom.member(id, d.consequent)) {
                    violated = true;
                    break;
                }
            }
        }
        if (violated) {
            report.compliant = false;
            report.violated.push_back(d);
        }
    }
    return report;
}

}  // namespace mcl
