#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "kb.hpp"
#include "ranking.hpp"

namespace mcl {

// Violation counts of one type against one module, bucketed by default rank
// in descending order: counts[0] is the number of violated defaults of the
// highest finite rank, counts.back() the number of violated rank-0 defaults.
// The width is the global order, shared by all modules.
struct ViolationVector {
    std::vector<std::uint16_t> counts;
    friend bool operator==(const ViolationVector& a, const ViolationVector& b) { return a.counts == b.counts; }
};

// Natural lexicographic comparison on equal-width vectors.
bool lex_less(const ViolationVector& a, const ViolationVector& b);

// A type violates a default of its module when it falls under the module
// subject and the default's antecedent but not its consequent. Types outside
// the subject extension violate nothing. Infinite-rank defaults are never
// counted; they hold at every type by construction of the domain.
ViolationVector violations(const DomainType& x, const DefeasibleModule& m, const RankTable& ranks,
                           const CanonicalDomain& dom);

struct ModulePref {
    std::string module_name;
    std::vector<ViolationVector> per_type;  // indexed by type id

    bool less(std::uint32_t x, std::uint32_t y) const { return lex_less(per_type[x], per_type[y]); }
    bool leq(std::uint32_t x, std::uint32_t y) const { return !less(y, x); }
};

ModulePref module_order(const CanonicalDomain& dom, const DefeasibleModule& m, const RankTable& ranks);

// The combined order: strictly better in some module and not worse in any.
bool global_less(std::uint32_t x, std::uint32_t y, std::span<const ModulePref> prefs);

// Minimal elements of `ids` under an arbitrary strict relation.
template <typename LessFn>
std::vector<std::uint32_t> minimal(std::span<const std::uint32_t> ids, LessFn&& less) {
    std::vector<std::uint32_t> out;
    for (auto x : ids) {
        bool dominated = false;
        for (auto y : ids) {
            if (less(y, x)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(x);
    }
    return out;
}

// All module preferences over one domain, with types grouped by their full
// violation profile so minimality scales with the number of distinct
// profiles rather than the square of the domain.
class PreferenceModel {
public:
    PreferenceModel(const CanonicalDomain& dom, const ModularKB& kb, const RankTable& ranks);

    const std::vector<ModulePref>& modules() const { return prefs_; }
    const CanonicalDomain& domain() const { return *dom_; }

    bool less(std::uint32_t x, std::uint32_t y) const;               // global order
    bool module_less(std::size_t i, std::uint32_t x, std::uint32_t y) const { return prefs_[i].less(x, y); }

    std::uint32_t profile_of(std::uint32_t type_id) const { return profile_of_[type_id]; }
    std::size_t profile_count() const { return profile_members_.size(); }
    const std::vector<std::uint32_t>& profile_members(std::uint32_t p) const { return profile_members_[p]; }
    bool profile_less(std::uint32_t p, std::uint32_t q) const;
    bool profile_module_less(std::size_t i, std::uint32_t p, std::uint32_t q) const;

    // Minimal elements under the global order (or one module's order),
    // computed on the profile quotient.
    std::vector<std::uint32_t> global_minimal(std::span<const std::uint32_t> ids) const;
    std::vector<std::uint32_t> module_minimal(std::size_t module_idx, std::span<const std::uint32_t> ids) const;

private:
    const CanonicalDomain* dom_;
    std::vector<ModulePref> prefs_;
    std::vector<std::uint32_t> profile_of_;
    std::vector<std::vector<std::uint32_t>> profile_members_;
    // profile index -> one representative type id
    std::vector<std::uint32_t> profile_rep_;
};

struct ComplianceReport {
    bool compliant = true;
    std::vector<TypicalityInclusion> violated;
};

// Checks that every default holds at the globally minimal elements of its
// antecedent. A default whose antecedent has infinite rank yet is satisfiable
// under the strict axioms is reported as violated: no model that realizes the
// antecedent can satisfy the whole defeasible part, and the canonical domain
// satisfies it only by leaving the antecedent empty.
ComplianceReport t_compliant(const CanonicalDomain& dom, const PreferenceModel& prefs, const ModularKB& kb,
                             const RankTable& ranks, const TBoxView& tbox);

}  // namespace mcl
