#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "kb.hpp"
#include "tableau.hpp"

namespace mcl {

// A rank is a natural number or infinite (nullopt).
using Rank = std::optional<int>;
inline bool rank_is_infinite(const Rank& r) { return !r.has_value(); }

// The conjunction of the material counterparts of a set of defaults; the
// empty set materializes to Top.
Concept materialize(std::span<const TypicalityInclusion> defaults);

// A concept is exceptional for a default set when it cannot hold together
// with the set's materialization under the strict axioms.
// Throws ResourceLimitError when the tableau gives up.
bool exceptional(const TBoxView& tbox, std::span<const TypicalityInclusion> defaults, const Concept& c);

struct RankTable {
    // Exceptionality levels E_0 ⊇ E_1 ⊇ ..., ending at the fixpoint set.
    std::vector<std::vector<TypicalityInclusion>> levels;
    // Ranks of every default antecedent and module subject.
    std::map<Concept, Rank, ConceptLess> concept_ranks;
    std::vector<std::pair<TypicalityInclusion, Rank>> default_ranks;
    // One past the highest finite default rank; zero when no default has a
    // finite rank. This is the width of every violation tuple.
    int order = 0;

    Rank rank_of_default(const TypicalityInclusion& d) const;
    const std::vector<TypicalityInclusion>& fixpoint() const { return levels.back(); }
    std::vector<TypicalityInclusion> infinite_defaults() const;
};

// Computes the exceptionality fixpoint and the ranks of all default
// antecedents and module subjects. Ranks are driven by the strict axioms
// only; assertions enter defeasible reasoning solely through the global
// consistency precondition.
RankTable compute_ranks(const ModularKB& kb, const TBoxView& tbox);

// Rank lookups for arbitrary concepts against a fixed table, memoized.
// Safe for concurrent use.
class RankingEngine {
public:
    RankingEngine(RankTable table, std::shared_ptr<const TBoxView> tbox)
        : table_(std::move(table)), tbox_(std::move(tbox)) {}

    const RankTable& table() const { return table_; }
    const TBoxView& tbox() const { return *tbox_; }

    Rank concept_rank(const Concept& c) const;

private:
    RankTable table_;
    std::shared_ptr<const TBoxView> tbox_;
    mutable std::map<Concept, Rank, ConceptLess> memo_;
    mutable std::mutex memo_mutex_;
};

}  // namespace mcl
