#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "kb.hpp"

namespace mcl {

struct Limits {
    std::size_t max_atoms = 20;
    std::uint64_t max_nodes = 100000;
};

enum class Outcome { Satisfiable, Unsatisfiable, ResourceLimit };

// A finite relational structure extracted from a clash-free, saturated
// completion graph. Blocked nodes are folded back onto their blockers, so the
// structure is a genuine model and can be checked independently.
struct FiniteModel {
    struct Node {
        std::vector<Concept> label;  // sorted, NNF
        std::vector<std::pair<std::string, std::uint32_t>> edges;
        bool has(const Concept& c) const;
    };
    std::vector<Node> nodes;
    std::vector<std::uint32_t> roots;
    std::map<std::string, std::uint32_t> individuals;
};

struct TableauResult {
    Outcome outcome;
    std::optional<FiniteModel> witness;  // present iff satisfiable
};

// Strict TBox with each axiom internalized as a disjunction that must hold at
// every element. Satisfiability results are memoized per view; the cache is
// guarded so concurrent queries may share one view.
class TBoxView {
public:
    TBoxView() = default;
    explicit TBoxView(std::vector<StrictInclusion> axioms, std::uint64_t node_limit = 100000);

    const std::vector<StrictInclusion>& axioms() const { return axioms_; }
    const std::vector<Concept>& internalized() const { return internalized_; }
    std::uint64_t node_limit() const { return node_limit_; }

    // Memoized; the witness of the underlying run is not retained.
    Outcome satisfiable(const Concept& c) const;
    Outcome satisfiable_conj(const std::vector<Concept>& cs) const;
    // Full run with witness, not memoized.
    TableauResult satisfiable_model(const Concept& c) const;

private:
    std::vector<StrictInclusion> axioms_;
    std::vector<Concept> internalized_;
    std::uint64_t node_limit_ = 100000;
    mutable std::unordered_map<std::string, Outcome> cache_;
    mutable std::mutex cache_mutex_;
};

// Concept satisfiability with respect to the strict axioms. The result is
// explicit about resource exhaustion; it never degrades into a wrong boolean.
TableauResult is_satisfiable(const Concept& c, const TBoxView& tbox);

// TBox subsumption; throws ResourceLimitError when the tableau gives up.
bool subsumes(const TBoxView& tbox, const Concept& c, const Concept& d);

// Classical consistency of the strict axioms plus the ABox (tableau seeded
// with the named individuals). Throws ResourceLimitError on the cap.
TableauResult kb_consistent(const TBoxView& tbox, const std::vector<Assertion>& abox);

// Low-level entry: run the tableau on explicit root labels/edges.
TableauResult run_tableau(const TBoxView& tbox, const std::vector<std::vector<Concept>>& root_labels,
                          const std::vector<std::tuple<std::uint32_t, std::string, std::uint32_t>>& root_edges,
                          std::uint64_t node_limit);

// Independent evaluation of a concept at a node of a finite model. Concept
// names hold exactly when they appear in the node label.
bool model_eval(const FiniteModel& m, std::uint32_t node, const Concept& c);

// True when every axiom holds at every node of the model.
bool model_satisfies_tbox(const FiniteModel& m, const std::vector<StrictInclusion>& axioms);

// True when every node realizes every concept of its own label.
bool model_realizes_labels(const FiniteModel& m);

}  // namespace mcl
