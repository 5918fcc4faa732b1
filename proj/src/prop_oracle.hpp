#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kb.hpp"

namespace mcl::oracle {

// Brute-force propositional rational closure and lexicographic closure over
// explicit worlds. This module is a cross-validation oracle for the main
// engine on the role-free fragment and deliberately shares none of its
// reasoning machinery: formulas are evaluated by truth tables, exceptionality
// by world enumeration, and the world order by its own tuple comparison.

struct PropKB {
    std::vector<std::string> names;                    // proposition letters
    std::vector<std::pair<Concept, Concept>> strict;   // lhs -> rhs constraints
    std::vector<std::pair<Concept, Concept>> defaults; // conditional pairs
};

// Builds a PropKB from a role-free modular KB with extra query names merged
// in; throws BadQueryError when the KB has roles or assertions.
PropKB flatten(const ModularKB& kb, const std::vector<Concept>& extra);

inline constexpr std::size_t kMaxPropAtoms = 22;

struct PropRankTable {
    std::vector<std::optional<int>> default_rank;  // nullopt = infinite
    int order = 0;                                 // one past the highest finite rank
};

// Iterated exceptionality by truth-table entailment from the strict formulas
// plus the material implications. Throws AtomCapError above kMaxPropAtoms and
// BadQueryError when the strict part is unsatisfiable.
PropRankTable prop_ranks(const PropKB& kb);

// Lexicographic closure: orders the strict-satisfying worlds by their tuple
// of violated-default counts per descending rank (infinite-rank defaults act
// as hard constraints) and checks that every minimal antecedent world
// satisfies the consequent.
bool lex_entails(const PropKB& kb, const Concept& antecedent, const Concept& consequent);

// World-level pieces exposed for property tests.
bool world_eval(const PropKB& kb, const Concept& c, std::uint32_t world);
std::vector<std::uint32_t> strict_worlds(const PropKB& kb);
std::vector<int> violation_tuple(const PropKB& kb, const PropRankTable& ranks, std::uint32_t world);
bool tuple_less(const std::vector<int>& a, const std::vector<int>& b);

struct CrossCheckItem {
    Concept antecedent;
    Concept consequent;
    bool engine = false;
    bool oracle = false;
};

struct CrossCheckReport {
    std::vector<CrossCheckItem> items;
    std::size_t disagreements = 0;
    bool ranks_agree = true;
};

// Wraps the propositional KB as a single-module knowledge base with subject
// Top, runs the main engine on each query, and compares with lex_entails.
// Also compares the two rank constructions default by default.
CrossCheckReport cross_check(const PropKB& kb, const std::vector<std::pair<Concept, Concept>>& queries);

}  // namespace mcl::oracle
