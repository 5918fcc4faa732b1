#pragma once

#include <string>
#include <vector>

#include "entailment.hpp"
#include "kb.hpp"
#include "prop_oracle.hpp"
#include "ranking.hpp"

namespace mcl {

// Stable JSON renderings of the library outputs. Keys are emitted in sorted
// order, so identical inputs serialize to identical bytes (the millis field
// of the stats block is the only value that depends on the clock).

std::string verdict_to_json(const QueryVerdict& v);
std::string rank_table_to_json(const RankTable& table, const std::vector<std::pair<Concept, Rank>>& concept_ranks,
                               const ModularKB& kb);
std::string check_to_json(bool consistent, const std::vector<Diagnostic>& diagnostics);
std::string model_to_json(const Session& session);
std::string oracle_report_to_json(const oracle::CrossCheckReport& report);

std::string mode_to_string(Mode mode, const std::string& module_name);

}  // namespace mcl
