#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "canonical.hpp"
#include "kb.hpp"
#include "preference.hpp"
#include "ranking.hpp"
#include "tableau.hpp"

namespace mcl {

enum class Mode { Mcl, Mclt, Module, Classical };

enum class TComplianceState { NotApplicable, Compliant, Violated };

struct Witness {
    std::uint32_t type_id;
    std::uint64_t bits;
    // Canonical atom string -> truth value, in signature atom order.
    std::vector<std::pair<std::string, bool>> atom_bits;
};

struct QueryVerdict {
    bool entailed = false;
    // True when the T-compliant model class is empty and the verdict holds
    // only for that reason.
    bool vacuous = false;
    Mode mode = Mode::Mcl;
    std::string module_name;
    TComplianceState t_compliance = TComplianceState::NotApplicable;
    std::vector<TypicalityInclusion> violated_inclusions;
    std::optional<Witness> witness;
    struct Stats {
        std::size_t types = 0;
        std::size_t atoms = 0;
        std::int64_t millis = 0;
    } stats;
};

// One reasoning session: a knowledge base plus one query, with the signature,
// ranks, canonical domain and preference orders built for exactly that pair.
// Immutable once constructed; verdict calls may run concurrently.
class Session {
public:
    Session(ModularKB kb, const DefeasibleQuery& query, const Limits& limits);

    const ModularKB& kb() const { return kb_; }
    const Signature& sig() const { return *sig_; }
    const CanonicalDomain& domain() const { return *domain_; }
    const PreferenceModel& preferences() const { return *prefs_; }
    const RankingEngine& ranking() const { return *ranking_; }
    const TBoxView& tbox() const { return *tbox_; }

    QueryVerdict answer_mcl(const DefeasibleQuery& q) const;
    QueryVerdict answer_mclt(const DefeasibleQuery& q) const;
    QueryVerdict answer_module(const std::string& module_name, const DefeasibleQuery& q) const;
    ComplianceReport compliance() const;

private:
    QueryVerdict minimal_subset_verdict(const DefeasibleQuery& q, Mode mode,
                                        const std::vector<std::uint32_t>& minimal_antecedent) const;

    ModularKB kb_;
    std::shared_ptr<const TBoxView> tbox_;
    std::shared_ptr<const Signature> sig_;
    std::shared_ptr<const CanonicalDomain> domain_;
    std::shared_ptr<const PreferenceModel> prefs_;
    std::shared_ptr<const RankingEngine> ranking_;
};

// Convenience single-shot entry points. Each builds a fresh session so the
// signature always covers the query. Preconditions: the strict axioms plus
// assertions must be classically consistent (InconsistentKbError otherwise).
QueryVerdict entails_mcl(const ModularKB& kb, const DefeasibleQuery& q, const Limits& limits = {});
QueryVerdict entails_mclt(const ModularKB& kb, const DefeasibleQuery& q, const Limits& limits = {});
QueryVerdict entails_module(const ModularKB& kb, const std::string& module_name, const DefeasibleQuery& q,
                            const Limits& limits = {});

// Classical entailment from the strict axioms and assertions alone; the
// defeasible part is ignored. Role assertions are entailed only when present
// verbatim (or the knowledge base is inconsistent).
bool entails_classical(const ModularKB& kb, const Query& q, const Limits& limits = {});

}  // namespace mcl
