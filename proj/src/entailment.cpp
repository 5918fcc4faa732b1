#include "entailment.hpp"

#include <algorithm>
#include <chrono>

#include "errors.hpp"

namespace mcl {

namespace {

std::int64_t now_millis() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(steady_clock::now().time_since_epoch()).count();
}

}  // namespace

Session::Session(ModularKB kb, const DefeasibleQuery& query, const Limits& limits) : kb_(std::move(kb)) {
    tbox_ = std::make_shared<TBoxView>(kb_.strict, limits.max_nodes);
    TableauResult consistent = kb_consistent(*tbox_, kb_.abox);
    if (consistent.outcome == Outcome::Unsatisfiable) throw InconsistentKbError();

    Query q{query};
    sig_ = std::make_shared<Signature>(build_signature(kb_, &q));
    RankTable table = compute_ranks(kb_, *tbox_);
    ranking_ = std::make_shared<RankingEngine>(std::move(table), tbox_);
    domain_ = std::make_shared<CanonicalDomain>(enumerate_types(sig_, ranking_->table(), *tbox_, limits));
    prefs_ = std::make_shared<PreferenceModel>(*domain_, kb_, ranking_->table());
}

QueryVerdict Session::minimal_subset_verdict(const DefeasibleQuery& q, Mode mode,
                                             const std::vector<std::uint32_t>& minimal_antecedent) const {
    QueryVerdict v;
    v.mode = mode;
    v.entailed = true;
    v.stats.types = domain_->size();
    v.stats.atoms = sig_->atom_count();
    for (auto id : minimal_antecedent) {
        if (!domain_->member(id, q.consequent)) {
            v.entailed = false;
            const auto& t = domain_->types()[id];
            Witness w{t.id, t.bits, {}};
            for (std::size_t i = 0; i < sig_->atom_count(); ++i)
                w.atom_bits.emplace_back(sig_->atoms()[i].str(), ((t.bits >> i) & 1u) != 0);
            v.witness = std::move(w);
            break;
        }
    }
    return v;
}

QueryVerdict Session::answer_mcl(const DefeasibleQuery& q) const {
    std::int64_t start = now_millis();
    const auto& ext = domain_->extension(q.antecedent);
    QueryVerdict v = minimal_subset_verdict(q, Mode::Mcl, prefs_->global_minimal(ext));
    v.stats.millis = now_millis() - start;
    return v;
}

ComplianceReport Session::compliance() const {
    return t_compliant(*domain_, *prefs_, kb_, ranking_->table(), *tbox_);
}

QueryVerdict Session::answer_mclt(const DefeasibleQuery& q) const {
    std::int64_t start = now_millis();
    ComplianceReport report = compliance();
    if (!report.compliant) {
        // No compliant model exists at the type level; the query holds over
        // the empty model class and is reported as vacuous, never silently.
        QueryVerdict v;
        v.mode = Mode::Mclt;
        v.entailed = true;
        v.vacuous = true;
        v.t_compliance = TComplianceState::Violated;
        v.violated_inclusions = report.violated;
        v.stats.types = domain_->size();
        v.stats.atoms = sig_->atom_count();
        v.stats.millis = now_millis() - start;
        return v;
    }
    const auto& ext = domain_->extension(q.antecedent);
    QueryVerdict v = minimal_subset_verdict(q, Mode::Mclt, prefs_->global_minimal(ext));
    v.t_compliance = TComplianceState::Compliant;
    v.stats.millis = now_millis() - start;
    return v;
}

QueryVerdict Session::answer_module(const std::string& module_name, const DefeasibleQuery& q) const {
    std::int64_t start = now_millis();
    std::size_t idx = 0;
    bool found = false;
    for (std::size_t i = 0; i < kb_.modules.size(); ++i) {
        if (kb_.modules[i].name == module_name) {
            idx = i;
            found = true;
            break;
        }
    }
    if (!found) throw UnknownModuleError(module_name);
    const auto& ext = domain_->extension(q.antecedent);
    QueryVerdict v = minimal_subset_verdict(q, Mode::Module, prefs_->module_minimal(idx, ext));
    v.module_name = module_name;
    v.stats.millis = now_millis() - start;
    return v;
}

QueryVerdict entails_mcl(const ModularKB& kb, const DefeasibleQuery& q, const Limits& limits) {
    return Session(kb, q, limits).answer_mcl(q);
}

QueryVerdict entails_mclt(const ModularKB& kb, const DefeasibleQuery& q, const Limits& limits) {
    return Session(kb, q, limits).answer_mclt(q);
}

QueryVerdict entails_module(const ModularKB& kb, const std::string& module_name, const DefeasibleQuery& q,
                            const Limits& limits) {
    return Session(kb, q, limits).answer_module(module_name, q);
}

bool entails_classical(const ModularKB& kb, const Query& q, const Limits& limits) {
    TBoxView tbox(kb.strict, limits.max_nodes);
    if (const auto* sq = std::get_if<StrictInclusion>(&q)) {
        // Entailed iff asserting a fresh counterexample individual clashes.
        std::vector<Assertion> abox = kb.abox;
        abox.push_back(ConceptAssertion{Concept::conj(sq->lhs, Concept::negation(sq->rhs)), "@counterexample"});
        return kb_consistent(tbox, abox).outcome == Outcome::Unsatisfiable;
    }
    if (const auto* aq = std::get_if<Assertion>(&q)) {
        if (const auto* ca = std::get_if<ConceptAssertion>(aq)) {
            std::vector<Assertion> abox = kb.abox;
            abox.push_back(ConceptAssertion{Concept::negation(ca->concept_expr), ca->individual});
            return kb_consistent(tbox, abox).outcome == Outcome::Unsatisfiable;
        }
        const auto& ra = std::get<RoleAssertion>(*aq);
        if (kb_consistent(tbox, kb.abox).outcome == Outcome::Unsatisfiable) return true;
        for (const auto& a : kb.abox) {
            if (const auto* r = std::get_if<RoleAssertion>(&a)) {
                if (r->role == ra.role && r->subject == ra.subject && r->object == ra.object) return true;
            }
        }
        return false;
    }
    throw BadQueryError("classical entailment expects an inclusion or an assertion");
}

}  // namespace mcl
