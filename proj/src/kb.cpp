#include "kb.hpp"

#include <algorithm>

#include "errors.hpp"

namespace mcl {

std::vector<TypicalityInclusion> ModularKB::all_defaults() const {
    std::vector<TypicalityInclusion> out;
    for (const auto& m : modules) {
        for (const auto& d : m.defaults) {
            if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
        }
    }
    return out;
}

std::vector<std::string> ModularKB::modules_containing(const TypicalityInclusion& d) const {
    std::vector<std::string> out;
    for (const auto& m : modules) {
        if (std::find(m.defaults.begin(), m.defaults.end(), d) != m.defaults.end()) out.push_back(m.name);
    }
    return out;
}

const DefeasibleModule* ModularKB::find_module(const std::string& name) const {
    for (const auto& m : modules) {
        if (m.name == name) return &m;
    }
    return nullptr;
}

std::vector<Diagnostic> validate(const ModularKB& kb) {
    std::vector<Diagnostic> out;
    std::vector<TypicalityInclusion> seen;
    for (const auto& d : kb.all_defaults()) {
        auto homes = kb.modules_containing(d);
        if (homes.size() > 1) {
            std::string msg = "default " + d.str() + " is shared by modules";
            for (const auto& h : homes) msg += " " + h;
            out.push_back({Diagnostic::Severity::Info, msg});
        }
    }
    for (const auto& m : kb.modules) {
        if (m.defaults.empty())
            out.push_back({Diagnostic::Severity::Warning, "module " + m.name + " has no defaults"});
        if (m.subject.kind() == ConceptKind::Bot)
            out.push_back({Diagnostic::Severity::Warning, "module " + m.name + " has an unsatisfiable subject"});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Signature construction
// ---------------------------------------------------------------------------

void Signature::add_atom_for(const Concept& c) {
    if (c.kind() == ConceptKind::Name) {
        if (!atom_index_.count(c)) {
            atom_index_.emplace(c, static_cast<std::uint32_t>(atoms_.size()));
            atoms_.push_back(c);
        }
        return;
    }
    if (c.is_quantified()) {
        Concept canon = nnf(c);
        Concept rep = canon.kind() == ConceptKind::Exists ? canon : complement(canon);
        if (!atom_index_.count(rep)) {
            atom_index_.emplace(rep, static_cast<std::uint32_t>(atoms_.size()));
            atoms_.push_back(rep);
        }
    }
}

void Signature::add_concept(const Concept& c) {
    if (concept_index_.count(c)) return;
    concept_index_.emplace(c, static_cast<std::uint32_t>(concepts_.size()));
    concepts_.push_back(c);
}

Signature build_signature(const ModularKB& kb, const Query* query) {
    std::vector<Concept> roots;
    for (const auto& ax : kb.strict) {
        roots.push_back(ax.lhs);
        roots.push_back(ax.rhs);
    }
    for (const auto& m : kb.modules) {
        roots.push_back(m.subject);
        for (const auto& d : m.defaults) {
            roots.push_back(d.antecedent);
            roots.push_back(d.consequent);
        }
    }
    for (const auto& a : kb.abox) {
        if (const auto* ca = std::get_if<ConceptAssertion>(&a)) roots.push_back(ca->concept_expr);
    }
    if (query) {
        if (const auto* dq = std::get_if<DefeasibleQuery>(query)) {
            roots.push_back(dq->antecedent);
            roots.push_back(dq->consequent);
        } else if (const auto* sq = std::get_if<StrictInclusion>(query)) {
            roots.push_back(sq->lhs);
            roots.push_back(sq->rhs);
        } else if (const auto* aq = std::get_if<Assertion>(query)) {
            if (const auto* ca = std::get_if<ConceptAssertion>(aq)) roots.push_back(ca->concept_expr);
        }
    }

    Signature sig;
    std::vector<Concept> subs;
    for (const auto& r : roots) {
        subs.clear();
        collect_subconcepts(r, subs);
        for (const auto& s : subs) sig.add_concept(s);
    }
    // One complement pass over the snapshot just built.
    const std::size_t base = sig.concepts_.size();
    for (std::size_t i = 0; i < base; ++i) sig.add_concept(complement(sig.concepts_[i]));
    for (const auto& c : sig.concepts_) sig.add_atom_for(c);
    return sig;
}

std::optional<Signature::AtomRef> Signature::atom_ref(const Concept& c) const {
    if (c.kind() == ConceptKind::Name) {
        auto it = atom_index_.find(c);
        if (it == atom_index_.end()) return std::nullopt;
        return AtomRef{it->second, true};
    }
    Concept canon = nnf(c);
    bool positive = canon.kind() == ConceptKind::Exists;
    Concept rep = positive ? canon : complement(canon);
    auto it = atom_index_.find(rep);
    if (it == atom_index_.end()) return std::nullopt;
    return AtomRef{it->second, positive};
}

bool Signature::eval(const Concept& c, std::uint64_t bits) const {
    switch (c.kind()) {
        case ConceptKind::Top:
            return true;
        case ConceptKind::Bot:
            return false;
        case ConceptKind::Not:
            return !eval(c.child(), bits);
        case ConceptKind::And:
            return eval(c.left(), bits) && eval(c.right(), bits);
        case ConceptKind::Or:
            return eval(c.left(), bits) || eval(c.right(), bits);
        case ConceptKind::Name:
        case ConceptKind::Exists:
        case ConceptKind::Forall: {
            auto ref = atom_ref(c);
            if (!ref) throw UnknownSubconceptError(c.str());
            bool bit = (bits >> ref->index) & 1u;
            return ref->positive ? bit : !bit;
        }
    }
    return false;  // unreachable
}

int Signature::eval_partial(const Concept& c, std::uint64_t bits, std::uint64_t defined) const {
    switch (c.kind()) {
        case ConceptKind::Top:
            return 1;
        case ConceptKind::Bot:
            return 0;
        case ConceptKind::Not: {
            int v = eval_partial(c.child(), bits, defined);
            return v == 2 ? 2 : 1 - v;
        }
        case ConceptKind::And: {
            int a = eval_partial(c.left(), bits, defined);
            if (a == 0) return 0;
            int b = eval_partial(c.right(), bits, defined);
            if (b == 0) return 0;
            return (a == 1 && b == 1) ? 1 : 2;
        }
        case ConceptKind::Or: {
            int a = eval_partial(c.left(), bits, defined);
            if (a == 1) return 1;
            int b = eval_partial(c.right(), bits, defined);
            if (b == 1) return 1;
            return (a == 0 && b == 0) ? 0 : 2;
        }
        case ConceptKind::Name:
        case ConceptKind::Exists:
        case ConceptKind::Forall: {
            auto ref = atom_ref(c);
            if (!ref) throw UnknownSubconceptError(c.str());
            if (!((defined >> ref->index) & 1u)) return 2;
            bool bit = (bits >> ref->index) & 1u;
            return (ref->positive ? bit : !bit) ? 1 : 0;
        }
    }
    return 2;  // unreachable
}

}  // namespace mcl
