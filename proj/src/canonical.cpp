#include "canonical.hpp"

#include <algorithm>
#include <unordered_map>

#include "errors.hpp"

namespace mcl {

const std::vector<std::uint32_t>& CanonicalDomain::extension(const Concept& c) const {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = ext_cache_.find(c);
    if (it != ext_cache_.end()) return it->second;
    std::vector<std::uint32_t> ids;
    for (const auto& t : types_) {
        if (sig_->eval(c, t.bits)) ids.push_back(t.id);
    }
    return ext_cache_.emplace(c, std::move(ids)).first->second;
}

Concept type_conjunction(const Signature& sig, std::uint64_t bits) {
    Concept out = Concept::top();
    bool first = true;
    for (std::size_t i = 0; i < sig.atom_count(); ++i) {
        const Concept& atom = sig.atoms()[i];
        Concept lit = ((bits >> i) & 1u) ? atom : complement(atom);
        out = first ? lit : Concept::conj(out, lit);
        first = false;
    }
    return out;
}

namespace {

void collect_atom_indices(const Signature& sig, const Concept& c, std::vector<std::uint32_t>& out) {
    switch (c.kind()) {
        case ConceptKind::Top:
        case ConceptKind::Bot:
            return;
        case ConceptKind::Not:
            collect_atom_indices(sig, c.child(), out);
            return;
        case ConceptKind::And:
        case ConceptKind::Or:
            collect_atom_indices(sig, c.left(), out);
            collect_atom_indices(sig, c.right(), out);
            return;
        case ConceptKind::Name:
        case ConceptKind::Exists:
        case ConceptKind::Forall: {
            auto ref = sig.atom_ref(c);
            if (ref) out.push_back(ref->index);
            return;
        }
    }
}

// Coherence of the quantified part of an assignment. For every positively
// assigned existential atom there must be a successor satisfying its body
// together with the bodies forced by the negatively assigned atoms over the
// same role. Propositional name bits never constrain successors beyond the
// strict axioms, so the check factors per role and memoizes on the per-role
// sign pattern.
class RoleCoherence {
public:
    RoleCoherence(const Signature& sig, const TBoxView& tbox) : tbox_(tbox), atom_list_(&sig.atoms()) {
        for (std::uint32_t i = 0; i < sig.atom_count(); ++i) {
            const Concept& a = sig.atoms()[i];
            if (a.kind() == ConceptKind::Exists) groups_[a.label()].push_back(i);
        }
    }

    bool coherent(std::uint64_t bits) {
        for (auto& [role, atoms] : groups_) {
            std::uint64_t local = 0;
            for (std::size_t k = 0; k < atoms.size(); ++k) {
                if ((bits >> atoms[k]) & 1u) local |= (1ull << k);
            }
            auto& memo = memo_[role];
            auto it = memo.find(local);
            bool ok;
            if (it != memo.end()) {
                ok = it->second;
            } else {
                ok = check_role(role, atoms, local);
                memo.emplace(local, ok);
            }
            if (!ok) return false;
        }
        return true;
    }

private:
    bool check_role(const std::string&, const std::vector<std::uint32_t>& atoms, std::uint64_t local) {
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            if (!((local >> k) & 1u)) continue;
            std::vector<Concept> conj;
            conj.push_back((*atom_list_)[atoms[k]].child());
            for (std::size_t j = 0; j < atoms.size(); ++j) {
                if ((local >> j) & 1u) continue;
                conj.push_back(complement((*atom_list_)[atoms[j]].child()));
            }
            Outcome out = tbox_.satisfiable_conj(conj);
            if (out == Outcome::ResourceLimit) throw ResourceLimitError(tbox_.node_limit());
            if (out == Outcome::Unsatisfiable) return false;
        }
        return true;
    }

    const TBoxView& tbox_;
    const std::vector<Concept>* atom_list_ = nullptr;
    std::map<std::string, std::vector<std::uint32_t>> groups_;
    std::map<std::string, std::unordered_map<std::uint64_t, bool>> memo_;
};

}  // namespace

CanonicalDomain enumerate_types(std::shared_ptr<const Signature> sig, const RankTable& ranks,
                                const TBoxView& tbox, const Limits& limits) {
    const std::size_t n = sig->atom_count();
    if (n > limits.max_atoms) throw AtomCapError(n, limits.max_atoms);
    if (n > 63) throw AtomCapError(n, 63);

    // Propositional constraints every type must satisfy: the internalized
    // strict axioms plus the materializations of the infinite-rank defaults.
    std::vector<Concept> constraints = tbox.internalized();
    for (const auto& d : ranks.infinite_defaults())
        constraints.push_back(nnf(Concept::disj(Concept::negation(d.antecedent), d.consequent)));

    std::vector<std::vector<std::uint32_t>> triggers(n);
    for (std::uint32_t k = 0; k < constraints.size(); ++k) {
        std::vector<std::uint32_t> mentioned;
        collect_atom_indices(*sig, constraints[k], mentioned);
        std::sort(mentioned.begin(), mentioned.end());
        mentioned.erase(std::unique(mentioned.begin(), mentioned.end()), mentioned.end());
        if (mentioned.empty()) {
            if (sig->eval_partial(constraints[k], 0, 0) == 0) return CanonicalDomain(sig, {});
            continue;
        }
        for (auto a : mentioned) triggers[a].push_back(k);
    }

    RoleCoherence roles(*sig, tbox);

    std::vector<DomainType> accepted;
    std::uint64_t bits = 0;
    std::uint64_t defined = 0;

    auto consistent_at = [&](std::size_t depth) {
        for (auto k : triggers[depth]) {
            if (sig->eval_partial(constraints[k], bits, defined) == 0) return false;
        }
        return true;
    };

    // Depth-first over atom indices, false branch first, so type ids follow
    // ascending bit patterns.
    auto recurse = [&](auto&& self, std::size_t depth) -> void {
        if (depth == n) {
            if (roles.coherent(bits)) accepted.push_back({static_cast<std::uint32_t>(accepted.size()), bits});
            return;
        }
        for (std::uint64_t v = 0; v <= 1; ++v) {
            bits = (bits & ~(1ull << depth)) | (v << depth);
            defined |= (1ull << depth);
            if (consistent_at(depth)) self(self, depth + 1);
            defined &= ~(1ull << depth);
        }
    };
    recurse(recurse, 0);
    return CanonicalDomain(sig, std::move(accepted));
}

}  // namespace mcl
