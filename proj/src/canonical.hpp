#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "kb.hpp"
#include "ranking.hpp"
#include "tableau.hpp"

namespace mcl {

// One element of the canonical domain: a total truth assignment over the
// signature atoms. Bit i of `bits` is the membership of atoms()[i]; the
// membership of every other signature concept is derived boolean-wise.
struct DomainType {
    std::uint32_t id;
    std::uint64_t bits;
};

class CanonicalDomain {
public:
    CanonicalDomain(std::shared_ptr<const Signature> sig, std::vector<DomainType> types)
        : sig_(std::move(sig)), types_(std::move(types)) {}
    // Moves drop the extension cache; it refills on demand.
    CanonicalDomain(CanonicalDomain&& o) noexcept : sig_(std::move(o.sig_)), types_(std::move(o.types_)) {}

    const Signature& sig() const { return *sig_; }
    std::shared_ptr<const Signature> sig_ptr() const { return sig_; }
    const std::vector<DomainType>& types() const { return types_; }
    std::size_t size() const { return types_.size(); }

    bool member(const DomainType& t, const Concept& c) const { return sig_->eval(c, t.bits); }
    bool member(std::uint32_t type_index, const Concept& c) const { return member(types_[type_index], c); }

    // Indices of the types realizing c, ascending. Cached per concept.
    const std::vector<std::uint32_t>& extension(const Concept& c) const;

private:
    std::shared_ptr<const Signature> sig_;
    std::vector<DomainType> types_;
    mutable std::map<Concept, std::vector<std::uint32_t>, ConceptLess> ext_cache_;
    mutable std::mutex cache_mutex_;
};

// The conjunction a type stands for: each atom or its complement, by sign.
Concept type_conjunction(const Signature& sig, std::uint64_t bits);

// Enumerates every coherent type over the signature atoms: backtracking over
// the atoms with three-valued pruning against the strict axioms and the
// materializations of the infinite-rank defaults (both already cover every
// knowledge-base concept), followed by a role-level coherence check for the
// quantified atoms. The result is exactly the set of full assignments whose
// conjunction, together with the infinite-rank materializations, is
// satisfiable under the strict axioms.
//
// Throws AtomCapError beyond `limits.max_atoms` and propagates tableau
// resource exhaustion.
CanonicalDomain enumerate_types(std::shared_ptr<const Signature> sig, const RankTable& ranks,
                                const TBoxView& tbox, const Limits& limits);

}  // namespace mcl
