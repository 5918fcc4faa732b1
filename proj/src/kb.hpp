#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "concepts.hpp"

namespace mcl {

struct StrictInclusion {
    Concept lhs;
    Concept rhs;
    friend bool operator==(const StrictInclusion& a, const StrictInclusion& b) {
        return a.lhs == b.lhs && a.rhs == b.rhs;
    }
    std::string str() const { return lhs.str() + " <= " + rhs.str(); }
};

// A defeasible inclusion: "normal instances of the antecedent satisfy the
// consequent". Both sides are plain concepts; the typicality wrapper is
// implied by the position.
struct TypicalityInclusion {
    Concept antecedent;
    Concept consequent;
    friend bool operator==(const TypicalityInclusion& a, const TypicalityInclusion& b) {
        return a.antecedent == b.antecedent && a.consequent == b.consequent;
    }
    std::strong_ordering compare(const TypicalityInclusion& o) const {
        if (auto c = antecedent.compare(o.antecedent); c != 0) return c;
        return consequent.compare(o.consequent);
    }
    std::string str() const { return "T(" + antecedent.str() + ") <= " + consequent.str(); }
};

struct TypicalityLess {
    bool operator()(const TypicalityInclusion& a, const TypicalityInclusion& b) const { return a.compare(b) < 0; }
};

struct DefeasibleModule {
    std::string name;
    Concept subject;
    std::vector<TypicalityInclusion> defaults;  // duplicate-free, file order
};

struct ConceptAssertion {
    Concept concept_expr;
    std::string individual;
};

struct RoleAssertion {
    std::string role;
    std::string subject;
    std::string object;
};

using Assertion = std::variant<ConceptAssertion, RoleAssertion>;

struct ModularKB {
    std::vector<StrictInclusion> strict;
    std::vector<DefeasibleModule> modules;
    std::vector<Assertion> abox;

    // The global defeasible set: union of all module defaults, duplicate-free,
    // in first-occurrence order.
    std::vector<TypicalityInclusion> all_defaults() const;
    // Names of every module that contains the given inclusion.
    std::vector<std::string> modules_containing(const TypicalityInclusion& d) const;
    const DefeasibleModule* find_module(const std::string& name) const;
};

struct DefeasibleQuery {
    Concept antecedent;
    Concept consequent;
    std::string str() const { return "T(" + antecedent.str() + ") <= " + consequent.str(); }
};

using Query = std::variant<DefeasibleQuery, StrictInclusion, Assertion>;

struct Diagnostic {
    enum class Severity { Info, Warning };
    Severity severity;
    std::string message;
};

// Structural sanity report. Never rejects a grammatically valid KB.
std::vector<Diagnostic> validate(const ModularKB& kb);

// ---------------------------------------------------------------------------
// Signature: the closure of all concepts occurring in the KB or the query,
// together with their complements (stored in negation normal form). The
// independent atoms of the signature are the concept names plus one
// representative per complementary pair of quantified concepts (the
// existential form); every other membership bit is derived boolean-wise.
// ---------------------------------------------------------------------------

class Signature {
public:
    const std::vector<Concept>& concepts() const { return concepts_; }
    const std::vector<Concept>& atoms() const { return atoms_; }
    std::size_t atom_count() const { return atoms_.size(); }

    // Index of the atom deciding membership of a name or quantified concept.
    // positive == false means the concept is the complement of the stored atom.
    struct AtomRef {
        std::uint32_t index;
        bool positive;
    };
    std::optional<AtomRef> atom_ref(const Concept& c) const;

    // Membership of `c` under a total atom assignment (bit i of `bits` is the
    // truth value of atoms()[i]). Throws UnknownSubconceptError when `c` uses
    // a name or quantified concept outside this signature.
    bool eval(const Concept& c, std::uint64_t bits) const;

    // Three-valued evaluation against a partial assignment; atoms with a zero
    // `defined` bit are unknown. Returns 0 (false), 1 (true) or 2 (unknown).
    int eval_partial(const Concept& c, std::uint64_t bits, std::uint64_t defined) const;

    friend Signature build_signature(const ModularKB& kb, const Query* query);

private:
    void add_concept(const Concept& c);
    void add_atom_for(const Concept& c);

    std::vector<Concept> concepts_;
    std::vector<Concept> atoms_;
    std::unordered_map<Concept, std::uint32_t, ConceptHash> concept_index_;
    std::unordered_map<Concept, std::uint32_t, ConceptHash> atom_index_;
};

Signature build_signature(const ModularKB& kb, const Query* query);

}  // namespace mcl
