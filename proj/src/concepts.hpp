#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace mcl {

enum class ConceptKind : std::uint8_t { Top, Bot, Name, Not, And, Or, Exists, Forall };

// Immutable concept tree with value semantics. Copies share nodes, equality
// and ordering are structural, and every node caches its hash so set lookups
// stay cheap.
class Concept {
public:
    Concept();  // Top

    static Concept top();
    static Concept bot();
    static Concept name(std::string n);
    static Concept negation(Concept c);
    static Concept conj(Concept lhs, Concept rhs);
    static Concept disj(Concept lhs, Concept rhs);
    static Concept exists(std::string role, Concept body);
    static Concept forall(std::string role, Concept body);

    ConceptKind kind() const;
    // Concept name for Name nodes, role name for Exists/Forall nodes.
    const std::string& label() const;
    const Concept& child() const;  // Not/Exists/Forall
    const Concept& left() const;
    const Concept& right() const;

    bool is_quantified() const { return kind() == ConceptKind::Exists || kind() == ConceptKind::Forall; }

    std::size_t hash() const;
    std::string str() const;  // canonical printer; parseable back to the same tree

    friend bool operator==(const Concept& a, const Concept& b);
    friend bool operator!=(const Concept& a, const Concept& b) { return !(a == b); }
    std::strong_ordering compare(const Concept& other) const;

private:
    struct Node;
    struct Leaf {};
    explicit Concept(Leaf) : node_(nullptr) {}
    explicit Concept(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Concept make(ConceptKind k, std::string label, Concept l, Concept r);

    std::shared_ptr<const Node> node_;
};

struct Concept::Node {
    ConceptKind kind;
    std::string label;
    Concept left;
    Concept right;
    std::size_t hash = 0;
    Node(ConceptKind k, std::string lbl, Concept l, Concept r);
};

inline ConceptKind Concept::kind() const { return node_->kind; }
inline const std::string& Concept::label() const { return node_->label; }
inline const Concept& Concept::child() const { return node_->left; }
inline const Concept& Concept::left() const { return node_->left; }
inline const Concept& Concept::right() const { return node_->right; }
inline std::size_t Concept::hash() const { return node_ ? node_->hash : 0; }

struct ConceptHash {
    std::size_t operator()(const Concept& c) const { return c.hash(); }
};
struct ConceptLess {
    bool operator()(const Concept& a, const Concept& b) const { return a.compare(b) < 0; }
};

// Negation normal form: negation pushed onto concept names only.
Concept nnf(const Concept& c);
// nnf(not c); the representation of complements throughout the signature.
Concept complement(const Concept& c);

// All subconcepts of c including c itself, preorder, duplicates kept.
void collect_subconcepts(const Concept& c, std::vector<Concept>& out);

// Concept and role names occurring in c (deduplicated, sorted).
std::vector<std::string> concept_names(const Concept& c);
std::vector<std::string> role_names(const Concept& c);

}  // namespace mcl
