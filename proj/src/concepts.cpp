#include "concepts.hpp"

#include <algorithm>
#include <cassert>
#include <set>

namespace mcl {

namespace {

std::size_t hash_combine(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Concept::Node::Node(ConceptKind k, std::string lbl, Concept l, Concept r)
    : kind(k), label(std::move(lbl)), left(std::move(l)), right(std::move(r)) {
    std::size_t h = static_cast<std::size_t>(kind) + 0x51ed;
    h = hash_combine(h, std::hash<std::string>{}(label));
    h = hash_combine(h, left.hash());
    h = hash_combine(h, right.hash());
    hash = h;
}

Concept Concept::make(ConceptKind k, std::string label, Concept l, Concept r) {
    return Concept(std::make_shared<const Node>(k, std::move(label), std::move(l), std::move(r)));
}

Concept::Concept() { *this = top(); }

Concept Concept::top() {
    static const Concept t = make(ConceptKind::Top, "", Concept(Leaf{}), Concept(Leaf{}));
    return t;
}

Concept Concept::bot() {
    static const Concept b = make(ConceptKind::Bot, "", Concept(Leaf{}), Concept(Leaf{}));
    return b;
}

Concept Concept::name(std::string n) {
    assert(!n.empty());
    return make(ConceptKind::Name, std::move(n), Concept(Leaf{}), Concept(Leaf{}));
}

Concept Concept::negation(Concept c) {
    return make(ConceptKind::Not, "", std::move(c), Concept(Leaf{}));
}

Concept Concept::conj(Concept lhs, Concept rhs) {
    return make(ConceptKind::And, "", std::move(lhs), std::move(rhs));
}

Concept Concept::disj(Concept lhs, Concept rhs) {
    return make(ConceptKind::Or, "", std::move(lhs), std::move(rhs));
}

Concept Concept::exists(std::string role, Concept body) {
    assert(!role.empty());
    return make(ConceptKind::Exists, std::move(role), std::move(body), Concept(Leaf{}));
}

Concept Concept::forall(std::string role, Concept body) {
    assert(!role.empty());
    return make(ConceptKind::Forall, std::move(role), std::move(body), Concept(Leaf{}));
}

bool operator==(const Concept& a, const Concept& b) {
    if (a.node_ == b.node_) return true;
    if (!a.node_ || !b.node_) return false;
    if (a.hash() != b.hash()) return false;
    if (a.node_->kind != b.node_->kind || a.node_->label != b.node_->label) return false;
    return a.node_->left == b.node_->left && a.node_->right == b.node_->right;
}

std::strong_ordering Concept::compare(const Concept& other) const {
    if (node_ == other.node_) return std::strong_ordering::equal;
    if (!node_) return std::strong_ordering::less;
    if (!other.node_) return std::strong_ordering::greater;
    if (auto c = node_->kind <=> other.node_->kind; c != 0) return c;
    if (auto c = node_->label.compare(other.node_->label); c != 0)
        return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (auto c = node_->left.compare(other.node_->left); c != 0) return c;
    return node_->right.compare(other.node_->right);
}

namespace {

// Printing levels. A child is wrapped in parentheses whenever reparsing the
// bare form would change the tree: quantifiers swallow the longest concept to
// their right, so they are always bracketed inside a binary operator, and
// right operands of the same operator are bracketed to keep left association.
bool atom_like(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Top:
        case ConceptKind::Bot:
        case ConceptKind::Name:
            return true;
        default:
            return false;
    }
}

void print(const Concept& c, std::string& out);

void print_operand(const Concept& c, ConceptKind parent, bool right_side, std::string& out) {
    bool parens = false;
    switch (c.kind()) {
        case ConceptKind::Or:
            parens = parent == ConceptKind::And || right_side;
            break;
        case ConceptKind::And:
            parens = parent == ConceptKind::And && right_side;
            break;
        case ConceptKind::Exists:
        case ConceptKind::Forall:
            parens = true;
            break;
        default:
            break;
    }
    if (parens) {
        out += '(';
        print(c, out);
        out += ')';
    } else {
        print(c, out);
    }
}

void print(const Concept& c, std::string& out) {
    switch (c.kind()) {
        case ConceptKind::Top:
            out += "Top";
            return;
        case ConceptKind::Bot:
            out += "Bot";
            return;
        case ConceptKind::Name:
            out += c.label();
            return;
        case ConceptKind::Not:
            out += "not ";
            if (atom_like(c.child())) {
                print(c.child(), out);
            } else {
                out += '(';
                print(c.child(), out);
                out += ')';
            }
            return;
        case ConceptKind::And:
            print_operand(c.left(), ConceptKind::And, false, out);
            out += " and ";
            print_operand(c.right(), ConceptKind::And, true, out);
            return;
        case ConceptKind::Or:
            print_operand(c.left(), ConceptKind::Or, false, out);
            out += " or ";
            print_operand(c.right(), ConceptKind::Or, true, out);
            return;
        case ConceptKind::Exists:
        case ConceptKind::Forall:
            out += c.kind() == ConceptKind::Exists ? "exists " : "forall ";
            out += c.label();
            out += ". ";
            print(c.child(), out);
            return;
    }
}

}  // namespace

std::string Concept::str() const {
    std::string out;
    print(*this, out);
    return out;
}

Concept nnf(const Concept& c) {
    switch (c.kind()) {
        case ConceptKind::Top:
        case ConceptKind::Bot:
        case ConceptKind::Name:
            return c;
        case ConceptKind::And:
            return Concept::conj(nnf(c.left()), nnf(c.right()));
        case ConceptKind::Or:
            return Concept::disj(nnf(c.left()), nnf(c.right()));
        case ConceptKind::Exists:
            return Concept::exists(c.label(), nnf(c.child()));
        case ConceptKind::Forall:
            return Concept::forall(c.label(), nnf(c.child()));
        case ConceptKind::Not: {
            const Concept& x = c.child();
            switch (x.kind()) {
                case ConceptKind::Top:
                    return Concept::bot();
                case ConceptKind::Bot:
                    return Concept::top();
                case ConceptKind::Name:
                    return c;
                case ConceptKind::Not:
                    return nnf(x.child());
                case ConceptKind::And:
                    return Concept::disj(nnf(Concept::negation(x.left())), nnf(Concept::negation(x.right())));
                case ConceptKind::Or:
                    return Concept::conj(nnf(Concept::negation(x.left())), nnf(Concept::negation(x.right())));
                case ConceptKind::Exists:
                    return Concept::forall(x.label(), nnf(Concept::negation(x.child())));
                case ConceptKind::Forall:
                    return Concept::exists(x.label(), nnf(Concept::negation(x.child())));
            }
        }
    }
    return c;  // unreachable
}

Concept complement(const Concept& c) { return nnf(Concept::negation(c)); }

void collect_subconcepts(const Concept& c, std::vector<Concept>& out) {
    out.push_back(c);
    switch (c.kind()) {
        case ConceptKind::Not:
        case ConceptKind::Exists:
        case ConceptKind::Forall:
            collect_subconcepts(c.child(), out);
            break;
        case ConceptKind::And:
        case ConceptKind::Or:
            collect_subconcepts(c.left(), out);
            collect_subconcepts(c.right(), out);
            break;
        default:
            break;
    }
}

namespace {

void walk_names(const Concept& c, std::set<std::string>& concepts, std::set<std::string>& roles) {
    switch (c.kind()) {
        case ConceptKind::Name:
            concepts.insert(c.label());
            break;
        case ConceptKind::Not:
            walk_names(c.child(), concepts, roles);
            break;
        case ConceptKind::And:
        case ConceptKind::Or:
            walk_names(c.left(), concepts, roles);
            walk_names(c.right(), concepts, roles);
            break;
        case ConceptKind::Exists:
        case ConceptKind::Forall:
            roles.insert(c.label());
            walk_names(c.child(), concepts, roles);
            break;
        default:
            break;
    }
}

}  // namespace

std::vector<std::string> concept_names(const Concept& c) {
    std::set<std::string> names, roles;
    walk_names(c, names, roles);
    return {names.begin(), names.end()};
}

std::vector<std::string> role_names(const Concept& c) {
    std::set<std::string> names, roles;
    walk_names(c, names, roles);
    return {roles.begin(), roles.end()};
}

}  // namespace mcl
