#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "errors.hpp"
#include "kb.hpp"
#include "parser.hpp"
#include "testutil.hpp"

using namespace mcl;

TEST_CASE("parsing a strict axiom") {
    ModularKB kb = parse_kb("strict: Employee <= Adult.");
    REQUIRE(kb.strict.size() == 1);
    CHECK(kb.strict[0].lhs == Concept::name("Employee"));
    CHECK(kb.strict[0].rhs == Concept::name("Adult"));
    CHECK(kb.modules.empty());
}

TEST_CASE("parsing a module with one default") {
    ModularKB kb = parse_kb("module m1 subject Employee: T(Employee) <= not Young.");
    REQUIRE(kb.modules.size() == 1);
    CHECK(kb.modules[0].name == "m1");
    CHECK(kb.modules[0].subject == Concept::name("Employee"));
    REQUIRE(kb.modules[0].defaults.size() == 1);
    CHECK(kb.modules[0].defaults[0].antecedent == Concept::name("Employee"));
    CHECK(kb.modules[0].defaults[0].consequent == complement(Concept::name("Young")));
}

TEST_CASE("typicality on an axiom right-hand side is rejected with position info") {
    try {
        parse_kb("strict: A <= T(B).");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column > 1);
        CHECK(std::string(e.what()).find("typicality") != std::string::npos);
    }
}

TEST_CASE("duplicate module names are rejected") {
    CHECK_THROWS_AS(parse_kb("module m subject A: T(A) <= B.\nmodule m subject C: T(C) <= D."), ParseError);
}

TEST_CASE("assertions parse in both arities") {
    ModularKB kb = parse_kb("abox: Employee(bob). has_boss(bob, alice).");
    REQUIRE(kb.abox.size() == 2);
    const auto* ca = std::get_if<ConceptAssertion>(&kb.abox[0]);
    REQUIRE(ca != nullptr);
    CHECK(ca->individual == "bob");
    const auto* ra = std::get_if<RoleAssertion>(&kb.abox[1]);
    REQUIRE(ra != nullptr);
    CHECK(ra->role == "has_boss");
    CHECK(ra->object == "alice");
}

TEST_CASE("quantifiers take the longest concept after the dot") {
    Concept c = parse_concept("exists r. A and B");
    REQUIRE(c.kind() == ConceptKind::Exists);
    CHECK(c.child().kind() == ConceptKind::And);

    Concept d = parse_concept("(exists r. A) and B");
    CHECK(d.kind() == ConceptKind::And);
}

TEST_CASE("precedence: not over and over or") {
    Concept c = parse_concept("not A and B or C");
    REQUIRE(c.kind() == ConceptKind::Or);
    REQUIRE(c.left().kind() == ConceptKind::And);
    CHECK(c.left().left().kind() == ConceptKind::Not);
}

TEST_CASE("query strings cover defaults, axioms and assertions") {
    Query q1 = parse_query("T(PhDStudent) <= Young.");
    CHECK(std::holds_alternative<DefeasibleQuery>(q1));
    Query q2 = parse_query("Employee <= Adult.");
    CHECK(std::holds_alternative<StrictInclusion>(q2));
    Query q3 = parse_query("Adult(bob).");
    CHECK(std::holds_alternative<Assertion>(q3));
}

TEST_CASE("nnf: De Morgan, quantifier duality, involution") {
    Concept a = Concept::name("A"), b = Concept::name("B");
    CHECK(nnf(Concept::negation(Concept::conj(a, b))) ==
          Concept::disj(Concept::negation(a), Concept::negation(b)));
    CHECK(nnf(Concept::negation(Concept::exists("r", a))) == Concept::forall("r", Concept::negation(a)));
    CHECK(nnf(Concept::negation(Concept::negation(a))) == a);
}

TEST_CASE("nnf is idempotent and preserves the name alphabet") {
    std::mt19937 rng(7);
    std::vector<std::string> names{"A", "B", "C"};
    std::vector<std::string> roles{"r", "s"};
    for (int i = 0; i < 300; ++i) {
        Concept c = mcltest::random_concept_with_roles(rng, names, roles, 4);
        Concept n = nnf(c);
        CHECK(nnf(n) == n);
        CHECK(concept_names(c) == concept_names(n));
        CHECK(role_names(c) == role_names(n));
    }
}

TEST_CASE("printer round-trips structurally") {
    std::mt19937 rng(11);
    std::vector<std::string> names{"A", "B", "C", "D"};
    std::vector<std::string> roles{"r", "s"};
    for (int i = 0; i < 500; ++i) {
        Concept c = mcltest::random_concept_with_roles(rng, names, roles, 5);
        Concept back = parse_concept(c.str());
        CHECK(back == c);
    }
}

TEST_CASE("signature of a single axiom plus query") {
    ModularKB kb = parse_kb("strict: A <= B.");
    Query q = DefeasibleQuery{Concept::name("A"), Concept::name("B")};
    Signature sig = build_signature(kb, &q);
    const auto& cs = sig.concepts();
    REQUIRE(cs.size() == 4);
    CHECK(cs[0] == Concept::name("A"));
    CHECK(cs[1] == Concept::name("B"));
    CHECK(cs[2] == complement(Concept::name("A")));
    CHECK(cs[3] == complement(Concept::name("B")));
    CHECK(sig.atom_count() == 2);
}

TEST_CASE("signature keeps complements of quantified concepts in nnf") {
    ModularKB kb = parse_kb("strict: A <= exists r. B.");
    Signature sig = build_signature(kb, nullptr);
    Concept ex = Concept::exists("r", Concept::name("B"));
    Concept fa = Concept::forall("r", complement(Concept::name("B")));
    bool has_ex = false, has_fa = false;
    for (const auto& c : sig.concepts()) {
        has_ex = has_ex || c == ex;
        has_fa = has_fa || c == fa;
    }
    CHECK(has_ex);
    CHECK(has_fa);
    // Both map to the same atom with opposite polarity.
    auto r1 = sig.atom_ref(ex);
    auto r2 = sig.atom_ref(fa);
    REQUIRE(r1.has_value());
    REQUIRE(r2.has_value());
    CHECK(r1->index == r2->index);
    CHECK(r1->positive != r2->positive);
}

TEST_CASE("module subjects enter the signature even when no default mentions them") {
    ModularKB kb = parse_kb("module m3 subject Vehicle: T(Car) <= not SportsCar.");
    Signature sig = build_signature(kb, nullptr);
    bool found = false;
    for (const auto& c : sig.concepts()) found = found || c == Concept::name("Vehicle");
    CHECK(found);
    CHECK(sig.atom_ref(Concept::name("Vehicle")).has_value());
}

TEST_CASE("signature closure under subconcepts and complements") {
    std::mt19937 rng(23);
    std::vector<std::string> names{"A", "B", "C"};
    std::vector<std::string> roles{"r"};
    for (int i = 0; i < 50; ++i) {
        ModularKB kb;
        kb.strict.push_back({mcltest::random_concept_with_roles(rng, names, roles, 3),
                             mcltest::random_concept_with_roles(rng, names, roles, 3)});
        Signature sig = build_signature(kb, nullptr);
        for (const auto& ax : kb.strict) {
            std::vector<Concept> subs;
            collect_subconcepts(ax.lhs, subs);
            collect_subconcepts(ax.rhs, subs);
            for (const auto& s : subs) {
                bool present = false, complement_present = false;
                for (const auto& c : sig.concepts()) {
                    present = present || c == s;
                    complement_present = complement_present || c == complement(s);
                }
                CHECK(present);
                CHECK(complement_present);
            }
        }
    }
}

TEST_CASE("validate flags shared defaults and empty modules") {
    ModularKB kb = mcltest::load_fixture("students.kb");
    auto diags = validate(kb);
    int shared = 0;
    for (const auto& d : diags)
        if (d.severity == Diagnostic::Severity::Info && d.message.find("shared") != std::string::npos) ++shared;
    CHECK(shared == 2);  // Busy and not-Young defaults live in m1 and m2

    ModularKB empty_mod = parse_kb("module lonely subject A:");
    auto diags2 = validate(empty_mod);
    REQUIRE(diags2.size() == 1);
    CHECK(diags2[0].severity == Diagnostic::Severity::Warning);

    ModularKB clean = parse_kb("module m subject A: T(A) <= B.");
    CHECK(validate(clean).empty());
}

TEST_CASE("defaults may repeat across modules but not inside one") {
    ModularKB kb = parse_kb("module a subject A: T(A) <= B. T(A) <= B.\nmodule b subject B: T(A) <= B.");
    CHECK(kb.modules[0].defaults.size() == 1);
    CHECK(kb.all_defaults().size() == 1);
    CHECK(kb.modules_containing({Concept::name("A"), Concept::name("B")}).size() == 2);
}

TEST_CASE("garbage input raises parse errors, never crashes") {
    std::mt19937 rng(4242);
    const std::string pieces[] = {"strict",  "module", "subject", "abox", ":",     ".",   "<=",  "(",
                                  ")",       ",",      "not",     "and",  "or",    "exists", "forall",
                                  "T",       "Top",    "Bot",     "A",    "r",     "m1",  "#x\n", "<"};
    for (int round = 0; round < 2000; ++round) {
        std::string text;
        std::uniform_int_distribution<int> len(0, 12);
        std::uniform_int_distribution<std::size_t> pick(0, std::size(pieces) - 1);
        int n = len(rng);
        for (int i = 0; i < n; ++i) {
            text += pieces[pick(rng)];
            text += ' ';
        }
        try {
            parse_kb(text);
        } catch (const ParseError&) {
        }
    }

    // Deep nesting fails cleanly instead of exhausting the stack.
    std::string deep = "strict: ";
    for (int i = 0; i < 100000; ++i) deep += '(';
    deep += 'A';
    CHECK_THROWS_AS(parse_kb(deep), ParseError);
}

TEST_CASE("kb files round-trip through the canonical printer") {
    ModularKB kb = mcltest::load_fixture("students.kb");
    // Rendering every stored concept and reparsing it yields the same tree.
    for (const auto& ax : kb.strict) {
        CHECK(parse_concept(ax.lhs.str()) == ax.lhs);
        CHECK(parse_concept(ax.rhs.str()) == ax.rhs);
    }
    for (const auto& m : kb.modules)
        for (const auto& d : m.defaults) {
            CHECK(parse_concept(d.antecedent.str()) == d.antecedent);
            CHECK(parse_concept(d.consequent.str()) == d.consequent);
        }
}
