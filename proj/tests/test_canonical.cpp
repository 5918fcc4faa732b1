#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <memory>
#include <random>
#include <set>

#include "canonical.hpp"
#include "errors.hpp"
#include "parser.hpp"
#include "testutil.hpp"

using namespace mcl;

namespace {

struct Built {
    ModularKB kb;
    std::shared_ptr<TBoxView> tbox;
    std::shared_ptr<Signature> sig;
    RankTable ranks;
    CanonicalDomain domain;
};

Built build(const std::string& kb_text, const Query* query = nullptr, Limits limits = {}) {
    ModularKB kb = parse_kb(kb_text);
    auto tbox = std::make_shared<TBoxView>(kb.strict, limits.max_nodes);
    auto sig = std::make_shared<Signature>(build_signature(kb, query));
    RankTable ranks = compute_ranks(kb, *tbox);
    CanonicalDomain domain = enumerate_types(sig, ranks, *tbox, limits);
    return {std::move(kb), tbox, sig, std::move(ranks), std::move(domain)};
}

Built build_fixture(const std::string& name, const Query* query = nullptr, Limits limits = {}) {
    return build(mcltest::read_file(mcltest::fixture_path(name)), query, limits);
}

std::set<std::uint64_t> bit_patterns(const CanonicalDomain& dom) {
    std::set<std::uint64_t> out;
    for (const auto& t : dom.types()) out.insert(t.bits);
    return out;
}

}  // namespace

TEST_CASE("one subsumption axiom prunes exactly one assignment") {
    Built b = build("strict: A <= B.");
    // Atoms in signature order: A, B. Assignment A=1,B=0 violates the axiom.
    REQUIRE(b.sig->atoms().size() == 2);
    REQUIRE(b.sig->atoms()[0] == Concept::name("A"));
    std::set<std::uint64_t> expected{0b00, 0b10, 0b11};
    CHECK(bit_patterns(b.domain) == expected);
}

TEST_CASE("an unsatisfiable name never appears positively") {
    Built b = build("strict: A <= Bot.");
    std::set<std::uint64_t> expected{0b0};
    CHECK(bit_patterns(b.domain) == expected);
}

TEST_CASE("an unconstrained name yields both types") {
    ModularKB kb;
    Query q{DefeasibleQuery{Concept::name("A"), Concept::name("A")}};
    auto tbox = std::make_shared<TBoxView>(kb.strict);
    auto sig = std::make_shared<Signature>(build_signature(kb, &q));
    RankTable ranks = compute_ranks(kb, *tbox);
    CanonicalDomain dom = enumerate_types(sig, ranks, *tbox, {});
    CHECK(bit_patterns(dom) == std::set<std::uint64_t>{0b0, 0b1});
}

TEST_CASE("extensions of constants and tautologies") {
    Built b = build_fixture("students_core.kb");
    CHECK(b.domain.extension(Concept::bot()).empty());
    Concept taut = Concept::disj(Concept::name("Young"), Concept::negation(Concept::name("Young")));
    CHECK(b.domain.extension(taut).size() == b.domain.size());
    CHECK(!b.domain.extension(parse_concept("Employee and Student")).empty());
}

TEST_CASE("extension respects boolean structure") {
    Built b = build_fixture("students_core.kb");
    std::mt19937 rng(17);
    std::vector<std::string> names{"Employee", "Student", "Young", "Busy"};
    for (int i = 0; i < 40; ++i) {
        Concept x = mcltest::random_concept(rng, names, 2);
        Concept y = mcltest::random_concept(rng, names, 2);
        auto inter = b.domain.extension(Concept::conj(x, y));
        auto uni = b.domain.extension(Concept::disj(x, y));
        const auto& ex = b.domain.extension(x);
        const auto& ey = b.domain.extension(y);
        std::vector<std::uint32_t> expected_inter, expected_uni;
        std::set_intersection(ex.begin(), ex.end(), ey.begin(), ey.end(), std::back_inserter(expected_inter));
        std::set_union(ex.begin(), ex.end(), ey.begin(), ey.end(), std::back_inserter(expected_uni));
        CHECK(inter == expected_inter);
        CHECK(uni == expected_uni);
    }
}

TEST_CASE("membership obeys complement on every signature concept") {
    Built b = build_fixture("students_core.kb");
    for (const auto& t : b.domain.types()) {
        for (const auto& c : b.sig->concepts()) {
            CHECK(b.domain.member(t, c) == !b.domain.member(t, complement(c)));
        }
    }
}

TEST_CASE("every accepted type passes a direct tableau check") {
    Built b = build_fixture("students_core.kb");
    std::vector<TypicalityInclusion> inf = b.ranks.infinite_defaults();
    Concept mat = materialize(inf);
    for (const auto& t : b.domain.types()) {
        Concept conj = Concept::conj(type_conjunction(*b.sig, t.bits), mat);
        CHECK(b.tbox->satisfiable(conj) == Outcome::Satisfiable);
    }
}

TEST_CASE("exhaustive agreement with the direct tableau filter on small bases") {
    std::mt19937 rng(71);
    std::vector<std::string> names{"A", "B", "C"};
    for (int round = 0; round < 25; ++round) {
        ModularKB kb = mcltest::random_prop_kb(rng, names, 2, 4, 2);
        auto tbox = std::make_shared<TBoxView>(kb.strict);
        auto sig = std::make_shared<Signature>(build_signature(kb, nullptr));
        RankTable ranks = compute_ranks(kb, *tbox);
        CanonicalDomain dom = enumerate_types(sig, ranks, *tbox, {});
        Concept mat = materialize(ranks.infinite_defaults());
        std::set<std::uint64_t> enumerated = bit_patterns(dom);
        const std::uint64_t limit = 1ull << sig->atom_count();
        for (std::uint64_t bits = 0; bits < limit; ++bits) {
            Concept conj = Concept::conj(type_conjunction(*sig, bits), mat);
            bool direct = tbox->satisfiable(conj) == Outcome::Satisfiable;
            CHECK(direct == (enumerated.count(bits) > 0));
        }
    }
}

TEST_CASE("exhaustive agreement with roles in the signature") {
    // The scholarship pattern: an existential atom entails another via the
    // strict axioms, which only the role-coherence check can see.
    Built b = build(
        "strict: Has_no_Scolarship <= not exists hasScolarship. Top.\n"
        "not exists hasScolarship. Top <= Has_no_Scolarship.\n"
        "module m subject Student: T(PhDStudent) <= exists hasScolarship. Amount.");
    Concept mat = materialize(b.ranks.infinite_defaults());
    std::set<std::uint64_t> enumerated = bit_patterns(b.domain);
    const std::uint64_t limit = 1ull << b.sig->atom_count();
    for (std::uint64_t bits = 0; bits < limit; ++bits) {
        Concept conj = Concept::conj(type_conjunction(*b.sig, bits), mat);
        bool direct = b.tbox->satisfiable(conj) == Outcome::Satisfiable;
        CHECK(direct == (enumerated.count(bits) > 0));
    }
}

TEST_CASE("canonicity: every finite-rank subset of the signature is realized") {
    std::mt19937 rng(83);
    std::vector<std::string> names{"A", "B", "C"};
    for (int round = 0; round < 15; ++round) {
        ModularKB kb = mcltest::random_prop_kb(rng, names, 2, 4, 1);
        auto tbox = std::make_shared<TBoxView>(kb.strict);
        auto sig = std::make_shared<Signature>(build_signature(kb, nullptr));
        RankTable ranks = compute_ranks(kb, *tbox);
        RankingEngine engine(ranks, tbox);
        CanonicalDomain dom = enumerate_types(sig, ranks, *tbox, {});

        // Sampled subsets of signature concepts.
        std::uniform_int_distribution<std::size_t> count(1, std::min<std::size_t>(4, sig->concepts().size()));
        for (int s = 0; s < 30; ++s) {
            std::size_t k = count(rng);
            std::vector<Concept> subset;
            std::uniform_int_distribution<std::size_t> pick(0, sig->concepts().size() - 1);
            for (std::size_t i = 0; i < k; ++i) subset.push_back(sig->concepts()[pick(rng)]);
            Concept conj = subset[0];
            for (std::size_t i = 1; i < subset.size(); ++i) conj = Concept::conj(conj, subset[i]);
            if (rank_is_infinite(engine.concept_rank(conj))) continue;
            bool realized = false;
            for (const auto& t : dom.types()) {
                bool all = true;
                for (const auto& c : subset) all = all && dom.member(t, c);
                realized = realized || all;
            }
            CHECK(realized);
        }
    }
}

TEST_CASE("atom cap refusal names the count") {
    try {
        Query q{DefeasibleQuery{parse_concept("PhDStudent and Italian"), Concept::name("HomeOwner")}};
        Limits limits;
        limits.max_atoms = 3;
        build_fixture("homeowner.kb", &q, limits);
        FAIL("expected the atom cap to fire");
    } catch (const AtomCapError& e) {
        CHECK(e.atoms == 19);
        CHECK(e.cap == 3);
        CHECK(std::string(e.what()).find("19") != std::string::npos);
    }
}

TEST_CASE("evaluating a concept outside the signature demands a rebuild") {
    Built b = build("strict: A <= B.");
    CHECK_THROWS_AS(b.domain.extension(Concept::exists("r", Concept::name("A"))), UnknownSubconceptError);
    CHECK_THROWS_AS(b.domain.extension(Concept::name("Zebra")), UnknownSubconceptError);
}
