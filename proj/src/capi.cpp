#include "mcl/mcl.h"

#include <cstring>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "entailment.hpp"
#include "errors.hpp"
#include "json_io.hpp"
#include "parser.hpp"
#include "prop_oracle.hpp"

struct mcl_kb {
    mcl::ModularKB kb;
    mcl::Limits limits;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void set_error(char** out_error, const std::string& message) {
    if (out_error) *out_error = dup_string(message);
}

template <typename Fn>
mcl_status guarded(char** out_error, Fn&& fn) {
    try {
        return fn();
    } catch (const mcl::ParseError& e) {
        set_error(out_error, e.what());
        return MCL_E_PARSE;
    } catch (const mcl::AtomCapError& e) {
        set_error(out_error, e.what());
        return MCL_E_ATOM_CAP;
    } catch (const mcl::ResourceLimitError& e) {
        set_error(out_error, e.what());
        return MCL_E_RESOURCE;
    } catch (const mcl::UnknownModuleError& e) {
        set_error(out_error, e.what());
        return MCL_E_UNKNOWN_MODULE;
    } catch (const mcl::InconsistentKbError& e) {
        set_error(out_error, e.what());
        return MCL_E_INCONSISTENT;
    } catch (const mcl::BadQueryError& e) {
        set_error(out_error, e.what());
        return MCL_E_QUERY;
    } catch (const std::exception& e) {
        set_error(out_error, e.what());
        return MCL_E_INTERNAL;
    }
}

std::vector<std::pair<mcl::Concept, mcl::Rank>> rank_all_named_concepts(const mcl_kb& handle,
                                                                        const mcl::RankingEngine& engine) {
    std::set<std::string> names;
    auto take = [&](const mcl::Concept& c) {
        for (const auto& n : mcl::concept_names(c)) names.insert(n);
    };
    for (const auto& ax : handle.kb.strict) {
        take(ax.lhs);
        take(ax.rhs);
    }
    for (const auto& m : handle.kb.modules) {
        take(m.subject);
        for (const auto& d : m.defaults) {
            take(d.antecedent);
            take(d.consequent);
        }
    }
    for (const auto& a : handle.kb.abox) {
        if (const auto* ca = std::get_if<mcl::ConceptAssertion>(&a)) take(ca->concept_expr);
    }

    std::set<mcl::Concept, mcl::ConceptLess> targets;
    for (const auto& n : names) targets.insert(mcl::Concept::name(n));
    for (const auto& m : handle.kb.modules) {
        targets.insert(m.subject);
        for (const auto& d : m.defaults) targets.insert(d.antecedent);
    }

    std::vector<std::pair<mcl::Concept, mcl::Rank>> out;
    for (const auto& c : targets) out.emplace_back(c, engine.concept_rank(c));
    return out;
}

mcl::Concept random_role_free_concept(std::mt19937& rng, const std::vector<std::string>& names, int depth) {
    std::uniform_int_distribution<int> pick(0, 9);
    int k = depth <= 0 ? 0 : pick(rng);
    if (k < 4 || depth <= 0) {
        std::uniform_int_distribution<std::size_t> n(0, names.size() - 1);
        return mcl::Concept::name(names[n(rng)]);
    }
    if (k < 6) return mcl::Concept::negation(random_role_free_concept(rng, names, depth - 1));
    if (k < 8)
        return mcl::Concept::conj(random_role_free_concept(rng, names, depth - 1),
                                  random_role_free_concept(rng, names, depth - 1));
    return mcl::Concept::disj(random_role_free_concept(rng, names, depth - 1),
                              random_role_free_concept(rng, names, depth - 1));
}

}  // namespace

extern "C" {

const char* mcl_version(void) { return "0.1.0"; }

void mcl_string_free(char* s) { std::free(s); }

mcl_status mcl_kb_from_string(const char* text, mcl_kb** out_kb, char** out_error) {
    if (!text || !out_kb) {
        set_error(out_error, "null argument");
        return MCL_E_ARGUMENT;
    }
    return guarded(out_error, [&] {
        auto handle = std::make_unique<mcl_kb>();
        handle->kb = mcl::parse_kb(text);
        *out_kb = handle.release();
        return MCL_OK;
    });
}

mcl_status mcl_kb_from_file(const char* path, mcl_kb** out_kb, char** out_error) {
    if (!path || !out_kb) {
        set_error(out_error, "null argument");
        return MCL_E_ARGUMENT;
    }
    std::ifstream in(path);
    if (!in) {
        set_error(out_error, std::string("cannot read file: ") + path);
        return MCL_E_IO;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return mcl_kb_from_string(buf.str().c_str(), out_kb, out_error);
}

void mcl_kb_free(mcl_kb* kb) { delete kb; }

void mcl_kb_set_limits(mcl_kb* kb, uint32_t max_atoms, uint64_t max_tableau_nodes) {
    if (!kb) return;
    if (max_atoms > 0) kb->limits.max_atoms = max_atoms;
    if (max_tableau_nodes > 0) kb->limits.max_nodes = max_tableau_nodes;
}

mcl_status mcl_kb_check(const mcl_kb* kb, int* out_consistent, char** out_json, char** out_error) {
    if (!kb || !out_consistent) {
        set_error(out_error, "null argument");
        return MCL_E_ARGUMENT;
    }
    return guarded(out_error, [&] {
        mcl::TBoxView tbox(kb->kb.strict, kb->limits.max_nodes);
        mcl::TableauResult r = mcl::kb_consistent(tbox, kb->kb.abox);
        *out_consistent = r.outcome == mcl::Outcome::Satisfiable ? 1 : 0;
        if (out_json) *out_json = dup_string(mcl::check_to_json(*out_consistent != 0, mcl::validate(kb->kb)));
        return MCL_OK;
    });
}

mcl_status mcl_kb_rank_table(const mcl_kb* kb, char** out_json, char** out_error) {
    if (!kb || !out_json) {
        set_error(out_error, "null argument");
        return MCL_E_ARGUMENT;
    }
    return guarded(out_error, [&] {
        auto tbox = std::make_shared<mcl::TBoxView>(kb->kb.strict, kb->limits.max_nodes);
        if (mcl::kb_consistent(*tbox, kb->kb.abox).outcome == mcl::Outcome::Unsatisfiable)
            throw mcl::InconsistentKbError();
        mcl::RankTable table = mcl::compute_ranks(kb->kb, *tbox);
        mcl::RankingEngine engine(std::move(table), tbox);
        auto concept_ranks = rank_all_named_concepts(*kb, engine);
        *out_json = dup_string(mcl::rank_table_to_json(engine.table(), concept_ranks, kb->kb));
        return MCL_OK;
    });
}

mcl_status mcl_kb_entail(const mcl_kb* kb, const char* query, const char* mode, mcl_answer* out_answer,
                         char** out_json, char** out_error) {
    if (!kb || !query || !mode || !out_answer) {
        set_error(out_error, "null argument");
        return MCL_E_ARGUMENT;
    }
    return guarded(out_error, [&]() -> mcl_status {
        std::string mode_str(mode);
        mcl::Query parsed = mcl::parse_query(query);

        if (mode_str == "classical") {
            if (std::holds_alternative<mcl::DefeasibleQuery>(parsed))
                throw mcl::BadQueryError("classical mode expects an inclusion or assertion query");
            bool entailed = mcl::entails_classical(kb->kb, parsed, kb->limits);
            *out_answer = entailed ? MCL_ANSWER_ENTAILED : MCL_ANSWER_NOT_ENTAILED;
            if (out_json) {
                mcl::QueryVerdict v;
                v.mode = mcl::Mode::Classical;
                v.entailed = entailed;
                *out_json = dup_string(mcl::verdict_to_json(v));
            }
            return MCL_OK;
        }

        const auto* dq = std::get_if<mcl::DefeasibleQuery>(&parsed);
        if (!dq) throw mcl::BadQueryError("mode '" + mode_str + "' expects a query of the form 'T(C) <= D.'");

        mcl::QueryVerdict v;
        if (mode_str == "mcl") {
            v = mcl::entails_mcl(kb->kb, *dq, kb->limits);
        } else if (mode_str == "mclt") {
            v = mcl::entails_mclt(kb->kb, *dq, kb->limits);
        } else if (mode_str.rfind("module=", 0) == 0) {
            v = mcl::entails_module(kb->kb, mode_str.substr(7), *dq, kb->limits);
        } else {
            throw mcl::BadQueryError("unknown mode: " + mode_str);
        }
        *out_answer = v.vacuous          ? MCL_ANSWER_VACUOUS
                      : v.entailed       ? MCL_ANSWER_ENTAILED
                                         : MCL_ANSWER_NOT_ENTAILED;
        if (out_json) *out_json = dup_string(mcl::verdict_to_json(v));
        return MCL_OK;
    });
}

mcl_status mcl_kb_model(const mcl_kb* kb, const char* query_or_null, char** out_json, char** out_error) {
    if (!kb || !out_json) {
        set_error(out_error, "null argument");
        return MCL_E_ARGUMENT;
    }
    return guarded(out_error, [&] {
        mcl::DefeasibleQuery q{mcl::Concept::top(), mcl::Concept::top()};
        if (query_or_null) {
            mcl::Query parsed = mcl::parse_query(query_or_null);
            const auto* dq = std::get_if<mcl::DefeasibleQuery>(&parsed);
            if (!dq) throw mcl::BadQueryError("model dump expects a query of the form 'T(C) <= D.'");
            q = *dq;
        }
        mcl::Session session(kb->kb, q, kb->limits);
        *out_json = dup_string(mcl::model_to_json(session));
        return MCL_OK;
    });
}

mcl_status mcl_kb_oracle_compare(const mcl_kb* kb, const char* const* queries, uint32_t query_count,
                                 uint32_t random_queries, uint64_t seed, uint32_t* out_disagreements,
                                 char** out_json, char** out_error) {
    if (!kb || !out_disagreements || (query_count > 0 && !queries)) {
        set_error(out_error, "null argument");
        return MCL_E_ARGUMENT;
    }
    return guarded(out_error, [&] {
        std::vector<std::pair<mcl::Concept, mcl::Concept>> parsed;
        std::vector<mcl::Concept> extra;
        for (uint32_t i = 0; i < query_count; ++i) {
            mcl::Query q = mcl::parse_query(queries[i]);
            const auto* dq = std::get_if<mcl::DefeasibleQuery>(&q);
            if (!dq) throw mcl::BadQueryError("oracle comparison expects queries of the form 'T(C) <= D.'");
            parsed.emplace_back(dq->antecedent, dq->consequent);
            extra.push_back(dq->antecedent);
            extra.push_back(dq->consequent);
        }
        mcl::oracle::PropKB pkb = mcl::oracle::flatten(kb->kb, extra);
        if (random_queries > 0) {
            if (pkb.names.empty()) throw mcl::BadQueryError("cannot generate queries: no concept names");
            std::mt19937 rng(static_cast<std::uint32_t>(seed));
            for (uint32_t i = 0; i < random_queries; ++i) {
                parsed.emplace_back(random_role_free_concept(rng, pkb.names, 2),
                                    random_role_free_concept(rng, pkb.names, 2));
            }
        }
        mcl::oracle::CrossCheckReport report = mcl::oracle::cross_check(pkb, parsed);
        *out_disagreements =
            static_cast<uint32_t>(report.disagreements) + (report.ranks_agree ? 0u : 1u);
        if (out_json) *out_json = dup_string(mcl::oracle_report_to_json(report));
        return MCL_OK;
    });
}

}  // extern "C"
