#include "json_io.hpp"

#include <json.hpp>

namespace mcl {

using nlohmann::json;

namespace {

json rank_to_json(const Rank& r) {
    if (rank_is_infinite(r)) return nullptr;
    return *r;
}

json compliance_to_json(const QueryVerdict& v) {
    switch (v.t_compliance) {
        case TComplianceState::Compliant:
            return "compliant";
        case TComplianceState::Violated:
            return "violated";
        case TComplianceState::NotApplicable:
            return "not-applicable";
    }
    return nullptr;
}

}  // namespace

std::string mode_to_string(Mode mode, const std::string& module_name) {
    switch (mode) {
        case Mode::Mcl:
            return "mcl";
        case Mode::Mclt:
            return "mclt";
        case Mode::Module:
            return "module=" + module_name;
        case Mode::Classical:
            return "classical";
    }
    return "";
}

std::string verdict_to_json(const QueryVerdict& v) {
    json out;
    out["verdict"] = v.vacuous ? "vacuously-entailed" : (v.entailed ? "entailed" : "not-entailed");
    out["mode"] = mode_to_string(v.mode, v.module_name);
    out["tCompliance"] = compliance_to_json(v);
    if (!v.violated_inclusions.empty()) {
        json list = json::array();
        for (const auto& d : v.violated_inclusions) list.push_back(d.str());
        out["violatedInclusions"] = list;
    }
    if (v.witness) {
        json bits = json::object();
        for (const auto& [name, val] : v.witness->atom_bits) bits[name] = val;
        out["witness"] = bits;
    } else {
        out["witness"] = nullptr;
    }
    out["stats"] = {{"types", v.stats.types}, {"atoms", v.stats.atoms}, {"millis", v.stats.millis}};
    return out.dump(2);
}

std::string rank_table_to_json(const RankTable& table, const std::vector<std::pair<Concept, Rank>>& concept_ranks,
                               const ModularKB& kb) {
    json out;
    out["order"] = table.order;
    json concepts = json::object();
    for (const auto& [c, r] : concept_ranks) concepts[c.str()] = rank_to_json(r);
    out["concepts"] = concepts;
    json defaults = json::array();
    for (const auto& [d, r] : table.default_ranks) {
        json entry;
        entry["inclusion"] = d.str();
        entry["rank"] = rank_to_json(r);
        entry["modules"] = kb.modules_containing(d);
        defaults.push_back(entry);
    }
    out["defaults"] = defaults;
    json levels = json::array();
    for (const auto& level : table.levels) {
        json l = json::array();
        for (const auto& d : level) l.push_back(d.str());
        levels.push_back(l);
    }
    out["exceptionalityLevels"] = levels;
    return out.dump(2);
}

std::string check_to_json(bool consistent, const std::vector<Diagnostic>& diagnostics) {
    json out;
    out["consistent"] = consistent;
    json diags = json::array();
    for (const auto& d : diagnostics) {
        diags.push_back({{"severity", d.severity == Diagnostic::Severity::Info ? "info" : "warning"},
                         {"message", d.message}});
    }
    out["diagnostics"] = diags;
    return out.dump(2);
}

std::string model_to_json(const Session& session) {
    const auto& dom = session.domain();
    const auto& sig = session.sig();
    const auto& prefs = session.preferences();
    const auto& kb = session.kb();

    json out;
    json atoms = json::array();
    for (const auto& a : sig.atoms()) atoms.push_back(a.str());
    out["atoms"] = atoms;

    json types = json::array();
    for (const auto& t : dom.types()) {
        json bits = json::object();
        for (std::size_t i = 0; i < sig.atom_count(); ++i) bits[sig.atoms()[i].str()] = ((t.bits >> i) & 1u) != 0;
        types.push_back({{"id", t.id}, {"bits", bits}, {"profile", prefs.profile_of(t.id)}});
    }
    out["types"] = types;

    json modules = json::array();
    for (std::size_t i = 0; i < kb.modules.size(); ++i) {
        json vectors = json::array();
        for (const auto& v : prefs.modules()[i].per_type) vectors.push_back(v.counts);
        modules.push_back({{"name", kb.modules[i].name}, {"vectors", vectors}});
    }
    out["modules"] = modules;

    // The global order quotients through profiles: x < y holds exactly when
    // profile(x) < profile(y). Edges carry the modules witnessing strictness.
    json profiles = json::array();
    for (std::uint32_t p = 0; p < prefs.profile_count(); ++p)
        profiles.push_back({{"id", p}, {"types", prefs.profile_members(p)}});
    out["profiles"] = profiles;

    json edges = json::array();
    for (std::uint32_t p = 0; p < prefs.profile_count(); ++p) {
        for (std::uint32_t q = 0; q < prefs.profile_count(); ++q) {
            if (p == q || !prefs.profile_less(p, q)) continue;
            json strict_in = json::array();
            for (std::size_t i = 0; i < kb.modules.size(); ++i) {
                if (prefs.profile_module_less(i, p, q)) strict_in.push_back(kb.modules[i].name);
            }
            edges.push_back({{"below", p}, {"above", q}, {"strictIn", strict_in}});
        }
    }
    out["profileEdges"] = edges;

    json minimal_sets = json::object();
    for (const auto& m : kb.modules) {
        const auto& ext = dom.extension(m.subject);
        minimal_sets[m.name] = prefs.global_minimal(ext);
    }
    out["minimalPerSubject"] = minimal_sets;

    out["stats"] = {{"types", dom.size()}, {"atoms", sig.atom_count()}};
    return out.dump(2);
}

std::string oracle_report_to_json(const oracle::CrossCheckReport& report) {
    json out;
    json items = json::array();
    for (const auto& item : report.items) {
        items.push_back({{"query", "T(" + item.antecedent.str() + ") <= " + item.consequent.str()},
                         {"engine", item.engine},
                         {"oracle", item.oracle},
                         {"agree", item.engine == item.oracle}});
    }
    out["queries"] = items;
    out["disagreements"] = report.disagreements;
    out["ranksAgree"] = report.ranks_agree;
    return out.dump(2);
}

}  // namespace mcl
