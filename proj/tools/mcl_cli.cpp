// Command-line front end. All reasoning goes through the C API in mcl/mcl.h;
// this file only handles argument parsing, presentation and exit codes.
//
// Exit codes: 0 entailed / success, 1 not entailed (or inconsistent for
// `check`, disagreements for `oracle-compare`), 2 error or resource limit,
// 3 vacuous mclt verdict.

#include <mcl/mcl.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

constexpr int kExitEntailed = 0;
constexpr int kExitNotEntailed = 1;
constexpr int kExitError = 2;
constexpr int kExitVacuous = 3;

struct KbHandle {
    mcl_kb* kb = nullptr;
    ~KbHandle() { mcl_kb_free(kb); }
};

struct OwnedString {
    char* s = nullptr;
    ~OwnedString() { mcl_string_free(s); }
};

int report_failure(mcl_status status, const char* error) {
    std::cerr << "error";
    if (error) std::cerr << ": " << error;
    std::cerr << std::endl;
    (void)status;
    return kExitError;
}

int load_kb(const std::string& path, unsigned max_atoms, std::uint64_t max_nodes, KbHandle& handle) {
    OwnedString err;
    mcl_status status = mcl_kb_from_file(path.c_str(), &handle.kb, &err.s);
    if (status != MCL_OK) return report_failure(status, err.s);
    mcl_kb_set_limits(handle.kb, max_atoms, max_nodes);
    return kExitEntailed;
}

void print_json_or_text(const std::string& json_text, bool json_mode,
                        const std::function<void(const nlohmann::json&)>& human) {
    if (json_mode) {
        std::cout << json_text << std::endl;
        return;
    }
    human(nlohmann::json::parse(json_text));
}

std::string rank_to_text(const nlohmann::json& r) { return r.is_null() ? "inf" : std::to_string(r.get<int>()); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modular multi-concept lexicographic closure reasoner"};
    app.require_subcommand(1);

    std::string kb_path;
    std::string query;
    std::string mode;
    bool json_mode = false;
    unsigned max_atoms = 20;
    std::uint64_t max_nodes = 100000;
    unsigned random_queries = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> explicit_queries;

    if (const char* env = std::getenv("MCL_MAX_ATOMS")) {
        max_atoms = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
        if (max_atoms == 0) max_atoms = 20;
    }

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--kb", kb_path, "knowledge base file")->required();
        cmd->add_flag("--json", json_mode, "emit JSON instead of text");
        cmd->add_option("--max-atoms", max_atoms, "cap on independent signature atoms");
        cmd->add_option("--max-nodes", max_nodes, "cap on tableau nodes per run");
    };

    CLI::App* check = app.add_subcommand("check", "classical consistency and structural diagnostics");
    add_common(check);

    CLI::App* rank = app.add_subcommand("rank", "print the rational-closure rank table");
    add_common(rank);

    CLI::App* entail = app.add_subcommand("entail", "answer a query");
    add_common(entail);
    entail->add_option("--query", query, "query string, e.g. \"T(C) <= D.\"")->required();
    entail->add_option("--mode", mode, "mcl | mclt | classical | module=<name>")->required();

    CLI::App* model = app.add_subcommand("model", "dump the canonical domain, vectors and global order");
    add_common(model);
    model->add_option("--query", query, "optional query folded into the signature");

    CLI::App* oracle = app.add_subcommand("oracle-compare",
                                          "cross-check the engine against the propositional oracle");
    add_common(oracle);
    oracle->add_option("--query", explicit_queries, "explicit query (repeatable)");
    oracle->add_option("--random", random_queries, "number of random queries to generate");
    oracle->add_option("--seed", seed, "seed for random query generation");

    CLI11_PARSE(app, argc, argv);

    KbHandle handle;
    if (int rc = load_kb(kb_path, max_atoms, max_nodes, handle); rc != kExitEntailed) return rc;

    if (check->parsed()) {
        int consistent = 0;
        OwnedString json, err;
        mcl_status status = mcl_kb_check(handle.kb, &consistent, &json.s, &err.s);
        if (status != MCL_OK) return report_failure(status, err.s);
        print_json_or_text(json.s, json_mode, [&](const nlohmann::json& j) {
            std::cout << (consistent ? "consistent" : "inconsistent") << std::endl;
            for (const auto& d : j["diagnostics"])
                std::cout << d["severity"].get<std::string>() << ": " << d["message"].get<std::string>()
                          << std::endl;
        });
        return consistent ? kExitEntailed : kExitNotEntailed;
    }

    if (rank->parsed()) {
        OwnedString json, err;
        mcl_status status = mcl_kb_rank_table(handle.kb, &json.s, &err.s);
        if (status != MCL_OK) return report_failure(status, err.s);
        print_json_or_text(json.s, json_mode, [&](const nlohmann::json& j) {
            std::cout << "order: " << j["order"].get<int>() << std::endl;
            for (const auto& [name, r] : j["concepts"].items())
                std::cout << rank_to_text(r) << "  " << name << std::endl;
            for (const auto& d : j["defaults"])
                std::cout << rank_to_text(d["rank"]) << "  " << d["inclusion"].get<std::string>() << std::endl;
        });
        return kExitEntailed;
    }

    if (entail->parsed()) {
        mcl_answer answer;
        OwnedString json, err;
        mcl_status status = mcl_kb_entail(handle.kb, query.c_str(), mode.c_str(), &answer, &json.s, &err.s);
        if (status != MCL_OK) return report_failure(status, err.s);
        print_json_or_text(json.s, json_mode, [&](const nlohmann::json& j) {
            std::cout << j["verdict"].get<std::string>() << std::endl;
            if (!j["witness"].is_null()) {
                std::cout << "witness:" << std::endl;
                for (const auto& [name, val] : j["witness"].items())
                    std::cout << "  " << name << " = " << (val.get<bool>() ? "true" : "false") << std::endl;
            }
            if (j.contains("violatedInclusions"))
                for (const auto& d : j["violatedInclusions"])
                    std::cout << "violated: " << d.get<std::string>() << std::endl;
        });
        switch (answer) {
            case MCL_ANSWER_ENTAILED:
                return kExitEntailed;
            case MCL_ANSWER_NOT_ENTAILED:
                return kExitNotEntailed;
            case MCL_ANSWER_VACUOUS:
                return kExitVacuous;
        }
        return kExitError;
    }

    if (model->parsed()) {
        OwnedString json, err;
        mcl_status status = mcl_kb_model(handle.kb, query.empty() ? nullptr : query.c_str(), &json.s, &err.s);
        if (status != MCL_OK) return report_failure(status, err.s);
        std::cout << json.s << std::endl;
        return kExitEntailed;
    }

    if (oracle->parsed()) {
        std::vector<const char*> q;
        for (const auto& s : explicit_queries) q.push_back(s.c_str());
        uint32_t disagreements = 0;
        OwnedString json, err;
        mcl_status status =
            mcl_kb_oracle_compare(handle.kb, q.empty() ? nullptr : q.data(), static_cast<uint32_t>(q.size()),
                                  random_queries, seed, &disagreements, &json.s, &err.s);
        if (status != MCL_OK) return report_failure(status, err.s);
        print_json_or_text(json.s, json_mode, [&](const nlohmann::json& j) {
            for (const auto& item : j["queries"])
                std::cout << (item["agree"].get<bool>() ? "agree    " : "DISAGREE ")
                          << item["query"].get<std::string>() << std::endl;
            std::cout << "disagreements: " << j["disagreements"].get<std::size_t>() << std::endl;
            std::cout << "ranks agree: " << (j["ranksAgree"].get<bool>() ? "yes" : "no") << std::endl;
        });
        return disagreements == 0 ? kExitEntailed : kExitNotEntailed;
    }

    return kExitError;
}
