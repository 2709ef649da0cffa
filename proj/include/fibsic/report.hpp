// SPDX-License-Identifier: Apache-2.0
//
// Structured run reports: JSON serialization of search and verification
// results with a stable field set (schema documented in the README).

#pragma once

#include <fibsic/search.hpp>
#include <fibsic/verify.hpp>

#include <json.hpp>

#include <optional>
#include <string>

namespace fibsic {

struct RunReport {
    struct Search {
        int d = 0;
        std::string symmetry = "Ff";
        std::uint64_t seed = 0;
        int max_restarts = 0;
        int max_iterations = 0;
        double convergence_gap = 0.0;
        int restarts_used = 0;
        int winning_restart = -1;
        bool converged = false;
        double achieved_potential = 0.0;
        double welch_bound = 0.0;
        double gap = 0.0;
        int coneigen_order = 0;
        int coneigen_rank = 0;
        double coneigen_residual = 0.0;
    };
    struct Verification {
        int d = 0;
        double tolerance = 0.0;
        bool passed = false;
        double max_gram_deviation = 0.0;
        double overlap_modulus_deviation = 0.0;
        double coneigen_residual_ff = 0.0;
        std::optional<long long> detected_antiunitary_order;
        std::optional<int> phase_divisor;
        std::optional<double> max_phase_on_divisor;
        std::vector<double> phases;  // row-major (a,b), entry (0,0) is 0
    };
    std::optional<Search> search;
    std::optional<Verification> verification;
};

inline nlohmann::json to_json(const RunReport& r) {
    nlohmann::json j;
    j["schema"] = "fibsic.report.v1";
    if (r.search) {
        const auto& s = *r.search;
        j["search"] = {{"d", s.d},
                       {"symmetry", s.symmetry},
                       {"seed", s.seed},
                       {"max_restarts", s.max_restarts},
                       {"max_iterations", s.max_iterations},
                       {"convergence_gap", s.convergence_gap},
                       {"restarts_used", s.restarts_used},
                       {"winning_restart", s.winning_restart},
                       {"converged", s.converged},
                       {"achieved_potential", s.achieved_potential},
                       {"welch_bound", s.welch_bound},
                       {"gap", s.gap},
                       {"coneigen_order", s.coneigen_order},
                       {"coneigen_rank", s.coneigen_rank},
                       {"coneigen_residual", s.coneigen_residual}};
    }
    if (r.verification) {
        const auto& v = *r.verification;
        nlohmann::json jv = {{"d", v.d},
                             {"tolerance", v.tolerance},
                             {"passed", v.passed},
                             {"max_gram_deviation", v.max_gram_deviation},
                             {"overlap_modulus_deviation", v.overlap_modulus_deviation},
                             {"coneigen_residual_ff", v.coneigen_residual_ff},
                             {"phases", v.phases}};
        if (v.detected_antiunitary_order) jv["detected_antiunitary_order"] = *v.detected_antiunitary_order;
        if (v.phase_divisor) {
            jv["phase_divisor"] = *v.phase_divisor;
            jv["max_phase_on_divisor"] = v.max_phase_on_divisor.value_or(0.0);
        }
        j["verification"] = jv;
    }
    return j;
}

inline RunReport report_from_json(const nlohmann::json& j) {
    if (j.value("schema", "") != "fibsic.report.v1")
        throw std::runtime_error("report_from_json: unknown schema");
    RunReport r;
    if (j.contains("search")) {
        const auto& js = j.at("search");
        RunReport::Search s;
        s.d = js.at("d");
        s.symmetry = js.at("symmetry");
        s.seed = js.at("seed");
        s.max_restarts = js.at("max_restarts");
        s.max_iterations = js.at("max_iterations");
        s.convergence_gap = js.at("convergence_gap");
        s.restarts_used = js.at("restarts_used");
        s.winning_restart = js.at("winning_restart");
        s.converged = js.at("converged");
        s.achieved_potential = js.at("achieved_potential");
        s.welch_bound = js.at("welch_bound");
        s.gap = js.at("gap");
        s.coneigen_order = js.at("coneigen_order");
        s.coneigen_rank = js.at("coneigen_rank");
        s.coneigen_residual = js.at("coneigen_residual");
        r.search = s;
    }
    if (j.contains("verification")) {
        const auto& jv = j.at("verification");
        RunReport::Verification v;
        v.d = jv.at("d");
        v.tolerance = jv.at("tolerance");
        v.passed = jv.at("passed");
        v.max_gram_deviation = jv.at("max_gram_deviation");
        v.overlap_modulus_deviation = jv.at("overlap_modulus_deviation");
        v.coneigen_residual_ff = jv.at("coneigen_residual_ff");
        v.phases = jv.at("phases").get<std::vector<double>>();
        if (jv.contains("detected_antiunitary_order"))
            v.detected_antiunitary_order = jv.at("detected_antiunitary_order").get<long long>();
        if (jv.contains("phase_divisor")) {
            v.phase_divisor = jv.at("phase_divisor").get<int>();
            v.max_phase_on_divisor = jv.at("max_phase_on_divisor").get<double>();
        }
        r.verification = v;
    }
    return r;
}

}  // namespace fibsic
