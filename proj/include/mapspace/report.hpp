#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "mapspace/reduction.hpp"

namespace mapspace {

/// The structured result of one CLI command. Human and JSON renderings are
/// produced from this one value, so their numeric content agrees by
/// construction; the timing field is the only nondeterministic entry.
struct Report {
    std::string command;

    struct Input {
        std::string role;  // "model" | "X" | "Y"
        std::string name;
        std::string kind;  // "cdga" | "algebra"
        std::string digest;
    };
    std::vector<Input> inputs;

    std::optional<int> dl;  // DL_INFINITE encodes infinity
    std::optional<int> cup, conn, dim, nilpotency;

    std::string verdict;
    std::vector<int> generators;  // degrees with multiplicity

    struct WitnessOut {
        std::string y;
        int r = 0;
        std::string omega;
        int degree = 0;  // obstruction degree
    };
    std::optional<WitnessOut> witness;

    struct StageOut {
        int k = 0;
        int power = 0;
        bool base = false;
        int fiber_dim = 0;
        std::vector<int> fiber_degrees;
        std::vector<int> quotient_degrees;  // stage model generators
        bool zero_differential = false;
        bool quasi_iso = false;
    };
    struct TowerOut {
        std::vector<StageOut> stages;
        int s = 0;
        int achieved = 0;
        int m_eff = 0;
        int r = 0;
        bool matches_paper_s = false;
        bool hypothesis_met = true;
    };
    std::optional<TowerOut> tower;

    double timings_ms = 0.0;

    // command-specific payload (Betti tables, generator tables, emitted text)
    nlohmann::json data = nlohmann::json::object();
    std::vector<std::string> detail;  // extra human lines mirroring `data`
};

std::string render_human(const Report& r);
nlohmann::json render_json(const Report& r);

}  // namespace mapspace
