#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "zetaglue/glue.hpp"

namespace zetaglue {

struct NumericConfig {
    double cutoff = 150.0;
    double tol_exact = 1e-10;
    double tol_fixed = 1e-6;
    double tol_extrapolated = 1e-3;
    std::vector<double> r_grid = {1.0, 2.0, 4.0, 8.0};
    double t = 1.0;  // power-gluing shift
    Tolerances tolerances() const { return {tol_exact, tol_fixed, tol_extrapolated}; }
    EngineOptions engine() const {
        EngineOptions o;
        o.cutoff = cutoff;
        return o;
    }
};

struct OutputConfig {
    std::string dir = "out";
    std::string format = "both";  // json | csv | both
};

struct RunConfig {
    std::string experiment;  // spectrum zeta logdet dtn symbols glue power-glue adiabatic torsion
    std::string identity = "thm1.4";  // adiabatic selector
    GeometryConfig geometry;
    NumericConfig numeric;
    OutputConfig output;
    bool no_cache = false;

    // Parses and validates; unknown keys are rejected.
    static RunConfig from_json(const nlohmann::json& j);
    // Fully-specified echo: every default is materialized so a report alone
    // reproduces the run.
    nlohmann::json echo() const;
    // Canonical serialization of everything that determines the result.
    std::string cache_key_material() const;
};

CrossSection cross_section_from_json(const nlohmann::json& j);
nlohmann::json cross_section_to_json(const CrossSection& y);

}  // namespace zetaglue
