#include "zetaglue/config.hpp"

#include <set>

#include "zetaglue/errors.hpp"

namespace zetaglue {

namespace {

void require_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                  const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
}

template <typename T>
T get_or(const nlohmann::json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config key '" + key + "': " + e.what());
    }
}

}  // namespace

CrossSection cross_section_from_json(const nlohmann::json& j) {
    require_keys(j, {"kind", "circumference", "holonomy", "beta", "eigenvalues", "formal_dim"},
                 "cross_section");
    std::string kind = get_or<std::string>(j, "kind", "point");
    if (kind == "point") return CrossSection::point();
    if (kind == "circle")
        return CrossSection::circle(get_or<double>(j, "circumference", 2.0 * M_PI),
                                    get_or<double>(j, "holonomy", 0.0));
    if (kind == "shifted")
        return CrossSection::shifted_integers(get_or<double>(j, "beta", 0.25));
    if (kind == "list") {
        if (!j.contains("eigenvalues")) throw ConfigError("cross_section list: eigenvalues required");
        std::vector<EigenEntry> entries;
        for (const auto& e : j.at("eigenvalues")) {
            if (!e.is_array() || e.size() != 2)
                throw ConfigError("cross_section list: entries are [lambda, multiplicity]");
            entries.push_back({e[0].get<double>(), e[1].get<int>()});
        }
        return CrossSection::finite_list(std::move(entries), get_or<int>(j, "formal_dim", 1));
    }
    throw ConfigError("cross_section: unknown kind '" + kind + "'");
}

nlohmann::json cross_section_to_json(const CrossSection& y) {
    nlohmann::json j;
    switch (y.kind()) {
        case CrossSection::Kind::point:
            j["kind"] = "point";
            break;
        case CrossSection::Kind::circle:
            j["kind"] = "circle";
            j["circumference"] = y.circumference();
            j["holonomy"] = y.holonomy();
            break;
        case CrossSection::Kind::shifted_integers:
            j["kind"] = "shifted";
            j["beta"] = y.beta();
            break;
        case CrossSection::Kind::finite_list: {
            j["kind"] = "list";
            j["formal_dim"] = y.dim_y();
            nlohmann::json entries = nlohmann::json::array();
            for (const EigenEntry& e : y.complete_spectrum())
                entries.push_back({e.lambda, e.multiplicity});
            j["eigenvalues"] = entries;
            break;
        }
        case CrossSection::Kind::empty:
            j["kind"] = "list";
            j["formal_dim"] = y.dim_y();
            j["eigenvalues"] = nlohmann::json::array();
            break;
    }
    return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
    require_keys(j, {"experiment", "identity", "geometry", "numeric", "output", "no_cache"},
                 "config");
    RunConfig cfg;
    cfg.experiment = get_or<std::string>(j, "experiment", "");
    static const std::set<std::string> known{"spectrum", "zeta",     "logdet",   "dtn",     "symbols",
                                             "glue",     "power-glue", "adiabatic", "torsion"};
    if (!known.count(cfg.experiment))
        throw ConfigError("config: unknown experiment '" + cfg.experiment + "'");
    cfg.identity = get_or<std::string>(j, "identity", cfg.identity);
    cfg.no_cache = get_or<bool>(j, "no_cache", false);

    if (j.contains("geometry")) {
        const auto& g = j.at("geometry");
        require_keys(g, {"cross_section", "length_a", "length_b", "r", "form_graded"}, "geometry");
        if (g.contains("cross_section"))
            cfg.geometry.cross_section = cross_section_from_json(g.at("cross_section"));
        cfg.geometry.length_a = get_or<double>(g, "length_a", cfg.geometry.length_a);
        cfg.geometry.length_b = get_or<double>(g, "length_b", cfg.geometry.length_b);
        cfg.geometry.r = get_or<double>(g, "r", cfg.geometry.r);
        cfg.geometry.form_graded = get_or<bool>(g, "form_graded", cfg.geometry.form_graded);
        if (cfg.geometry.length_a <= 0.0 || cfg.geometry.length_b <= 0.0 || cfg.geometry.r <= 0.0)
            throw ConfigError("geometry: lengths and r must be positive");
    }
    if (j.contains("numeric")) {
        const auto& n = j.at("numeric");
        require_keys(n, {"cutoff", "tol_exact", "tol_fixed", "tol_extrapolated", "r_grid", "t"},
                     "numeric");
        cfg.numeric.cutoff = get_or<double>(n, "cutoff", cfg.numeric.cutoff);
        cfg.numeric.tol_exact = get_or<double>(n, "tol_exact", cfg.numeric.tol_exact);
        cfg.numeric.tol_fixed = get_or<double>(n, "tol_fixed", cfg.numeric.tol_fixed);
        cfg.numeric.tol_extrapolated =
            get_or<double>(n, "tol_extrapolated", cfg.numeric.tol_extrapolated);
        cfg.numeric.t = get_or<double>(n, "t", cfg.numeric.t);
        if (n.contains("r_grid")) {
            cfg.numeric.r_grid.clear();
            for (const auto& v : n.at("r_grid")) cfg.numeric.r_grid.push_back(v.get<double>());
        }
    }
    if (j.contains("output")) {
        const auto& o = j.at("output");
        require_keys(o, {"dir", "format"}, "output");
        cfg.output.dir = get_or<std::string>(o, "dir", cfg.output.dir);
        cfg.output.format = get_or<std::string>(o, "format", cfg.output.format);
        if (cfg.output.format != "json" && cfg.output.format != "csv" &&
            cfg.output.format != "both")
            throw ConfigError("output: format is json|csv|both");
    }
    return cfg;
}

nlohmann::json RunConfig::echo() const {
    nlohmann::json j;
    j["experiment"] = experiment;
    j["identity"] = identity;
    j["no_cache"] = no_cache;
    j["geometry"]["cross_section"] = cross_section_to_json(geometry.cross_section);
    j["geometry"]["length_a"] = geometry.length_a;
    j["geometry"]["length_b"] = geometry.length_b;
    j["geometry"]["r"] = geometry.r;
    j["geometry"]["form_graded"] = geometry.form_graded;
    j["numeric"]["cutoff"] = numeric.cutoff;
    j["numeric"]["tol_exact"] = numeric.tol_exact;
    j["numeric"]["tol_fixed"] = numeric.tol_fixed;
    j["numeric"]["tol_extrapolated"] = numeric.tol_extrapolated;
    j["numeric"]["r_grid"] = numeric.r_grid;
    j["numeric"]["t"] = numeric.t;
    j["output"]["dir"] = output.dir;
    j["output"]["format"] = output.format;
    return j;
}

std::string RunConfig::cache_key_material() const {
    nlohmann::json j = echo();
    j.erase("output");    // paths do not affect results
    j.erase("no_cache");
    return j.dump();
}

}  // namespace zetaglue
