#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "zetaglue/cache.hpp"
#include "zetaglue/config.hpp"
#include "zetaglue/errors.hpp"
#include "zetaglue/report.hpp"
#include "zetaglue/symbols.hpp"

namespace {

using namespace zetaglue;
namespace fs = std::filesystem;

// Exit codes: 0 all pass, 1 usage/config error, 2 hypothesis failure,
// 3 tolerance failure.
enum ExitCode { kOk = 0, kUsage = 1, kHypothesis = 2, kTolerance = 3 };

Report run_spectrum(const RunConfig& cfg) {
    Report rep;
    EigenvalueStream s = cfg.geometry.cross_section.enumerate(cfg.numeric.cutoff);
    int i = 0;
    for (const EigenEntry& e : s.entries) {
        ReportRow row;
        row.identity = "lambda[" + std::to_string(i++) + "]";
        row.lhs = e.lambda;
        row.rhs = e.lambda;
        row.note = "multiplicity " + std::to_string(e.multiplicity);
        rep.rows.push_back(row);
    }
    return rep;
}

// Closed-form references where the model has one.
Report run_zeta(const RunConfig& cfg) {
    Report rep;
    const CrossSection& y = cfg.geometry.cross_section;
    EngineOptions opt = cfg.numeric.engine();
    ZetaResult z = zeta_invariants(y, y.kernel_dim() > 0, opt);
    ReportRow zrow;
    zrow.identity = "zeta0";
    zrow.lhs = z.zeta0;
    zrow.rhs = z.zeta0;
    zrow.note = "error bound " + std::to_string(z.error_bound);
    rep.rows.push_back(zrow);

    bool have_oracle = true;
    double oracle = 0.0;
    switch (y.kind()) {
        case CrossSection::Kind::circle:
            if (y.holonomy() == 0.0) {
                oracle = 2.0 * std::log(y.circumference());  // Det' = l^2
            } else {
                oracle = 2.0 * std::log(2.0 * std::sin(M_PI * y.holonomy()));
            }
            break;
        case CrossSection::Kind::shifted_integers:
            oracle = 0.5 * std::log(2.0 * M_PI) - std::lgamma(y.beta());
            break;
        case CrossSection::Kind::point:
            oracle = 0.0;
            break;
        default:
            have_oracle = false;
    }
    ReportRow det;
    det.identity = "log-det";
    det.lhs = z.log_det;
    det.rhs = have_oracle ? Complex(oracle) : z.log_det;
    det.residual = std::abs(det.lhs - det.rhs);
    det.tolerance = have_oracle ? cfg.numeric.tol_exact : det.tolerance;
    det.pass = std::isnan(det.tolerance) || det.residual <= det.tolerance;
    det.note = have_oracle ? "closed-form reference" : "no closed form for this model";
    rep.rows.push_back(det);

    Report pi0 = zero_coefficient_report(cfg.geometry, cfg.numeric.tolerances(), opt);
    rep.rows.insert(rep.rows.end(), pi0.rows.begin(), pi0.rows.end());
    return rep;
}

Report run_logdet(const RunConfig& cfg) {
    Report rep;
    const CrossSection& y = cfg.geometry.cross_section;
    EngineOptions opt = cfg.numeric.engine();
    for (double t : {cfg.numeric.t, 2.0 * cfg.numeric.t, 5.0 * cfg.numeric.t}) {
        RayShift shift = RayShift::make(0.0, t);
        ReportRow row;
        row.identity = "log-det(shift t=" + std::to_string(t) + ")";
        row.lhs = log_det_shifted(y, shift, opt);
        row.rhs = row.lhs;
        rep.rows.push_back(row);
    }
    return rep;
}

Report run_dtn(const RunConfig& cfg) {
    Report rep;
    const CrossSection& y = cfg.geometry.cross_section;
    const GeometryConfig& g = cfg.geometry;
    EngineOptions opt = cfg.numeric.engine();
    ReportRow det;
    det.identity = "log-det R";
    det.lhs = dtn_log_det(DtnFamily::r_join(g.length_a, g.length_b), y, opt);
    det.rhs = det.lhs;
    rep.rows.push_back(det);

    DtnFamily block = DtnFamily::r_mrr(
        g.r, dtn_to_map(DtnFamily::q_cylinder(g.length_a, BoundaryCondition::dirichlet)),
        dtn_to_map(DtnFamily::q_cylinder(g.length_b, BoundaryCondition::dirichlet)));
    ReportRow mbe;
    mbe.identity = "min-block-eigen";
    mbe.lhs = min_block_eigen(block, y, 200.0);
    mbe.rhs = mbe.lhs;
    mbe.pass = mbe.lhs.real() > 0.0;
    mbe.tolerance = 0.0;
    rep.rows.push_back(mbe);
    return rep;
}

Report run_symbols(const RunConfig& cfg) {
    (void)cfg;
    Report rep;
    SymbolExpansion e = ricatti_expansion(4);
    for (size_t k = 0; k < e.orders.size(); ++k) {
        ReportRow row;
        row.identity = "q_{" + std::to_string(1 - static_cast<int>(k)) + "}";
        row.note = symbol_to_string(e.orders[k]);
        rep.rows.push_back(row);
    }
    SmoothingReport sm = smoothing_decay_check(1.0, 1.0, 400.0, 5);
    ReportRow row;
    row.identity = "smoothing-sup";
    row.lhs = sm.sup_lambda;
    row.rhs = sm.sup_lambda;
    row.pass = sm.decreasing_after_sup;
    row.tolerance = 0.0;
    row.note = "weighted sup " + std::to_string(sm.sup_weighted);
    rep.rows.push_back(row);
    return rep;
}

Report dispatch(const RunConfig& cfg) {
    const Tolerances tol = cfg.numeric.tolerances();
    EngineOptions opt = cfg.numeric.engine();
    if (cfg.experiment == "spectrum") return run_spectrum(cfg);
    if (cfg.experiment == "zeta") return run_zeta(cfg);
    if (cfg.experiment == "logdet") return run_logdet(cfg);
    if (cfg.experiment == "dtn") return run_dtn(cfg);
    if (cfg.experiment == "symbols") return run_symbols(cfg);
    if (cfg.experiment == "glue") return check_gluing(cfg.geometry, tol, opt);
    if (cfg.experiment == "power-glue")
        return check_power_gluing_m2(cfg.geometry, cfg.numeric.t, tol, opt);
    if (cfg.experiment == "adiabatic") {
        AdiabaticIdentity id;
        if (cfg.identity == "cor4.2") id = AdiabaticIdentity::cor42;
        else if (cfg.identity == "thm1.4") id = AdiabaticIdentity::thm14;
        else if (cfg.identity == "cor1.5.1") id = AdiabaticIdentity::cor151;
        else if (cfg.identity == "cor1.5.2") id = AdiabaticIdentity::cor152;
        else if (cfg.identity == "cor4.7") id = AdiabaticIdentity::cor47;
        else throw ConfigError("adiabatic: unknown identity '" + cfg.identity + "'");
        return adiabatic_limit(cfg.geometry, cfg.numeric.r_grid, id, tol, opt);
    }
    if (cfg.experiment == "torsion")
        return torsion_report(cfg.geometry, cfg.numeric.r_grid, tol, opt);
    throw ConfigError("unknown experiment '" + cfg.experiment + "'");
}

void write_outputs(const RunConfig& cfg, const Report& rep, bool from_cache) {
    fs::create_directories(cfg.output.dir);
    nlohmann::json doc;
    doc["version"] = kToolVersion;
    doc["config"] = cfg.echo();
    doc["rows"] = report_rows_to_json(rep);
    doc["all_pass"] = rep.all_pass();
    doc["from_cache"] = from_cache;
    doc["timestamp"] =
        std::to_string(std::chrono::duration_cast<std::chrono::seconds>(
                           std::chrono::system_clock::now().time_since_epoch())
                           .count());
    fs::path base = fs::path(cfg.output.dir) / cfg.experiment;
    if (cfg.output.format == "json" || cfg.output.format == "both") {
        std::ofstream out(base.string() + ".json");
        out << doc.dump(2) << "\n";
    }
    if (cfg.output.format == "csv" || cfg.output.format == "both") {
        std::ofstream out(base.string() + ".csv");
        out << report_to_csv(rep);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"zeta-determinant gluing laboratory"};
    app.require_subcommand(1);

    std::string config_path, fiber = "point", out_dir, format, identity, r_grid_arg;
    double circumference = 2.0 * M_PI, holonomy = 0.0, beta = 0.25;
    double length_a = -1.0, length_b = -1.0, r_param = -1.0, cutoff = -1.0, tol = -1.0,
           t_param = -1.0;
    bool no_cache = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file");
        sub->add_option("--fiber", fiber, "cross-section: point|circle|shifted");
        sub->add_option("--circumference", circumference, "circle circumference");
        sub->add_option("--holonomy", holonomy, "circle holonomy in [0,1)");
        sub->add_option("--beta", beta, "shifted-integers offset");
        sub->add_option("--length-a", length_a, "length of the first piece");
        sub->add_option("--length-b", length_b, "length of the second piece");
        sub->add_option("--r", r_param, "stretch parameter");
        sub->add_option("--cutoff", cutoff, "eigenvalue cutoff");
        sub->add_option("--tol", tol, "override the fixed-r tolerance");
        sub->add_option("--t", t_param, "power-gluing shift");
        sub->add_option("--r-grid", r_grid_arg, "comma-separated r grid");
        sub->add_option("--identity", identity, "adiabatic identity selector");
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--format", format, "json|csv|both");
        sub->add_flag("--no-cache", no_cache, "bypass the result cache");
    };
    for (const char* name : {"spectrum", "zeta", "logdet", "dtn", "symbols", "glue", "power-glue",
                             "adiabatic", "torsion"})
        add_common(app.add_subcommand(name));

    CLI11_PARSE(app, argc, argv);

    try {
        nlohmann::json j;
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw ConfigError("cannot open config file " + config_path);
            j = nlohmann::json::parse(in);
        }
        j["experiment"] = app.get_subcommands().front()->get_name();
        RunConfig cfg = RunConfig::from_json(j);

        // flag overrides
        if (app.get_subcommands().front()->count("--fiber") ||
            !j.contains("geometry")) {
            if (fiber == "point") cfg.geometry.cross_section = CrossSection::point();
            else if (fiber == "circle")
                cfg.geometry.cross_section = CrossSection::circle(circumference, holonomy);
            else if (fiber == "shifted")
                cfg.geometry.cross_section = CrossSection::shifted_integers(beta);
            else throw ConfigError("unknown fiber '" + fiber + "'");
        }
        if (length_a > 0.0) cfg.geometry.length_a = length_a;
        if (length_b > 0.0) cfg.geometry.length_b = length_b;
        if (r_param > 0.0) cfg.geometry.r = r_param;
        if (cutoff > 0.0) cfg.numeric.cutoff = cutoff;
        if (tol > 0.0) cfg.numeric.tol_fixed = tol;
        if (t_param > 0.0) cfg.numeric.t = t_param;
        if (!r_grid_arg.empty()) {
            cfg.numeric.r_grid.clear();
            std::stringstream ss(r_grid_arg);
            std::string item;
            while (std::getline(ss, item, ',')) cfg.numeric.r_grid.push_back(std::stod(item));
        }
        if (!identity.empty()) cfg.identity = identity;
        if (!out_dir.empty()) cfg.output.dir = out_dir;
        if (!format.empty()) cfg.output.format = format;
        if (no_cache) cfg.no_cache = true;

        ResultCache cache(ResultCache::default_dir());
        std::string key = cfg.cache_key_material();
        Report rep;
        bool from_cache = false;
        if (!cfg.no_cache) {
            if (auto hit = cache.lookup(key)) {
                rep = report_rows_from_json(*hit);
                from_cache = true;
            }
        }
        if (!from_cache) {
            rep = dispatch(cfg);
            if (!cfg.no_cache) cache.store(key, report_rows_to_json(rep));
        }
        write_outputs(cfg, rep, from_cache);
        for (const ReportRow& row : rep.rows) {
            std::cout << row.identity << ": residual " << row.residual
                      << (row.pass ? " [pass]" : " [FAIL]") << "\n";
        }
        return rep.all_pass() ? kOk : kTolerance;
    } catch (const HypothesisError& e) {
        std::cerr << "hypothesis failure: " << e.what() << "\n";
        return kHypothesis;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
}
