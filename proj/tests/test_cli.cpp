#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "zetaglue/cache.hpp"
#include "zetaglue/config.hpp"
#include "zetaglue/errors.hpp"
#include "zetaglue/report.hpp"

using namespace zetaglue;
namespace fs = std::filesystem;

TEST_CASE("run config parsing and validation") {
    nlohmann::json j;
    j["experiment"] = "glue";
    j["geometry"]["cross_section"]["kind"] = "circle";
    j["geometry"]["cross_section"]["holonomy"] = 0.5;
    j["numeric"]["r_grid"] = {2.0, 4.0, 8.0};
    RunConfig cfg = RunConfig::from_json(j);
    CHECK(cfg.geometry.cross_section.kind() == CrossSection::Kind::circle);
    CHECK(cfg.geometry.cross_section.holonomy() == 0.5);
    CHECK(cfg.numeric.r_grid == std::vector<double>{2.0, 4.0, 8.0});
    CHECK(cfg.numeric.tol_fixed == 1e-6);  // defaults stay

    nlohmann::json bad = j;
    bad["geometry"]["typo_key"] = 1;
    CHECK_THROWS_AS(RunConfig::from_json(bad), ConfigError);
    bad = j;
    bad["numeric"]["tol"] = 1.0;  // unknown numeric key
    CHECK_THROWS_AS(RunConfig::from_json(bad), ConfigError);
    bad = j;
    bad["experiment"] = "nonsense";
    CHECK_THROWS_AS(RunConfig::from_json(bad), ConfigError);
    bad = j;
    bad["output"]["format"] = "xml";
    CHECK_THROWS_AS(RunConfig::from_json(bad), ConfigError);
    bad = j;
    bad["geometry"]["length_a"] = -1.0;
    CHECK_THROWS_AS(RunConfig::from_json(bad), ConfigError);
}

TEST_CASE("echo materializes every default and round-trips") {
    nlohmann::json j;
    j["experiment"] = "torsion";
    RunConfig cfg = RunConfig::from_json(j);
    nlohmann::json echo = cfg.echo();
    CHECK(echo.at("numeric").at("cutoff") == 150.0);
    CHECK(echo.at("numeric").at("r_grid").size() == 4);
    CHECK(echo.at("geometry").at("cross_section").at("kind") == "point");
    RunConfig back = RunConfig::from_json(echo);
    CHECK(back.cache_key_material() == cfg.cache_key_material());
}

TEST_CASE("cache keys depend on numeric parameters") {
    nlohmann::json j;
    j["experiment"] = "glue";
    RunConfig a = RunConfig::from_json(j);
    j["numeric"]["tol_fixed"] = 1e-8;
    RunConfig b = RunConfig::from_json(j);
    CHECK(a.cache_key_material() != b.cache_key_material());
    // output paths do not
    j = nlohmann::json();
    j["experiment"] = "glue";
    j["output"]["dir"] = "elsewhere";
    RunConfig c = RunConfig::from_json(j);
    CHECK(a.cache_key_material() == c.cache_key_material());
}

TEST_CASE("cache store, hit, corruption and version discipline") {
    fs::path dir = fs::temp_directory_path() / "zetaglue-cache-test";
    fs::remove_all(dir);
    ResultCache cache(dir.string());
    Report rep;
    ReportRow row;
    row.identity = "x";
    row.lhs = Complex(1.25, -0.5);
    row.rhs = Complex(1.25, 0.0);
    row.residual = 0.5;
    row.tolerance = 1.0;
    rep.rows.push_back(row);
    nlohmann::json payload = report_rows_to_json(rep);
    cache.store("key material", payload);

    auto hit = cache.lookup("key material");
    REQUIRE(hit.has_value());
    CHECK(hit->dump() == payload.dump());  // byte-identical payload
    Report round = report_rows_from_json(*hit);
    CHECK(round.rows[0].lhs == row.lhs);
    CHECK(!cache.lookup("other key").has_value());

    // corrupt the entry: it must be discarded, not trusted
    for (const auto& f : fs::directory_iterator(dir)) {
        std::ofstream out(f.path());
        out << "{not json";
    }
    CHECK(!cache.lookup("key material").has_value());

    // version mismatch invalidates
    cache.store("key material", payload);
    for (const auto& f : fs::directory_iterator(dir)) {
        std::ifstream in(f.path());
        nlohmann::json entry = nlohmann::json::parse(in);
        in.close();
        entry["version"] = "zetaglue-0.0.0";
        std::ofstream out(f.path());
        out << entry.dump();
    }
    CHECK(!cache.lookup("key material").has_value());
    fs::remove_all(dir);
}

TEST_CASE("csv serialization") {
    Report rep;
    ReportRow row;
    row.identity = "gluing";
    row.r = 2.0;
    row.lhs = Complex(0.5, 0.0);
    row.rhs = Complex(0.5, -1.0);
    row.residual = 1.0;
    row.tolerance = 1e-6;
    row.pass = false;
    rep.rows.push_back(row);
    std::string csv = report_to_csv(rep);
    CHECK(csv.find("identity,r,lhs,rhs,residual,tolerance,pass") == 0);
    CHECK(csv.find("gluing,2,0.5,0.5-1i,1,9.9999999999999995e-07,false") != std::string::npos);
}

TEST_CASE("reports are deterministic") {
    GeometryConfig g;
    Report a = check_gluing(g), b = check_gluing(g);
    CHECK(report_rows_to_json(a).dump() == report_rows_to_json(b).dump());
}
