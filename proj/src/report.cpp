#include "zetaglue/report.hpp"

#include <cmath>
#include <sstream>

namespace zetaglue {

namespace {

nlohmann::json num_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

double null_or_num(const nlohmann::json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return j.get<double>();
}

}  // namespace

std::string format_complex(Complex v) {
    std::ostringstream os;
    os.precision(17);
    if (v.imag() == 0.0) {
        os << v.real();
    } else {
        os << v.real() << (v.imag() < 0 ? "-" : "+") << std::abs(v.imag()) << "i";
    }
    return os.str();
}

nlohmann::json report_rows_to_json(const Report& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ReportRow& r : report.rows) {
        nlohmann::json row;
        row["identity"] = r.identity;
        row["r"] = num_or_null(r.r);
        row["lhs"] = {r.lhs.real(), r.lhs.imag()};
        row["rhs"] = {r.rhs.real(), r.rhs.imag()};
        row["residual"] = r.residual;
        row["tolerance"] = num_or_null(r.tolerance);
        row["pass"] = r.pass;
        row["note"] = r.note;
        rows.push_back(std::move(row));
    }
    return rows;
}

Report report_rows_from_json(const nlohmann::json& rows) {
    Report rep;
    for (const auto& row : rows) {
        ReportRow r;
        r.identity = row.at("identity").get<std::string>();
        r.r = null_or_num(row.at("r"));
        r.lhs = Complex(row.at("lhs")[0].get<double>(), row.at("lhs")[1].get<double>());
        r.rhs = Complex(row.at("rhs")[0].get<double>(), row.at("rhs")[1].get<double>());
        r.residual = row.at("residual").get<double>();
        r.tolerance = null_or_num(row.at("tolerance"));
        r.pass = row.at("pass").get<bool>();
        r.note = row.at("note").get<std::string>();
        rep.rows.push_back(std::move(r));
    }
    return rep;
}

std::string report_to_csv(const Report& report) {
    std::ostringstream os;
    os.precision(17);
    os << "identity,r,lhs,rhs,residual,tolerance,pass\n";
    for (const ReportRow& r : report.rows) {
        os << r.identity << ",";
        if (!std::isnan(r.r)) os << r.r;
        os << "," << format_complex(r.lhs) << "," << format_complex(r.rhs) << "," << r.residual
           << ",";
        if (!std::isnan(r.tolerance)) os << r.tolerance;
        os << "," << (r.pass ? "true" : "false") << "\n";
    }
    return os.str();
}

}  // namespace zetaglue
