#include "dicke/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <tuple>

#include "dicke/errors.hpp"

namespace dicke {

const char *to_string(Backend b) {
    switch(b) {
    case Backend::ed: return "ed";
    case Backend::perturbative: return "perturbative";
    case Backend::td: return "td";
    }
    return "?";
}

Backend backend_from_string(const std::string &s) {
    if(s == "ed") return Backend::ed;
    if(s == "perturbative") return Backend::perturbative;
    if(s == "td") return Backend::td;
    throw DomainError("unknown backend '" + s + "'");
}

const std::vector<std::string> &csv_columns() {
    static const std::vector<std::string> columns = {
        "lambda", "lambda_rel", "n_atoms",  "n_max",     "s_vn",    "l_lin", "q_avg", "ipr_inv",
        "jz_mean", "residual",  "converged", "backend", "t_eff", "kappa", "dq_dlambda"};
    return columns;
}

bool report_less(const MeasureReport &a, const MeasureReport &b) {
    auto key = [](const MeasureReport &r) {
        return std::make_tuple(static_cast<int>(r.backend), r.n_atoms ? *r.n_atoms : std::numeric_limits<int>::max(),
                               r.lambda);
    };
    return key(a) < key(b);
}

std::string format_number(double v) {
    if(std::isnan(v)) return "nan";
    if(std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

nlohmann::ordered_json number_or_null(const std::optional<double> &v) {
    if(!v) return nullptr;
    if(!std::isfinite(*v)) return format_number(*v);
    return *v;
}

std::optional<double> read_number(const nlohmann::ordered_json &j, const char *key) {
    if(!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    const auto &v = j.at(key);
    if(v.is_string()) return std::stod(v.get<std::string>());
    return v.get<double>();
}

std::string cell(const std::optional<double> &v) { return v ? format_number(*v) : std::string(); }

} // namespace

nlohmann::ordered_json to_json(const MeasureReport &r) {
    nlohmann::ordered_json j;
    j["lambda"] = r.lambda;
    j["lambda_rel"] = r.lambda_rel;
    j["n_atoms"] = r.n_atoms ? nlohmann::ordered_json(*r.n_atoms) : nlohmann::ordered_json("inf");
    j["n_max"] = r.n_max ? nlohmann::ordered_json(*r.n_max) : nlohmann::ordered_json(nullptr);
    j["s_vn"] = number_or_null(r.s_vn);
    j["l_lin"] = number_or_null(r.l_lin);
    j["q_avg"] = number_or_null(r.q_avg);
    j["ipr_inv"] = number_or_null(r.ipr_inv);
    j["jz_mean"] = number_or_null(r.jz_mean);
    j["residual"] = number_or_null(r.residual);
    j["converged"] = r.converged;
    j["backend"] = to_string(r.backend);
    j["t_eff"] = number_or_null(r.t_eff);
    j["kappa"] = number_or_null(r.kappa);
    j["dq_dlambda"] = number_or_null(r.dq_dlambda);
    return j;
}

MeasureReport report_from_json(const nlohmann::ordered_json &j) {
    MeasureReport r;
    r.backend = backend_from_string(j.at("backend").get<std::string>());
    r.lambda = j.at("lambda").get<double>();
    r.lambda_rel = j.at("lambda_rel").get<double>();
    if(j.at("n_atoms").is_number()) r.n_atoms = j.at("n_atoms").get<int>();
    if(j.at("n_max").is_number()) r.n_max = j.at("n_max").get<int>();
    r.s_vn = read_number(j, "s_vn");
    r.l_lin = read_number(j, "l_lin");
    r.q_avg = read_number(j, "q_avg");
    r.ipr_inv = read_number(j, "ipr_inv");
    r.jz_mean = read_number(j, "jz_mean");
    r.residual = read_number(j, "residual");
    r.converged = j.at("converged").get<bool>();
    r.t_eff = read_number(j, "t_eff");
    r.kappa = read_number(j, "kappa");
    r.dq_dlambda = read_number(j, "dq_dlambda");
    return r;
}

void write_csv(std::ostream &os, const std::vector<MeasureReport> &reports) {
    const auto &cols = csv_columns();
    for(std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << '\n';
    for(const auto &r : reports) {
        os << format_number(r.lambda) << ',' << format_number(r.lambda_rel) << ','
           << (r.n_atoms ? std::to_string(*r.n_atoms) : std::string("inf")) << ','
           << (r.n_max ? std::to_string(*r.n_max) : std::string()) << ',' << cell(r.s_vn) << ',' << cell(r.l_lin)
           << ',' << cell(r.q_avg) << ',' << cell(r.ipr_inv) << ',' << cell(r.jz_mean) << ',' << cell(r.residual)
           << ',' << (r.converged ? "true" : "false") << ',' << to_string(r.backend) << ',' << cell(r.t_eff) << ','
           << cell(r.kappa) << ',' << cell(r.dq_dlambda) << '\n';
    }
}

} // namespace dicke
