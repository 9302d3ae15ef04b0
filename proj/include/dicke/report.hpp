#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace dicke {

enum class Backend { ed, perturbative, td };

const char *to_string(Backend b);
Backend backend_from_string(const std::string &s);

/// One (lambda, N, backend) point. Absent optionals are quantities the
/// backend does not produce or the run did not request.
struct MeasureReport {
    Backend backend = Backend::ed;
    double lambda = 0.0;
    double lambda_rel = 0.0;
    std::optional<int> n_atoms; // empty means N -> infinity
    std::optional<int> n_max;
    std::optional<double> s_vn;
    std::optional<double> l_lin;
    std::optional<double> q_avg;
    std::optional<double> ipr_inv;
    std::optional<double> jz_mean;
    std::optional<double> residual;
    bool converged = false;
    std::optional<double> t_eff;
    std::optional<double> kappa;
    std::optional<double> dq_dlambda;
};

/// Leading columns are fixed; backend and the thermal columns follow.
const std::vector<std::string> &csv_columns();

/// Deterministic order: backend, then N (infinity last), then lambda.
bool report_less(const MeasureReport &a, const MeasureReport &b);

/// 17 significant digits, "inf" / "-inf" / "nan" spelled out.
std::string format_number(double v);

nlohmann::ordered_json to_json(const MeasureReport &r);
MeasureReport report_from_json(const nlohmann::ordered_json &j);

void write_csv(std::ostream &os, const std::vector<MeasureReport> &reports);

} // namespace dicke
