#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dicke/eigensolver.hpp"
#include "dicke/report.hpp"

namespace dicke {

enum class LambdaScale {
    linear,      // lambda_min .. lambda_max in units of lambda_c
    log_critical // lambda_min .. lambda_max is the window of |lambda - lambda_c| / lambda_c, both sides
};

struct MeasureSet {
    bool s_vn = true;
    bool l_lin = false;
    bool q_avg = false;
    bool ipr_inv = false;
    bool t_eff = false;
    bool kappa = false;
};

struct SweepConfig {
    double omega = 1.0;
    double omega0 = 1.0;
    double lambda_min = 0.0;
    double lambda_max = 3.0;
    int lambda_steps = 31;
    LambdaScale scale = LambdaScale::linear;
    std::vector<std::optional<int>> n_atoms = {8}; // nullopt is N = infinity
    MeasureSet measures;
    std::vector<Backend> backends = {Backend::ed};
    CutoffPolicy cutoff;
    SolverOptions solver;
};

/// "8,16,inf"
std::vector<std::optional<int>> parse_n_atoms(const std::string &list);
/// "s_vn,l_lin,T_eff"; "all" selects everything.
MeasureSet parse_measures(const std::string &list);
/// "ed", "td", "perturbative" or "all".
std::vector<Backend> parse_backends(const std::string &name);
LambdaScale parse_scale(const std::string &name);

/// Sorted lambda / lambda_c values. lambda_c itself is dropped for the td backend.
std::vector<double> lambda_grid(const SweepConfig &config, Backend backend);

/// One point. ed needs a finite N; the analytic backends ignore N.
MeasureReport evaluate_point(const SweepConfig &config, Backend backend, double lambda_rel,
                             std::optional<int> n_atoms);

struct PointError {
    Backend backend;
    double lambda_rel;
    std::optional<int> n_atoms;
    std::string message;
};

struct SweepResult {
    std::vector<MeasureReport> reports; // report_less order
    std::vector<PointError> errors;
};

/// Points run in parallel; a failing point is recorded and the rest carry on.
/// ed runs for every finite N, td and perturbative once per lambda with N = inf.
SweepResult run_sweep(const SweepConfig &config);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_error = 0.0;
    double rms_residual = 0.0;
};

/// Ordinary least squares y = slope x + intercept; needs at least 3 points.
LineFit fit_line(const std::vector<double> &x, const std::vector<double> &y);

struct PeakPoint {
    int n_atoms = 0;
    double lambda_rel = 0.0;
    double value = 0.0;
};

struct ScalingFit {
    std::string quantity;
    double exponent = 0.0;
    double std_error = 0.0;
    double residual = 0.0;
    double window_lo = 0.0;
    double window_hi = 0.0;
    std::vector<PeakPoint> maxima;
};

/// Peak entropy per N, refined by a parabola through the three top samples,
/// then S_max = x log2 N + c. Only converged ed reports take part.
/// FitDomainError when fewer than 4 sizes or a peak sits on the grid edge.
ScalingFit fit_entropy_scaling(const std::vector<MeasureReport> &reports);

/// Log-log slopes of eps_-, l_- and S against |lambda_c - lambda| using the td
/// reports below lambda_c. Quantities "eps_minus", "l_minus", "s_vn".
std::vector<ScalingFit> fit_critical_exponents(double omega, double omega0, const std::vector<MeasureReport> &reports);

nlohmann::ordered_json to_json(const ScalingFit &fit);
nlohmann::ordered_json to_json(const PointError &error);

enum class OutputFormat { csv, json };
OutputFormat parse_format(const std::string &name);

void emit(std::ostream &os, const SweepResult &result, const std::vector<ScalingFit> &fits, OutputFormat format);
/// Throws IoError when the file cannot be written.
void emit(const std::string &path, const SweepResult &result, const std::vector<ScalingFit> &fits,
          OutputFormat format);

enum class Dataset { fig1, fig2, fig3 };
Dataset parse_dataset(const std::string &name);

/// Plot-ready CSV slices:
///   fig1  lambda_rel, n_atoms, backend, s_vn, ipr_inv
///   fig2  lambda_rel, t_eff, kappa           (td, 0 < lambda < lambda_c)
///   fig3  lambda_rel, n_atoms, q_avg, dq_dlambda
void write_dataset(std::ostream &os, const std::vector<MeasureReport> &reports, Dataset which);

} // namespace dicke
