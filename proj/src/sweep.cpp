#include "dicke/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "dicke/entanglement.hpp"
#include "dicke/errors.hpp"
#include "dicke/perturbative.hpp"
#include "dicke/thermo.hpp"

namespace dicke {

namespace {

std::vector<std::string> split_list(const std::string &list) {
    std::vector<std::string> out;
    std::stringstream ss(list);
    std::string item;
    while(std::getline(ss, item, ',')) {
        const auto b = item.find_first_not_of(" \t");
        const auto e = item.find_last_not_of(" \t");
        if(b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
    }
    return out;
}

std::string lower(std::string s) {
    for(auto &c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

} // namespace

std::vector<std::optional<int>> parse_n_atoms(const std::string &list) {
    std::vector<std::optional<int>> out;
    for(const auto &item : split_list(list)) {
        if(lower(item) == "inf") {
            out.push_back(std::nullopt);
            continue;
        }
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(item, &used);
        } catch(const std::exception &) {
            used = 0;
        }
        if(used != item.size() || n < 1) throw ParameterDomainError("bad atom number '" + item + "'");
        out.push_back(n);
    }
    if(out.empty()) throw ParameterDomainError("empty atom-number list");
    return out;
}

MeasureSet parse_measures(const std::string &list) {
    MeasureSet m{false, false, false, false, false, false};
    for(const auto &raw : split_list(list)) {
        const auto item = lower(raw);
        if(item == "all") m = {true, true, true, true, true, true};
        else if(item == "s_vn") m.s_vn = true;
        else if(item == "l_lin") m.l_lin = true;
        else if(item == "q_avg") m.q_avg = true;
        else if(item == "ipr_inv") m.ipr_inv = true;
        else if(item == "t_eff") m.t_eff = true;
        else if(item == "kappa") m.kappa = true;
        else throw ParameterDomainError("unknown measure '" + raw + "'");
    }
    return m;
}

std::vector<Backend> parse_backends(const std::string &name) {
    if(name == "all") return {Backend::ed, Backend::perturbative, Backend::td};
    std::vector<Backend> out;
    for(const auto &item : split_list(name)) {
        try {
            out.push_back(backend_from_string(item));
        } catch(const DomainError &) {
            throw ParameterDomainError("unknown backend '" + item + "'");
        }
    }
    if(out.empty()) throw ParameterDomainError("no backend given");
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

LambdaScale parse_scale(const std::string &name) {
    if(name == "linear") return LambdaScale::linear;
    if(name == "log" || name == "log-critical") return LambdaScale::log_critical;
    throw ParameterDomainError("unknown lambda scale '" + name + "'");
}

OutputFormat parse_format(const std::string &name) {
    if(name == "csv") return OutputFormat::csv;
    if(name == "json") return OutputFormat::json;
    throw ParameterDomainError("unknown output format '" + name + "'");
}

Dataset parse_dataset(const std::string &name) {
    if(name == "fig1") return Dataset::fig1;
    if(name == "fig2") return Dataset::fig2;
    if(name == "fig3") return Dataset::fig3;
    throw ParameterDomainError("unknown dataset '" + name + "'");
}

std::vector<double> lambda_grid(const SweepConfig &config, Backend backend) {
    if(config.lambda_steps < 2) throw ParameterDomainError("lambda grid needs at least 2 points");
    std::vector<double> grid;
    const int n = config.lambda_steps;
    if(config.scale == LambdaScale::linear) {
        if(!(config.lambda_min >= 0.0) || !(config.lambda_max > config.lambda_min))
            throw ParameterDomainError("linear lambda grid needs 0 <= min < max");
        for(int i = 0; i < n; ++i)
            grid.push_back(config.lambda_min + (config.lambda_max - config.lambda_min) * i / (n - 1));
    } else {
        if(!(config.lambda_min > 0.0) || !(config.lambda_max > config.lambda_min) || config.lambda_max >= 1.0)
            throw ParameterDomainError("critical log window needs 0 < min < max < 1");
        const double l0 = std::log(config.lambda_min), l1 = std::log(config.lambda_max);
        for(int i = 0; i < n; ++i) {
            const double d = std::exp(l0 + (l1 - l0) * i / (n - 1));
            grid.push_back(1.0 - d);
            grid.push_back(1.0 + d);
        }
    }
    if(backend == Backend::td) std::erase_if(grid, [](double x) { return x == 1.0; });
    std::sort(grid.begin(), grid.end());
    return grid;
}

MeasureReport evaluate_point(const SweepConfig &config, Backend backend, double lambda_rel,
                             std::optional<int> n_atoms) {
    const double lambda_c = 0.5 * std::sqrt(config.omega * config.omega0);
    const double lambda = lambda_rel * lambda_c;
    MeasureReport r;
    r.backend = backend;
    r.lambda = lambda;
    r.lambda_rel = lambda_rel;
    const auto &want = config.measures;

    if(backend == Backend::ed) {
        if(!n_atoms) throw DomainError("exact diagonalisation needs a finite atom number");
        const auto params = make_params(config.omega, config.omega0, lambda, *n_atoms);
        const auto gs = converge_cutoff(params, config.cutoff, config.solver);
        const auto basis = build_basis(params, gs.n_max_used, config.cutoff.limits);
        r.n_atoms = n_atoms;
        r.n_max = gs.n_max_used;
        r.residual = gs.residual;
        r.converged = gs.converged;
        r.jz_mean = collective_moments(gs, basis).jz;
        if(want.s_vn || want.l_lin) {
            const auto rho = partial_trace(gs, basis, Subsystem::atoms);
            if(want.s_vn) r.s_vn = von_neumann_entropy(rho);
            if(want.l_lin) r.l_lin = linear_entropy(rho, *n_atoms + 1);
        }
        if(want.q_avg) r.q_avg = average_linear_entropy_Q(gs, basis);
        if(want.ipr_inv) r.ipr_inv = inverse_participation_ratio(gs, basis, params);
        return r;
    }

    // The analytic backends are N-independent and report N = infinity.
    const auto params = make_params(config.omega, config.omega0, lambda, 1);
    r.converged = true;
    if(backend == Backend::perturbative) {
        if(want.s_vn) r.s_vn = perturbative_entropy(params).s_pert;
        return r;
    }

    if(want.s_vn) r.s_vn = thermo::entropy_td(params);
    if(want.l_lin) r.l_lin = thermo::linear_entropy_td(params);
    if(want.q_avg) {
        r.q_avg = thermo::q_td(params);
        r.dq_dlambda = thermo::dq_dlambda_td(params);
    }
    if(want.ipr_inv) r.ipr_inv = thermo::ipr_td(params);
    if(want.t_eff || want.kappa) {
        const auto rdm = thermo::rdm_params(params);
        if(want.t_eff) r.t_eff = thermo::effective_temperature(rdm, config.omega).temperature;
        if(want.kappa) r.kappa = rdm.kappa;
    }
    return r;
}

SweepResult run_sweep(const SweepConfig &config) {
    struct Item {
        Backend backend;
        double lambda_rel;
        std::optional<int> n_atoms;
    };
    std::vector<Item> items;
    for(const auto backend : config.backends) {
        const auto grid = lambda_grid(config, backend);
        if(backend == Backend::ed) {
            for(const auto &n : config.n_atoms)
                if(n)
                    for(double x : grid) items.push_back({backend, x, n});
        } else {
            for(double x : grid) items.push_back({backend, x, std::nullopt});
        }
    }

    std::vector<std::optional<MeasureReport>> slots(items.size());
    std::vector<std::string> failures(items.size());
    const auto count = static_cast<long>(items.size());
#pragma omp parallel for schedule(dynamic, 1)
    for(long i = 0; i < count; ++i) {
        const auto &it = items[static_cast<std::size_t>(i)];
        try {
            slots[i] = evaluate_point(config, it.backend, it.lambda_rel, it.n_atoms);
        } catch(const std::exception &e) {
            failures[i] = e.what();
        }
    }

    SweepResult result;
    for(std::size_t i = 0; i < items.size(); ++i) {
        if(slots[i]) result.reports.push_back(std::move(*slots[i]));
        else result.errors.push_back({items[i].backend, items[i].lambda_rel, items[i].n_atoms, failures[i]});
    }
    std::stable_sort(result.reports.begin(), result.reports.end(), report_less);
    return result;
}

LineFit fit_line(const std::vector<double> &x, const std::vector<double> &y) {
    const std::size_t n = x.size();
    if(n != y.size() || n < 3) throw FitDomainError("line fit needs at least 3 matched points");
    double mx = 0.0, my = 0.0;
    for(std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for(std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if(sxx == 0.0) throw FitDomainError("line fit with degenerate abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for(std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (f.slope * x[i] + f.intercept);
        ss += e * e;
    }
    f.rms_residual = std::sqrt(ss / n);
    f.slope_error = std::sqrt(ss / (n - 2) / sxx);
    return f;
}

ScalingFit fit_entropy_scaling(const std::vector<MeasureReport> &reports) {
    std::map<int, std::vector<const MeasureReport *>> by_n;
    for(const auto &r : reports)
        if(r.backend == Backend::ed && r.n_atoms && r.s_vn && r.converged) by_n[*r.n_atoms].push_back(&r);
    if(by_n.size() < 4) throw FitDomainError("entropy scaling needs at least 4 system sizes");

    ScalingFit fit;
    fit.quantity = "s_vn";
    std::vector<double> x, y;
    for(auto &[n, pts] : by_n) {
        std::sort(pts.begin(), pts.end(), [](auto *a, auto *b) { return a->lambda < b->lambda; });
        std::size_t k = 0;
        for(std::size_t i = 1; i < pts.size(); ++i)
            if(*pts[i]->s_vn > *pts[k]->s_vn) k = i;
        if(k == 0 || k + 1 == pts.size()) {
            std::ostringstream msg;
            msg << "entropy maximum for N = " << n << " lies on the grid boundary";
            throw FitDomainError(msg.str());
        }
        // Vertex of the parabola through the three samples around the maximum.
        const double x0 = pts[k - 1]->lambda_rel, x1 = pts[k]->lambda_rel, x2 = pts[k + 1]->lambda_rel;
        const double y0 = *pts[k - 1]->s_vn, y1 = *pts[k]->s_vn, y2 = *pts[k + 1]->s_vn;
        const double d01 = (y1 - y0) / (x1 - x0), d12 = (y2 - y1) / (x2 - x1);
        const double a = (d12 - d01) / (x2 - x0);
        PeakPoint p{n, x1, y1};
        if(a < 0.0) {
            const double b = d01 - a * (x0 + x1);
            p.lambda_rel = std::clamp(-b / (2.0 * a), x0, x2);
            p.value = y1 + d01 * (p.lambda_rel - x1) + a * (p.lambda_rel - x0) * (p.lambda_rel - x1);
        }
        fit.maxima.push_back(p);
        x.push_back(std::log2(static_cast<double>(n)));
        y.push_back(p.value);
    }
    const auto line = fit_line(x, y);
    fit.exponent = line.slope;
    fit.std_error = line.slope_error;
    fit.residual = line.rms_residual;
    fit.window_lo = by_n.begin()->first;
    fit.window_hi = by_n.rbegin()->first;
    return fit;
}

std::vector<ScalingFit> fit_critical_exponents(double omega, double omega0, const std::vector<MeasureReport> &reports) {
    std::vector<double> logd, log_eps, log_len, entropy, log2d;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    const double lambda_c = 0.5 * std::sqrt(omega * omega0);
    for(const auto &r : reports) {
        if(r.backend != Backend::td || !(r.lambda < lambda_c)) continue;
        const double delta = (lambda_c - r.lambda) / lambda_c;
        if(delta < 1e-9)
            throw DomainError("critical window reaches within 1e-9 of lambda_c; eps_minus is not resolvable");
        const auto params = make_params(omega, omega0, r.lambda, 1);
        lo = std::min(lo, delta);
        hi = std::max(hi, delta);
        logd.push_back(std::log(delta * lambda_c));
        log_eps.push_back(std::log(thermo::eps_minus_td(params)));
        log_len.push_back(std::log(thermo::length_td(params)));
        if(r.s_vn) {
            log2d.push_back(std::log2(delta * lambda_c));
            entropy.push_back(*r.s_vn);
        }
    }
    if(logd.size() < 3) throw FitDomainError("critical exponents need at least 3 td points below lambda_c");

    auto make = [&](const char *tag, const LineFit &line) {
        ScalingFit f;
        f.quantity = tag;
        f.exponent = line.slope;
        f.std_error = line.slope_error;
        f.residual = line.rms_residual;
        f.window_lo = lo;
        f.window_hi = hi;
        return f;
    };
    std::vector<ScalingFit> fits = {make("eps_minus", fit_line(logd, log_eps)), make("l_minus", fit_line(logd, log_len))};
    if(entropy.size() >= 3) fits.push_back(make("s_vn", fit_line(log2d, entropy)));
    return fits;
}

nlohmann::ordered_json to_json(const ScalingFit &fit) {
    nlohmann::ordered_json j;
    j["quantity"] = fit.quantity;
    j["exponent"] = fit.exponent;
    j["std_error"] = fit.std_error;
    j["residual"] = fit.residual;
    j["window"] = {fit.window_lo, fit.window_hi};
    auto maxima = nlohmann::ordered_json::array();
    for(const auto &p : fit.maxima)
        maxima.push_back({{"n_atoms", p.n_atoms}, {"lambda_rel", p.lambda_rel}, {"value", p.value}});
    j["maxima"] = maxima;
    return j;
}

nlohmann::ordered_json to_json(const PointError &error) {
    nlohmann::ordered_json j;
    j["backend"] = to_string(error.backend);
    j["lambda_rel"] = error.lambda_rel;
    j["n_atoms"] = error.n_atoms ? nlohmann::ordered_json(*error.n_atoms) : nlohmann::ordered_json("inf");
    j["message"] = error.message;
    return j;
}

void emit(std::ostream &os, const SweepResult &result, const std::vector<ScalingFit> &fits, OutputFormat format) {
    if(format == OutputFormat::csv) {
        write_csv(os, result.reports);
        return;
    }
    nlohmann::ordered_json j;
    j["reports"] = nlohmann::ordered_json::array();
    for(const auto &r : result.reports) j["reports"].push_back(to_json(r));
    j["fits"] = nlohmann::ordered_json::array();
    for(const auto &f : fits) j["fits"].push_back(to_json(f));
    j["errors"] = nlohmann::ordered_json::array();
    for(const auto &e : result.errors) j["errors"].push_back(to_json(e));
    os << j.dump(2) << '\n';
}

void emit(const std::string &path, const SweepResult &result, const std::vector<ScalingFit> &fits,
          OutputFormat format) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if(!out) throw IoError("cannot open '" + path + "' for writing");
    emit(out, result, fits, format);
    out.flush();
    if(!out) throw IoError("write to '" + path + "' failed");
}

void write_dataset(std::ostream &os, const std::vector<MeasureReport> &reports, Dataset which) {
    auto cell = [](const std::optional<double> &v) { return v ? format_number(*v) : std::string(); };
    auto n_cell = [](const MeasureReport &r) { return r.n_atoms ? std::to_string(*r.n_atoms) : std::string("inf"); };
    switch(which) {
    case Dataset::fig1:
        os << "lambda_rel,n_atoms,backend,s_vn,ipr_inv\n";
        for(const auto &r : reports)
            os << format_number(r.lambda_rel) << ',' << n_cell(r) << ',' << to_string(r.backend) << ','
               << cell(r.s_vn) << ',' << cell(r.ipr_inv) << '\n';
        break;
    case Dataset::fig2:
        os << "lambda_rel,t_eff,kappa\n";
        for(const auto &r : reports)
            if(r.backend == Backend::td && r.lambda_rel > 0.0 && r.lambda_rel < 1.0)
                os << format_number(r.lambda_rel) << ',' << cell(r.t_eff) << ',' << cell(r.kappa) << '\n';
        break;
    case Dataset::fig3:
        os << "lambda_rel,n_atoms,q_avg,dq_dlambda\n";
        for(const auto &r : reports)
            if(r.backend != Backend::perturbative)
                os << format_number(r.lambda_rel) << ',' << n_cell(r) << ',' << cell(r.q_avg) << ','
                   << cell(r.dq_dlambda) << '\n';
        break;
    }
}

} // namespace dicke
