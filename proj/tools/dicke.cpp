// Command-line front end: coupling sweeps over the numeric and analytic
// backends, scaling fits, figure datasets and Hamiltonian dumps.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "dicke/errors.hpp"
#include "dicke/model.hpp"
#include "dicke/sweep.hpp"

namespace {

// The config file is flat: every key is a sweep flag without the dashes.
class FlatSweepConfig : public CLI::ConfigINI {
  public:
    std::vector<CLI::ConfigItem> from_config(std::istream &input) const override {
        auto items = CLI::ConfigINI::from_config(input);
        for(auto &item : items)
            if(item.parents.empty()) item.parents.push_back("sweep");
        return items;
    }
};

struct SweepArgs {
    double omega = 1.0, omega0 = 1.0;
    double lambda_min = 0.0, lambda_max = 3.0;
    int lambda_steps = 31;
    std::string scale = "linear";
    std::string n_atoms = "8";
    std::string measures = "s_vn";
    std::string backend = "ed";
    int cutoff_start = 16;
    double cutoff_growth = 1.5;
    double tol = 1e-10;
    int cutoff_limit = 400;
    std::string out = "-";
    std::string format = "csv";
    std::vector<std::string> fits;
    std::string dataset;
};

int run_sweep_command(const SweepArgs &a) {
    dicke::SweepConfig cfg;
    cfg.omega = a.omega;
    cfg.omega0 = a.omega0;
    cfg.lambda_min = a.lambda_min;
    cfg.lambda_max = a.lambda_max;
    cfg.lambda_steps = a.lambda_steps;
    cfg.scale = dicke::parse_scale(a.scale);
    cfg.n_atoms = dicke::parse_n_atoms(a.n_atoms);
    cfg.measures = dicke::parse_measures(a.measures);
    cfg.backends = dicke::parse_backends(a.backend);
    cfg.cutoff.n_max_start = a.cutoff_start;
    cfg.cutoff.growth = a.cutoff_growth;
    cfg.cutoff.n_max_limit = a.cutoff_limit;
    cfg.solver.tol = a.tol;
    const auto format = dicke::parse_format(a.format);

    const auto result = dicke::run_sweep(cfg);

    std::vector<dicke::ScalingFit> fits;
    for(const auto &name : a.fits) {
        try {
            if(name == "entropy-scaling") fits.push_back(dicke::fit_entropy_scaling(result.reports));
            else if(name == "critical") {
                auto more = dicke::fit_critical_exponents(cfg.omega, cfg.omega0, result.reports);
                fits.insert(fits.end(), more.begin(), more.end());
            } else {
                std::cerr << "unknown fit '" << name << "'\n";
                return 1;
            }
        } catch(const dicke::Error &e) {
            std::cerr << "fit " << name << ": " << e.what() << '\n';
        }
    }

    if(!a.dataset.empty()) {
        const auto which = dicke::parse_dataset(a.dataset);
        if(a.out == "-") dicke::write_dataset(std::cout, result.reports, which);
        else {
            std::ofstream out(a.out, std::ios::binary | std::ios::trunc);
            if(!out) throw dicke::IoError("cannot open '" + a.out + "' for writing");
            dicke::write_dataset(out, result.reports, which);
        }
    } else if(a.out == "-") {
        dicke::emit(std::cout, result, fits, format);
    } else {
        dicke::emit(a.out, result, fits, format);
    }

    for(const auto &e : result.errors)
        std::cerr << "point " << dicke::to_string(e.backend) << " lambda_rel=" << e.lambda_rel
                  << " N=" << (e.n_atoms ? std::to_string(*e.n_atoms) : "inf") << ": " << e.message << '\n';
    return result.errors.empty() ? 0 : 2;
}

struct DumpArgs {
    double omega = 1.0, omega0 = 1.0, lambda_rel = 0.5;
    int n_atoms = 2, n_max = 4;
    std::string out = "-";
};

int run_dump_command(const DumpArgs &a) {
    auto p = dicke::make_params(a.omega, a.omega0, 0.0, a.n_atoms);
    p = dicke::with_lambda(p, a.lambda_rel * p.lambda_c);
    const auto basis = dicke::build_basis(p, a.n_max);
    const auto h = dicke::assemble_hamiltonian(p, basis);
    if(a.out == "-") {
        dicke::write_matrix_dump(std::cout, h);
        return 0;
    }
    std::ofstream out(a.out, std::ios::binary | std::ios::trunc);
    if(!out) throw dicke::IoError("cannot open '" + a.out + "' for writing");
    dicke::write_matrix_dump(out, h);
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Entanglement in the single-mode Dicke model"};
    app.require_subcommand(1);

    // Only the top-level app reads config files; `sweep` falls through to it
    // so `dicke sweep --config file` works.
    app.config_formatter(std::make_shared<FlatSweepConfig>());
    app.set_config("--config", "", "Flat key = value file mirroring the sweep flags; flags win");

    SweepArgs s;
    auto *sweep = app.add_subcommand("sweep", "Evaluate measures over a lambda grid");
    sweep->fallthrough();
    sweep->add_option("--omega", s.omega, "Field frequency")->capture_default_str();
    sweep->add_option("--omega0", s.omega0, "Atomic splitting")->capture_default_str();
    sweep->add_option("--lambda-min", s.lambda_min, "Grid start (lambda / lambda_c, or offset window for log)")
        ->capture_default_str();
    sweep->add_option("--lambda-max", s.lambda_max, "Grid end")->capture_default_str();
    sweep->add_option("--lambda-steps", s.lambda_steps, "Points (per side for log)")->capture_default_str();
    sweep->add_option("--lambda-scale", s.scale, "linear | log")->capture_default_str();
    sweep->add_option("--n-atoms", s.n_atoms, "Comma list, 'inf' allowed")->capture_default_str();
    sweep->add_option("--measures", s.measures, "s_vn,l_lin,q_avg,ipr_inv,T_eff,kappa or all")
        ->capture_default_str();
    sweep->add_option("--backend", s.backend, "ed | td | perturbative | all")->capture_default_str();
    sweep->add_option("--cutoff-start", s.cutoff_start, "Initial Fock cutoff")->capture_default_str();
    sweep->add_option("--cutoff-growth", s.cutoff_growth, "Cutoff growth factor")->capture_default_str();
    sweep->add_option("--cutoff-limit", s.cutoff_limit, "Largest Fock cutoff tried")->capture_default_str();
    sweep->add_option("--tol", s.tol, "Relative eigen-residual tolerance")->capture_default_str();
    sweep->add_option("--out", s.out, "Output path, '-' for stdout")->capture_default_str();
    sweep->add_option("--format", s.format, "csv | json")->capture_default_str();
    sweep->add_option("--fit", s.fits, "entropy-scaling and/or critical (json output)");
    sweep->add_option("--dataset", s.dataset, "fig1 | fig2 | fig3 instead of the full table");

    DumpArgs d;
    auto *dump = app.add_subcommand("dump-matrix", "Print the Hamiltonian as row col value lines");
    dump->add_option("--omega", d.omega)->capture_default_str();
    dump->add_option("--omega0", d.omega0)->capture_default_str();
    dump->add_option("--lambda", d.lambda_rel, "lambda / lambda_c")->capture_default_str();
    dump->add_option("--n-atoms", d.n_atoms)->capture_default_str();
    dump->add_option("--n-max", d.n_max)->capture_default_str();
    dump->add_option("--out", d.out)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if(sweep->parsed()) return run_sweep_command(s);
        return run_dump_command(d);
    } catch(const dicke::Error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
