#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dicke/errors.hpp"
#include "dicke/thermo.hpp"
#include "oracles.hpp"

using namespace dicke;
using namespace dicke::thermo;

namespace {

ModelParams at(double w, double w0, double lambda_rel) {
    auto p = make_params(w, w0, 0.0, 1);
    return with_lambda(p, lambda_rel * p.lambda_c);
}

oracle::KernelSpectrum kernel_spectrum(const GaussianRDMParams &rdm, int points = 801) {
    // Diagonal decays like exp(-(2A - B) y^2); cover ~ 12 standard deviations.
    const double width = 1.0 / std::sqrt(2.0 * rdm.diagonal_coeff() - rdm.cross_coeff());
    const double half = 12.0 * width;
    return oracle::nystrom([&](double y, double y2) { return rdm.kernel(y, y2); }, half, points);
}

} // namespace

TEST_CASE("normal phase energies against the 2x2 frequency matrix") {
    for(auto [w, w0, lambda] : {std::tuple{1.0, 4.0, 0.4}, std::tuple{1.0, 1.0, 0.3}, std::tuple{3.0, 0.5, 0.2}}) {
        const auto p = with_lambda(make_params(w, w0, 0.0, 1), lambda);
        const auto sol = normal_solution(p);
        const auto [lo, hi] = oracle::eig2(w * w, 2.0 * lambda * std::sqrt(w * w0), w0 * w0);
        CHECK(sol.eps_minus * sol.eps_minus == doctest::Approx(lo).epsilon(1e-12));
        CHECK(sol.eps_plus * sol.eps_plus == doctest::Approx(hi).epsilon(1e-12));
        // Closed form of the two branches.
        const double root = std::sqrt((w0 * w0 - w * w) * (w0 * w0 - w * w) + 16.0 * lambda * lambda * w * w0);
        CHECK(sol.eps_plus * sol.eps_plus == doctest::Approx(0.5 * (w0 * w0 + w * w + root)).epsilon(1e-12));
        CHECK(sol.c * sol.c + sol.s * sol.s == doctest::Approx(1.0).epsilon(1e-15));
        if(w != w0)
            CHECK(std::tan(2.0 * sol.gamma1) ==
                  doctest::Approx(4.0 * lambda * std::sqrt(w * w0) / (w0 * w0 - w * w)).epsilon(1e-12));
        else
            CHECK(sol.gamma1 == doctest::Approx(std::numbers::pi / 4));
    }
    const auto zero = normal_solution(at(1.0, 4.0, 0.0));
    CHECK(zero.eps_minus == 1.0);
    CHECK(zero.eps_plus == 4.0);
    const auto res = normal_solution(at(1.0, 1.0, 0.6));
    CHECK(res.eps_minus * res.eps_minus == doctest::Approx(1.0 - 2.0 * 0.3).epsilon(1e-14));
    CHECK(normal_solution(at(1.0, 1.0, 1.0)).eps_minus == 0.0);
    CHECK_THROWS_AS(normal_solution(at(1.0, 1.0, 1.01)), PhaseDomainError);
}

TEST_CASE("superradiant phase") {
    SUBCASE("frequency matrix oracle and angle") {
        for(auto [w, w0, lrel] : {std::tuple{1.0, 1.0, 2.0}, std::tuple{1.0, 4.0, 1.3}, std::tuple{2.0, 0.5, 3.0}}) {
            const auto p = at(w, w0, lrel);
            const auto sol = sr_solution(p);
            const double mu = 1.0 / (lrel * lrel);
            CHECK(sol.mu == doctest::Approx(mu).epsilon(1e-15));
            const auto [lo, hi] = oracle::eig2(w * w, w * w0, w0 * w0 / (mu * mu));
            CHECK(sol.eps_minus * sol.eps_minus == doctest::Approx(lo).epsilon(1e-12));
            CHECK(sol.eps_plus * sol.eps_plus == doctest::Approx(hi).epsilon(1e-12));
            CHECK(std::tan(2.0 * sol.gamma2) ==
                  doctest::Approx(2.0 * w * w0 * mu * mu / (w0 * w0 - mu * mu * w * w)).epsilon(1e-12));
        }
    }
    SUBCASE("resonance at 2 lambda_c") {
        const auto sol = sr_solution(at(1.0, 1.0, 2.0));
        CHECK(sol.mu == 0.25);
        CHECK(sol.omega_tilde == doctest::Approx(2.5).epsilon(1e-15));
        CHECK(sol.beta_per_j == 0.75);
    }
    SUBCASE("continuity at lambda_c") {
        const auto p = at(1.0, 3.0, 1.0);
        const auto n = normal_solution(p);
        const auto s = sr_solution(p);
        CHECK(std::abs(n.eps_minus - s.eps_minus) <= 1e-12);
        CHECK(std::abs(n.eps_plus - s.eps_plus) <= 1e-12);
        CHECK(s.mu == 1.0);
        CHECK(s.alpha_per_j == 0.0);
        CHECK(s.beta_per_j == 0.0);
    }
    SUBCASE("strong coupling: eps_minus tends to omega") {
        CHECK(std::abs(sr_solution(at(1.0, 1.0, 100.0)).eps_minus - 1.0) < 1e-4);
    }
    CHECK_THROWS_AS(sr_solution(at(1.0, 1.0, 0.99)), PhaseDomainError);
}

TEST_CASE("Gaussian RDM kernel: normalised, and its spectrum gives entropy_td") {
    for(double lrel : {0.3, 0.6, 0.9}) {
        const auto p = at(1.0, 1.0, lrel);
        const auto rdm = rdm_params(p);
        const auto spec = kernel_spectrum(rdm);
        CHECK(spec.trace == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(spec.entropy - entropy_td(p)) < 1e-4);
        CHECK(spec.purity == doctest::Approx(lobe_purity(rdm)).epsilon(1e-8));
        CHECK(rdm.diagonal_coeff() * 2.0 > rdm.cross_coeff()); // normalisable
    }
    // Off resonance as well.
    const auto p = at(1.0, 4.0, 0.7);
    CHECK(std::abs(kernel_spectrum(rdm_params(p)).entropy - entropy_td(p)) < 1e-4);
}

TEST_CASE("entropy does not depend on the kappa rescaling") {
    for(double lrel : {0.3, 0.8}) {
        const auto p = at(1.0, 1.0, lrel);
        auto rdm = rdm_params(p);
        const double s1 = kernel_spectrum(rdm).entropy;
        rdm.kappa *= 2.0;
        const double s2 = kernel_spectrum(rdm).entropy;
        CHECK(std::abs(s1 - s2) < 1e-9);
        CHECK(lobe_entropy(rdm) == entropy_td(p));
    }
}

TEST_CASE("kappa and T reproduce a unit-mass thermal oscillator at frequency omega") {
    for(auto [w, w0, lrel] : {std::tuple{1.0, 1.0, 0.5}, std::tuple{1.0, 4.0, 0.8}, std::tuple{2.0, 1.0, 0.2}}) {
        const auto p = at(w, w0, lrel);
        const auto rdm = rdm_params(p);
        const double a = rdm.diagonal_coeff(), b = rdm.cross_coeff();
        // Thermal kernel: A = Omega cosh(x) / (2 sinh x), B = Omega / sinh x, x = Omega / T.
        const double x = oracle::bisect([&](double t) { return std::cosh(t) / 2.0 - a / b; }, 1e-9, 200.0);
        const auto thermal = effective_temperature(rdm, w);
        CHECK(thermal.beta_omega == doctest::Approx(x).epsilon(1e-10));
        CHECK(thermal.temperature == doctest::Approx(w / x).epsilon(1e-10));
        CHECK(b * std::sinh(x) == doctest::Approx(w).epsilon(1e-10));
        CHECK(thermal.temperature > 0.0);
    }
}

TEST_CASE("effective temperature vanishes with the coupling") {
    const auto zero = effective_temperature(rdm_params(at(1.0, 1.0, 0.0)), 1.0);
    CHECK(zero.temperature == 0.0);
    double prev = 1e9;
    for(double lrel : {0.3, 0.1, 0.03, 0.01}) {
        const double t = effective_temperature(rdm_params(at(1.0, 1.0, lrel)), 1.0).temperature;
        CHECK(t > 0.0);
        CHECK(t < prev);
        prev = t;
    }
    CHECK(prev < 0.2);
}

TEST_CASE("thermal entropy helper") {
    CHECK(std::isinf(thermal_entropy_bits(0.0)));
    CHECK(thermal_entropy_bits(std::numeric_limits<double>::infinity()) == 0.0);
    const double x = 1.3;
    const double naive = (0.5 * x / std::tanh(0.5 * x) - std::log(2.0 * std::sinh(0.5 * x))) / std::log(2.0);
    CHECK(thermal_entropy_bits(x) == doctest::Approx(naive).epsilon(1e-14));
}

TEST_CASE("entropy_td: limits, divergence and the critical asymptote") {
    CHECK(entropy_td(at(1.0, 1.0, 0.0)) == 0.0);
    CHECK(std::isinf(entropy_td(at(1.0, 1.0, 1.0))));
    CHECK(std::abs(entropy_td(at(1.0, 1.0, 50.0)) - 1.0) < 1e-3);
    CHECK(entropy_td(at(1.0, 1.0, 3.0), SrConvention::single_lobe) ==
          doctest::Approx(entropy_td(at(1.0, 1.0, 3.0)) - 1.0).epsilon(1e-15));

    for(auto [w, w0] : {std::pair{1.0, 1.0}, std::pair{1.0, 4.0}}) {
        for(double side : {-1.0, 1.0}) {
            double prev = 1.0;
            for(double d : {1e-4, 1e-6, 1e-8, 1e-10}) {
                const auto p = at(w, w0, 1.0 + side * d);
                const double gap = std::abs(entropy_td(p) - critical_asymptote(p));
                CHECK(gap < prev);
                prev = gap;
            }
            CHECK(prev < 1e-3);
        }
    }
    CHECK_THROWS_AS(critical_asymptote(at(1.0, 1.0, 0.95)), DomainError);
    CHECK(std::isinf(critical_asymptote(at(1.0, 1.0, 1.0))));
}

TEST_CASE("linear entropy in the thermodynamic limit") {
    CHECK(linear_entropy_td(at(1.0, 1.0, 0.0)) == 0.0);
    CHECK(linear_entropy_td(at(1.0, 1.0, 1.0)) == 1.0);
    double prev = 1.0;
    for(double d : {1e-2, 1e-4, 1e-8, 1e-12}) {
        const double gap = 1.0 - linear_entropy_td(at(1.0, 1.0, 1.0 - d));
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 1e-2);
    CHECK(std::abs(linear_entropy_td(at(1.0, 1.0, 5.0)) - 0.5) <= 0.02);
    // Closed form on resonance.
    const double em = std::sqrt(1.0 - 2.0 * 0.3), ep = std::sqrt(1.0 + 2.0 * 0.3);
    CHECK(linear_entropy_td(at(1.0, 1.0, 0.6)) ==
          doctest::Approx(1.0 - 2.0 * std::sqrt(em * ep) / (em + ep)).epsilon(1e-13));
}

TEST_CASE("IPR in the thermodynamic limit") {
    CHECK(std::abs(ipr_td(at(1.0, 1.0, 0.0)) - 1.0 / (2.0 * std::numbers::pi)) < 1e-12);
    SUBCASE("normal phase against quadrature of the two-mode Gaussian") {
        for(auto [w, w0, lrel] : {std::tuple{1.0, 1.0, 0.5}, std::tuple{1.0, 4.0, 0.9}}) {
            const auto p = at(w, w0, lrel);
            const auto s = oracle::sqrt_frequency_matrix(w * w, 2.0 * p.lambda * std::sqrt(w * w0), w0 * w0);
            const double ref = oracle::lobes_ipr(s, Eigen::Vector2d::Zero(), false, 12.0, 801);
            CHECK(ipr_td(p) == doctest::Approx(ref).epsilon(1e-8));
        }
    }
    SUBCASE("superradiant two-lobe state in the rescaled frame") {
        const auto p = at(1.0, 1.0, 2.0);
        const auto sol = sr_solution(p);
        const auto s = oracle::sqrt_frequency_matrix(1.0, 1.0, 1.0 / (sol.mu * sol.mu));
        const double single = oracle::lobes_ipr(s, Eigen::Vector2d::Zero(), false, 12.0, 801);
        const double pair = oracle::lobes_ipr(s, Eigen::Vector2d(20.0, 20.0), true, 40.0, 1601);
        CHECK(ipr_td(p, IprFrame::rescaled, SrConvention::single_lobe) == doctest::Approx(single).epsilon(1e-8));
        CHECK(ipr_td(p) == doctest::Approx(pair).epsilon(1e-8));
        CHECK(ipr_td(p, IprFrame::physical) ==
              doctest::Approx(ipr_td(p) * std::sqrt(1.0 / sol.omega_tilde)).epsilon(1e-14));
    }
    SUBCASE("vanishes towards lambda_c") {
        double prev = 1.0;
        for(double d : {1e-2, 1e-4, 1e-6}) {
            const double v = ipr_td(at(1.0, 1.0, 1.0 - d));
            CHECK(v < prev);
            prev = v;
        }
        CHECK(ipr_td(at(1.0, 1.0, 1.0)) == 0.0);
    }
}

TEST_CASE("Q and its derivative in the thermodynamic limit") {
    CHECK(q_td(at(1.0, 1.0, 0.5)) == 0.0);
    CHECK(q_td(at(1.0, 1.0, 1.0)) == 0.0);
    CHECK(q_td(at(1.0, 1.0, 2.0)) == 15.0 / 16.0);
    CHECK(dq_dlambda_td(at(1.0, 1.0, 0.5)) == 0.0);
    for(double lrel : {1.2, 1.5, 2.0}) {
        const auto p = at(1.0, 1.0, lrel);
        const double h = 1e-6 * p.lambda;
        const double fd = (q_td(with_lambda(p, p.lambda + h)) - q_td(with_lambda(p, p.lambda - h))) / (2.0 * h);
        CHECK(std::abs(fd / dq_dlambda_td(p) - 1.0) < 1e-6);
    }
    const auto c = at(1.0, 1.0, 1.0);
    CHECK(dq_dlambda_td(c) == doctest::Approx(4.0 / c.lambda_c).epsilon(1e-15));
}

TEST_CASE("critical scaling of eps_minus and l_minus") {
    const auto p1 = at(1.0, 1.0, 1.0 - 1e-4), p2 = at(1.0, 1.0, 1.0 - 1e-6);
    const double slope = std::log(eps_minus_td(p1) / eps_minus_td(p2)) / std::log(1e-4 / 1e-6);
    CHECK(slope == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(length_td(p2) == doctest::Approx(1.0 / std::sqrt(eps_minus_td(p2))).epsilon(1e-15));
    CHECK(std::isinf(length_td(at(1.0, 1.0, 1.0))));
}
