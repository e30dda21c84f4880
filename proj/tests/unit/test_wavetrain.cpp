#include "doctest.h"

#include "defect_snake/fourier.hpp"
#include "defect_snake/rd_system.hpp"
#include "defect_snake/wavetrain.hpp"

#include <cmath>

using namespace dsnake;

namespace {

// Seed with the clockwise orientation (u, v) = (cos, -sin); this is the sign
// convention under which the lambda-omega family satisfies
// omega_nl(k) = (omega0 - q) + q k^2 exactly (validated below at k = 0.1).
Eigen::MatrixXd circle_guess(int M) {
    Eigen::MatrixXd prof(M, 2);
    for (int j = 0; j < M; ++j) {
        double phi = 2.0 * M_PI * j / M;
        prof(j, 0) = std::cos(phi);
        prof(j, 1) = -std::sin(phi);
    }
    return prof;
}

WaveTrain lw_hom_osc(const ReactionDiffusionSystem& sys, double guess_omega) {
    return solve_homogeneous_oscillation(sys, circle_guess(64), guess_omega);
}

std::vector<double> symmetric_k_grid(double kmax, int per_side) {
    std::vector<double> ks;
    for (int i = per_side; i >= 1; --i) ks.push_back(-kmax * i / per_side);
    ks.push_back(0.0);
    for (int i = 1; i <= per_side; ++i) ks.push_back(kmax * i / per_side);
    return ks;
}

}  // namespace

TEST_CASE("fourier differentiation matrices are spectrally exact on low modes") {
    const int M = 32;
    auto D1 = fourier_diff1(M);
    auto D2 = fourier_diff2(M);
    Eigen::VectorXd f(M), df(M), d2f(M);
    for (int j = 0; j < M; ++j) {
        double phi = 2.0 * M_PI * j / M;
        f[j] = std::sin(3.0 * phi) + 0.5 * std::cos(5.0 * phi);
        df[j] = 3.0 * std::cos(3.0 * phi) - 2.5 * std::sin(5.0 * phi);
        d2f[j] = -9.0 * std::sin(3.0 * phi) - 12.5 * std::cos(5.0 * phi);
    }
    CHECK((D1 * f - df).lpNorm<Eigen::Infinity>() < 1e-11);
    CHECK((D2 * f - d2f).lpNorm<Eigen::Infinity>() < 1e-10);
}

TEST_CASE("lambda-omega homogeneous oscillation is the exact rotating wave") {
    LambdaOmegaParams p{1.2, 0.5};
    auto sys = make_lambda_omega(p);
    auto wt = lw_hom_osc(sys, p.omega0 - p.q + 0.1);
    CHECK(wt.omega == doctest::Approx(p.omega0 - p.q).epsilon(1e-10));
    CHECK(wt.residual < 1e-10);
    // amplitude one at every collocation point
    for (int j = 0; j < wt.points(); ++j)
        CHECK(wt.profile.row(j).norm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("phase-shifted profile resolves to the same frequency") {
    LambdaOmegaParams p{1.2, 0.5};
    auto sys = make_lambda_omega(p);
    auto wt = lw_hom_osc(sys, 0.8);
    const int M = wt.points();
    Eigen::MatrixXd shifted(M, 2);
    const int shift = 5;
    for (int j = 0; j < M; ++j) shifted.row(j) = wt.profile.row((j + shift) % M);
    auto wt2 = solve_homogeneous_oscillation(sys, shifted, wt.omega);
    CHECK(wt2.omega == doctest::Approx(wt.omega).epsilon(1e-12));
    CHECK(wt2.residual < 1e-10);
}

TEST_CASE("brusselator oscillation frequency approaches E at the Hopf point") {
    const double E = 1.4;
    const double B_H = 1.0 + E * E;
    Eigen::VectorXd start(2);
    start << E + 0.2, B_H / E;
    auto sys0 = make_brusselator({0.25, B_H + 0.30, E});
    auto [seed, omega_seed] = ode_limit_cycle_guess(sys0, start, 150.0);
    double prev_gap = 1e300;
    for (double db : {0.30, 0.20, 0.10, 0.05}) {
        auto sys = make_brusselator({0.25, B_H + db, E});
        auto wt = solve_homogeneous_oscillation(sys, seed, omega_seed);
        CHECK(wt.residual < 1e-8);
        double gap = std::abs(wt.omega - E);
        CHECK(gap < prev_gap);
        prev_gap = gap;
        seed = wt.profile;
        omega_seed = wt.omega;
    }
    CHECK(prev_gap < 0.02);
}

TEST_CASE("lambda-omega dispersion matches the closed form") {
    LambdaOmegaParams p{1.2, 0.5};
    auto sys = make_lambda_omega(p);
    auto hom = lw_hom_osc(sys, 0.8);

    auto family = continue_wavetrain_in_k(sys, hom, symmetric_k_grid(0.3, 6));
    for (const auto& wt : family) CHECK(wt.residual < 1e-10);

    // pin the sign convention at k = 0.1 before trusting the closed form
    auto probe = continue_wavetrain_in_k(sys, hom, {0.1});
    CHECK(probe[0].omega - hom.omega == doctest::Approx(p.q * 0.01).epsilon(1e-6));

    auto disp = dispersion_data(sys, family);
    CHECK(disp.omega0 == doctest::Approx(p.omega0 - p.q).epsilon(1e-10));
    CHECK(disp.d2_omega == doctest::Approx(2.0 * p.q).epsilon(1e-6));
    for (const auto& [k, w] : disp.samples)
        CHECK(w == doctest::Approx((p.omega0 - p.q) + p.q * k * k).epsilon(1e-8));

    // omega_nl is even in k
    auto left = continue_wavetrain_in_k(sys, hom, {-0.17});
    auto right = continue_wavetrain_in_k(sys, hom, {0.17});
    CHECK(left[0].omega == doctest::Approx(right[0].omega).epsilon(1e-10));

    // group velocity and the selected wavenumber
    for (double c : {-0.1, 0.02, 0.15}) {
        auto [k, w] = select_wavenumber_for_speed(disp, c);
        CHECK(k == doctest::Approx(c / (2.0 * p.q)).epsilon(1e-8));
        CHECK(w - disp.omega0 == doctest::Approx(c * c / (4.0 * p.q)).epsilon(1e-6));
    }
    auto [k0, w0] = select_wavenumber_for_speed(disp, 0.0);
    CHECK(k0 == 0.0);
    CHECK(w0 == doctest::Approx(disp.omega0));
}

TEST_CASE("brusselator dispersion is even with nonzero curvature") {
    auto sys = make_brusselator({0.25, 3.2, 1.4});
    const double E = 1.4, B = 3.2;
    Eigen::VectorXd start(2);
    start << E + 0.3, B / E;
    auto [seed, omega_seed] = ode_limit_cycle_guess(sys, start, 150.0);
    auto hom = solve_homogeneous_oscillation(sys, seed, omega_seed);
    auto family = continue_wavetrain_in_k(sys, hom, symmetric_k_grid(0.05, 4), 0.01);
    auto disp = dispersion_data(sys, family);
    CHECK(std::abs(disp.d2_omega) > 1e-3);  // genuinely nonlinear dispersion
    auto pminus = continue_wavetrain_in_k(sys, hom, {-0.03}, 0.01);
    auto pp = continue_wavetrain_in_k(sys, hom, {0.03}, 0.01);
    CHECK(pminus[0].omega == doctest::Approx(pp[0].omega).epsilon(1e-9));
    CHECK(disp.omega0 == doctest::Approx(hom.omega).epsilon(1e-9));
}

TEST_CASE("selection expansions on a dispersion with quartic content") {
    // omega = w0 + 0.5*w2*k^2 + (w4/24)*k^4 with nonzero w4 so the
    // third-order error term of k(c) is visible
    const double w0 = 1.0, w2 = 1.3, w4 = 4.8;
    auto disp = DispersionData::from_even_coeffs(w0, 0.5 * w2, w4 / 24.0, 0.5);

    std::vector<double> cs = {0.01, 0.02, 0.04};
    std::vector<double> kerr, werr;
    for (double c : cs) {
        for (double sign : {-1.0, 1.0}) {
            auto [k, w] = select_wavenumber_for_speed(disp, sign * c);
            kerr.push_back(std::abs(k - sign * c / w2));
            werr.push_back(std::abs(w - w0));
        }
    }
    // log-log slopes: 3 for the k expansion error, 2 for omega(c) - omega0
    auto slope = [&](const std::vector<double>& err) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (size_t i = 0; i < cs.size(); ++i) {
            for (int s = 0; s < 2; ++s) {
                double x = std::log(cs[i]), y = std::log(err[2 * i + s]);
                sx += x; sy += y; sxx += x * x; sxy += x * y; ++n;
            }
        }
        return (n * sxy - sx * sy) / (n * sxx - sx * sx);
    };
    CHECK(slope(kerr) == doctest::Approx(3.0).epsilon(0.1));
    CHECK(slope(werr) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("dispersion guards") {
    LambdaOmegaParams p{1.0, 0.5};
    auto sys = make_lambda_omega(p);
    auto hom = lw_hom_osc(sys, 0.6);
    auto family = continue_wavetrain_in_k(sys, hom, {-0.1, -0.05, 0.0, 0.05, 0.1});
    CHECK_THROWS_AS(dispersion_data(sys, family), std::invalid_argument);  // too few samples

    auto fam7 = continue_wavetrain_in_k(sys, hom, symmetric_k_grid(0.2, 3));
    auto disp = dispersion_data(sys, fam7);
    CHECK_THROWS_AS(select_wavenumber_for_speed(disp, 10.0), std::runtime_error);
}
