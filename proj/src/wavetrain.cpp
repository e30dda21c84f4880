#include "defect_snake/wavetrain.hpp"

#include "defect_snake/fourier.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dsnake {

namespace {

// Unknown layout: species-major profile values (all of species 0, then 1, ...)
// followed by omega.
struct ProfileProblem {
    const ReactionDiffusionSystem& sys;
    double k;
    Eigen::MatrixXd D1, D2;
    Eigen::VectorXd ref_flat;     // phase reference profile
    Eigen::VectorXd ref_dphi;     // its phase derivative, flattened

    ProfileProblem(const ReactionDiffusionSystem& s, double k_, const Eigen::MatrixXd& ref)
        : sys(s), k(k_) {
        const int M = static_cast<int>(ref.rows());
        D1 = fourier_diff1(M);
        D2 = fourier_diff2(M);
        ref_flat = flatten(ref);
        Eigen::MatrixXd dref = D1 * ref;
        ref_dphi = flatten(dref);
    }

    static Eigen::VectorXd flatten(const Eigen::MatrixXd& prof) {
        const int M = static_cast<int>(prof.rows());
        const int n = static_cast<int>(prof.cols());
        Eigen::VectorXd out(M * n);
        for (int s = 0; s < n; ++s) out.segment(s * M, M) = prof.col(s);
        return out;
    }

    static Eigen::MatrixXd unflatten(const Eigen::VectorXd& u, int M, int n) {
        Eigen::MatrixXd out(M, n);
        for (int s = 0; s < n; ++s) out.col(s) = u.segment(s * M, M);
        return out;
    }

    int M() const { return static_cast<int>(D1.rows()); }
    int n() const { return sys.species_count; }

    // residual of k^2 D u'' + omega u' + f(u), plus the phase condition
    Eigen::VectorXd residual(const Eigen::VectorXd& u, double omega) const {
        const int m = M(), ns = n();
        Eigen::VectorXd r(m * ns + 1);
        Eigen::VectorXd fval(ns), up(ns);
        for (int s = 0; s < ns; ++s) {
            r.segment(s * m, m) =
                (k * k * sys.diffusion[s]) * (D2 * u.segment(s * m, m)) + omega * (D1 * u.segment(s * m, m));
        }
        Eigen::VectorXd point(ns);
        for (int j = 0; j < m; ++j) {
            for (int s = 0; s < ns; ++s) point[s] = u[s * m + j];
            sys.kinetics(point.data(), fval.data());
            for (int s = 0; s < ns; ++s) r[s * m + j] += fval[s];
        }
        r[m * ns] = ref_dphi.dot(u - ref_flat) / double(m);
        return r;
    }

    void jacobian(const Eigen::VectorXd& u, double omega, Eigen::MatrixXd& J) const {
        const int m = M(), ns = n();
        const int N = m * ns;
        J.setZero(N + 1, N + 1);
        for (int s = 0; s < ns; ++s)
            J.block(s * m, s * m, m, m) = (k * k * sys.diffusion[s]) * D2 + omega * D1;
        Eigen::VectorXd point(ns);
        Eigen::MatrixXd df(ns, ns);
        std::vector<double> dfbuf(ns * ns);
        for (int j = 0; j < m; ++j) {
            for (int s = 0; s < ns; ++s) point[s] = u[s * m + j];
            sys.kinetics_jacobian(point.data(), dfbuf.data());
            for (int a = 0; a < ns; ++a)
                for (int b = 0; b < ns; ++b) J(a * m + j, b * m + j) += dfbuf[a * ns + b];
        }
        for (int s = 0; s < ns; ++s) J.block(s * m, N, m, 1) = D1 * u.segment(s * m, m);
        J.block(N, 0, 1, N) = ref_dphi.transpose() / double(m);
        J(N, N) = 0.0;
    }
};

std::pair<Eigen::VectorXd, double> newton_profile(const ProfileProblem& prob, Eigen::VectorXd u,
                                                  double omega, const NewtonOptions& opts) {
    Eigen::MatrixXd J;
    for (int it = 0; it < opts.max_iter; ++it) {
        Eigen::VectorXd r = prob.residual(u, omega);
        double rn = r.lpNorm<Eigen::Infinity>();
        if (rn < opts.tol) return {u, omega};
        prob.jacobian(u, omega, J);
        Eigen::VectorXd step = J.partialPivLu().solve(-r);
        double damping = 1.0;
        const int N = static_cast<int>(u.size());
        while (true) {
            Eigen::VectorXd ut = u + damping * step.head(N);
            double wt = omega + damping * step[N];
            if (prob.residual(ut, wt).lpNorm<Eigen::Infinity>() < rn || damping < opts.min_damping) {
                u = ut;
                omega = wt;
                break;
            }
            damping *= 0.5;
        }
        if (damping < opts.min_damping)
            throw std::runtime_error("wave-train Newton stalled (residual " + std::to_string(rn) + ")");
    }
    Eigen::VectorXd r = prob.residual(u, omega);
    if (r.lpNorm<Eigen::Infinity>() < 100 * opts.tol) return {u, omega};
    throw std::runtime_error("wave-train Newton did not converge");
}

// Temporal Floquet multipliers of the periodic kinetics orbit, via RK4 on the
// variational equation dv/dphi = -f'(u(phi)) v / omega over one period.
Eigen::MatrixXd kinetics_monodromy(const ReactionDiffusionSystem& sys, const WaveTrain& wt, int steps = 4000) {
    const int n = sys.species_count;
    Eigen::MatrixXd Phi = Eigen::MatrixXd::Identity(n, n);
    const double h = 2.0 * M_PI / steps;
    Eigen::VectorXd point(n);
    std::vector<double> dfbuf(n * n);
    auto rhs = [&](double phi, const Eigen::MatrixXd& V) {
        for (int s = 0; s < n; ++s) point[s] = wt.eval(phi, s);
        sys.kinetics_jacobian(point.data(), dfbuf.data());
        Eigen::MatrixXd A(n, n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) A(a, b) = dfbuf[a * n + b];
        return Eigen::MatrixXd((-1.0 / wt.omega) * (A * V));
    };
    for (int i = 0; i < steps; ++i) {
        double phi = i * h;
        Eigen::MatrixXd k1 = rhs(phi, Phi);
        Eigen::MatrixXd k2 = rhs(phi + 0.5 * h, Phi + 0.5 * h * k1);
        Eigen::MatrixXd k3 = rhs(phi + 0.5 * h, Phi + 0.5 * h * k2);
        Eigen::MatrixXd k4 = rhs(phi + h, Phi + h * k3);
        Phi += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return Phi;
}

}  // namespace

double WaveTrain::eval(double phi, int s) const {
    // cache-free trig evaluation; profiles are small so this is fine
    return trig_interp(profile.col(s), phi);
}

double wavetrain_residual(const ReactionDiffusionSystem& sys, const WaveTrain& wt) {
    ProfileProblem prob(sys, wt.k, wt.profile);
    Eigen::VectorXd u = ProfileProblem::flatten(wt.profile);
    Eigen::VectorXd r = prob.residual(u, wt.omega);
    return r.head(r.size() - 1).lpNorm<Eigen::Infinity>();
}

WaveTrain solve_homogeneous_oscillation(const ReactionDiffusionSystem& sys,
                                        const Eigen::MatrixXd& guess_profile, double guess_omega,
                                        const NewtonOptions& opts) {
    if (guess_omega == 0.0) throw std::invalid_argument("guess omega must be nonzero");
    ProfileProblem prob(sys, 0.0, guess_profile);
    auto [u, omega] = newton_profile(prob, ProfileProblem::flatten(guess_profile), guess_omega, opts);
    WaveTrain wt;
    wt.profile = ProfileProblem::unflatten(u, prob.M(), prob.n());
    wt.k = 0.0;
    wt.omega = omega;
    wt.params = sys.params;
    wt.residual = wavetrain_residual(sys, wt);

    Eigen::MatrixXd dprof = fourier_diff1(prob.M()) * wt.profile;
    if (dprof.lpNorm<Eigen::Infinity>() < 1e-8)
        throw std::runtime_error("homogeneous oscillation collapsed to an equilibrium");

    // rho = 1 must be algebraically simple for the orbit (2-species systems:
    // the second multiplier has to stay away from 1).
    Eigen::MatrixXd Mon = kinetics_monodromy(sys, wt);
    Eigen::EigenSolver<Eigen::MatrixXd> es(Mon);
    int near_one = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i)
        if (std::abs(es.eigenvalues()[i] - std::complex<double>(1.0, 0.0)) < 1e-6) ++near_one;
    if (near_one != 1) {
        std::ostringstream os;
        os << "temporal Floquet multiplier rho=1 is not algebraically simple (found " << near_one
           << " multipliers within 1e-6 of 1)";
        throw std::runtime_error(os.str());
    }
    return wt;
}

std::pair<Eigen::MatrixXd, double> ode_limit_cycle_guess(const ReactionDiffusionSystem& sys,
                                                         const Eigen::VectorXd& start,
                                                         double transient, int M) {
    const int n = sys.species_count;
    const double dt = 2e-3;
    Eigen::VectorXd u = start;
    auto step = [&](Eigen::VectorXd& v, double h) {
        Eigen::VectorXd k1 = sys.f(v);
        Eigen::VectorXd k2 = sys.f(v + 0.5 * h * k1);
        Eigen::VectorXd k3 = sys.f(v + 0.5 * h * k2);
        Eigen::VectorXd k4 = sys.f(v + h * k3);
        v += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    };
    for (double t = 0.0; t < transient; t += dt) step(u, dt);

    // Poincare section through the current point, crossing direction given by
    // the current velocity of species 0.
    const double section = u[0];
    const double direction = sys.f(u)[0] >= 0 ? 1.0 : -1.0;
    std::vector<double> crossings;
    double t = 0.0, prev0 = u[0], prev_t = 0.0;
    Eigen::VectorXd prev_u = u;
    const double t_max = std::max(200.0, 4.0 * transient);
    Eigen::VectorXd first_cross_state;
    while (t < t_max && crossings.size() < 2) {
        step(u, dt);
        t += dt;
        bool crossed = direction > 0 ? (prev0 < section && u[0] >= section)
                                     : (prev0 > section && u[0] <= section);
        if (crossed && t > 10 * dt) {
            double frac = (section - prev0) / (u[0] - prev0);
            crossings.push_back(prev_t + frac * dt);
            if (crossings.size() == 1) first_cross_state = prev_u + frac * (u - prev_u);
        }
        prev0 = u[0];
        prev_t = t;
        prev_u = u;
    }
    if (crossings.size() < 2)
        throw std::runtime_error("ode_limit_cycle_guess: no periodic orbit detected");
    const double T = crossings[1] - crossings[0];
    if (T <= 10 * dt) throw std::runtime_error("ode_limit_cycle_guess: degenerate period");

    // sample one period starting from the section crossing
    Eigen::MatrixXd samples(M, n);
    Eigen::VectorXd v = first_cross_state;
    const int sub = 64;
    for (int j = 0; j < M; ++j) {
        samples.row(j) = v;
        for (int s = 0; s < sub; ++s) step(v, T / (M * sub));
    }
    // profile convention u(t) = P(-omega t): sample backwards in time
    Eigen::MatrixXd prof(M, n);
    for (int j = 0; j < M; ++j) prof.row(j) = samples.row((M - j) % M);
    return {prof, 2.0 * M_PI / T};
}

std::vector<WaveTrain> continue_wavetrain_in_k(const ReactionDiffusionSystem& sys,
                                               const WaveTrain& hom_osc,
                                               const std::vector<double>& k_targets, double dk_max,
                                               const NewtonOptions& opts) {
    std::vector<WaveTrain> out;
    out.reserve(k_targets.size());
    // walk separately into k > 0 and k < 0, always seeding from the nearest
    // solved wave train
    for (double k_target : k_targets) {
        const WaveTrain* nearest = &hom_osc;
        for (const auto& w : out)
            if (std::abs(w.k - k_target) < std::abs(nearest->k - k_target) &&
                ((w.k >= 0) == (k_target >= 0)))
                nearest = &w;
        WaveTrain current = *nearest;
        double k = current.k;
        while (std::abs(k_target - k) > 1e-14) {
            double step = std::clamp(k_target - k, -dk_max, dk_max);
            k += step;
            ProfileProblem prob(sys, k, current.profile);
            try {
                auto [u, omega] =
                    newton_profile(prob, ProfileProblem::flatten(current.profile), current.omega, opts);
                current.profile = ProfileProblem::unflatten(u, prob.M(), prob.n());
                current.omega = omega;
                current.k = k;
            } catch (const std::exception& e) {
                std::ostringstream os;
                os << "continuation in k failed at k=" << k << " (last good k=" << current.k
                   << "): " << e.what();
                throw std::runtime_error(os.str());
            }
        }
        current.residual = wavetrain_residual(sys, current);
        current.params = sys.params;
        out.push_back(current);
    }
    return out;
}

DispersionData DispersionData::from_even_coeffs(double c0, double c1, double c2, double k_window) {
    DispersionData d;
    d.even_fit = Eigen::Vector3d(c0, c1, c2);
    d.omega0 = c0;
    d.d2_omega = 2.0 * c1;
    d.k_window = k_window;
    return d;
}

DispersionData dispersion_data(const ReactionDiffusionSystem& sys, const std::vector<WaveTrain>& family,
                               double fit_tol) {
    (void)sys;
    if (family.size() < 7)
        throw std::invalid_argument("dispersion_data: need at least 7 wave trains in the family");
    DispersionData d;
    double kmin = 1e300, kmax = -1e300;
    for (const auto& wt : family) {
        d.samples.emplace_back(wt.k, wt.omega);
        kmin = std::min(kmin, wt.k);
        kmax = std::max(kmax, wt.k);
    }
    if (kmin > -1e-12 || kmax < 1e-12)
        throw std::invalid_argument("dispersion_data: family must straddle k = 0");
    d.k_window = std::max(std::abs(kmin), std::abs(kmax));

    const int N = static_cast<int>(d.samples.size());
    Eigen::MatrixXd A(N, 3);
    Eigen::VectorXd b(N);
    for (int i = 0; i < N; ++i) {
        double k = d.samples[i].first;
        A(i, 0) = 1.0;
        A(i, 1) = k * k;
        A(i, 2) = k * k * k * k;
        b[i] = d.samples[i].second;
    }
    d.even_fit = A.colPivHouseholderQr().solve(b);
    d.fit_residual = (A * d.even_fit - b).lpNorm<Eigen::Infinity>();
    double scale = std::abs(d.even_fit[0]) > 0 ? std::abs(d.even_fit[0]) : 1.0;
    if (d.fit_residual > fit_tol * scale) {
        std::ostringstream os;
        os << "dispersion_data: even quartic fit residual " << d.fit_residual
           << " exceeds tolerance; the k window is too wide";
        throw std::runtime_error(os.str());
    }
    d.omega0 = d.even_fit[0];
    d.d2_omega = 2.0 * d.even_fit[1];
    return d;
}

std::pair<double, double> select_wavenumber_for_speed(const DispersionData& disp, double c) {
    if (disp.d2_omega == 0.0)
        throw std::invalid_argument("select_wavenumber_for_speed: omega_nl''(0) vanishes");
    double k = c / disp.d2_omega;
    for (int it = 0; it < 60; ++it) {
        double g = disp.cg(k) - c;
        double dg = 2.0 * disp.even_fit[1] + 12.0 * disp.even_fit[2] * k * k;
        double step = -g / dg;
        k += step;
        if (std::abs(step) < 1e-16) break;
    }
    if (std::abs(disp.cg(k) - c) > 1e-12 * std::max(1.0, std::abs(c)) ||
        (disp.k_window > 0 && std::abs(k) > 1.05 * disp.k_window))
        throw std::runtime_error("select_wavenumber_for_speed: no group-velocity root inside the fitted window");
    return {k, disp.omega_nl(k)};
}

}  // namespace dsnake
