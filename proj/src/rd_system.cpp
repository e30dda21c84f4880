#include "defect_snake/rd_system.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace dsnake {

ReactionDiffusionSystem ReactionDiffusionSystem::with_param(const std::string& name, double value) const {
    if (!params.count(name))
        throw std::invalid_argument("unknown parameter '" + name + "'");
    auto p = params;
    p[name] = value;
    ReactionDiffusionSystem out = rebuild(p);
    out.bifurcation_param = bifurcation_param;
    return out;
}

Eigen::VectorXd ReactionDiffusionSystem::f(const Eigen::VectorXd& u) const {
    Eigen::VectorXd out(species_count);
    kinetics(u.data(), out.data());
    return out;
}

Eigen::MatrixXd ReactionDiffusionSystem::jac(const Eigen::VectorXd& u) const {
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> out(species_count, species_count);
    kinetics_jacobian(u.data(), out.data());
    return out;
}

ReactionDiffusionSystem make_brusselator(const BrusselatorParams& p) {
    if (!(p.B > 0.0) || !(p.E > 0.0) || !(p.D > 0.0)) {
        std::ostringstream os;
        os << "brusselator parameters must be positive, got B=" << p.B << " E=" << p.E << " D=" << p.D;
        throw std::invalid_argument(os.str());
    }
    ReactionDiffusionSystem sys;
    sys.species_count = 2;
    sys.diffusion = Eigen::Vector2d(p.D, 1.0);
    const double B = p.B, E = p.E;
    sys.kinetics = [B, E](const double* u, double* out) {
        const double U = u[0], V = u[1];
        out[0] = E - (B + 1.0) * U + V * U * U;
        out[1] = B * U - V * U * U;
    };
    sys.kinetics_jacobian = [B](const double* u, double* out) {
        const double U = u[0], V = u[1];
        out[0] = -(B + 1.0) + 2.0 * U * V;
        out[1] = U * U;
        out[2] = B - 2.0 * U * V;
        out[3] = -U * U;
    };
    sys.params = {{"B", p.B}, {"E", p.E}, {"D", p.D}};
    sys.bifurcation_param = "D";
    sys.rebuild = [](const std::map<std::string, double>& prm) {
        BrusselatorParams q{prm.at("D"), prm.at("B"), prm.at("E")};
        return make_brusselator(q);
    };
    return sys;
}

ReactionDiffusionSystem make_lambda_omega(const LambdaOmegaParams& p) {
    if (p.q == 0.0)
        throw std::invalid_argument("lambda-omega parameter q must be nonzero");
    ReactionDiffusionSystem sys;
    sys.species_count = 2;
    sys.diffusion = Eigen::Vector2d(1.0, 1.0);
    const double w0 = p.omega0, q = p.q;
    // Real form of A_t = A_xx + (1 + i w0) A - (1 + i q)|A|^2 A with A = u + i v.
    sys.kinetics = [w0, q](const double* u, double* out) {
        const double U = u[0], V = u[1];
        const double R2 = U * U + V * V;
        out[0] = U - w0 * V - R2 * (U - q * V);
        out[1] = V + w0 * U - R2 * (V + q * U);
    };
    sys.kinetics_jacobian = [w0, q](const double* u, double* out) {
        const double U = u[0], V = u[1];
        const double R2 = U * U + V * V;
        out[0] = 1.0 - R2 - 2.0 * U * (U - q * V);
        out[1] = -w0 + q * R2 - 2.0 * V * (U - q * V);
        out[2] = w0 - q * R2 - 2.0 * U * (V + q * U);
        out[3] = 1.0 - R2 - 2.0 * V * (V + q * U);
    };
    sys.params = {{"omega0", p.omega0}, {"q", p.q}};
    sys.bifurcation_param = "q";
    sys.rebuild = [](const std::map<std::string, double>& prm) {
        LambdaOmegaParams q{prm.at("omega0"), prm.at("q")};
        return make_lambda_omega(q);
    };
    return sys;
}

ReactionDiffusionSystem make_system(const std::string& name, const std::map<std::string, double>& params) {
    auto get = [&](const std::string& key, double fallback) {
        auto it = params.find(key);
        return it == params.end() ? fallback : it->second;
    };
    if (name == "brusselator") {
        BrusselatorParams p;
        p.D = get("D", p.D);
        p.B = get("B", p.B);
        p.E = get("E", p.E);
        return make_brusselator(p);
    }
    if (name == "lambda_omega") {
        LambdaOmegaParams p;
        p.omega0 = get("omega0", p.omega0);
        p.q = get("q", p.q);
        return make_lambda_omega(p);
    }
    throw std::invalid_argument("unknown model '" + name + "'");
}

Eigen::VectorXd find_equilibrium(const ReactionDiffusionSystem& sys, Eigen::VectorXd guess,
                                 double tol, int max_iter) {
    for (int it = 0; it < max_iter; ++it) {
        Eigen::VectorXd r = sys.f(guess);
        if (r.lpNorm<Eigen::Infinity>() < tol) return guess;
        Eigen::VectorXd step = sys.jac(guess).partialPivLu().solve(-r);
        double damping = 1.0;
        const double r0 = r.norm();
        while (damping > 1e-4) {
            Eigen::VectorXd trial = guess + damping * step;
            if (sys.f(trial).norm() < r0 || damping * step.norm() < tol) {
                guess = trial;
                break;
            }
            damping *= 0.5;
        }
        if (damping <= 1e-4)
            throw std::runtime_error("find_equilibrium: damped Newton stalled");
    }
    if (sys.f(guess).lpNorm<Eigen::Infinity>() < 100 * tol) return guess;
    throw std::runtime_error("find_equilibrium: Newton did not converge");
}

double DispersionTable::max_growth(double* argmax_kappa) const {
    double best = -std::numeric_limits<double>::infinity();
    double best_kappa = 0.0;
    for (int i = 0; i < kappa.size(); ++i)
        for (const auto& l : lambda[i])
            if (l.real() > best) {
                best = l.real();
                best_kappa = kappa[i];
            }
    if (argmax_kappa) *argmax_kappa = best_kappa;
    return best;
}

DispersionTable linear_stability_homogeneous(const ReactionDiffusionSystem& sys,
                                             const Eigen::VectorXd& equilibrium,
                                             const Eigen::VectorXd& kappa_grid) {
    DispersionTable tab;
    tab.kappa = kappa_grid;
    tab.lambda.resize(kappa_grid.size());
    Eigen::MatrixXd J = sys.jac(equilibrium);
    for (int i = 0; i < kappa_grid.size(); ++i) {
        const double k2 = kappa_grid[i] * kappa_grid[i];
        Eigen::MatrixXd A = J;
        A.diagonal() -= k2 * sys.diffusion;
        Eigen::EigenSolver<Eigen::MatrixXd> es(A);
        std::vector<std::complex<double>> lam(es.eigenvalues().data(),
                                              es.eigenvalues().data() + sys.species_count);
        std::sort(lam.begin(), lam.end(), [](auto a, auto b) {
            return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
        });
        tab.lambda[i] = std::move(lam);
    }
    return tab;
}

namespace {

// Leading growth rate at kappa = 0 together with the imaginary part of the
// dominant eigenvalue.
std::pair<double, double> hopf_indicator(const ReactionDiffusionSystem& sys, const Eigen::VectorXd& eq_guess) {
    Eigen::VectorXd eq = find_equilibrium(sys, eq_guess);
    Eigen::EigenSolver<Eigen::MatrixXd> es(sys.jac(eq));
    double best = -1e300, freq = 0.0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        if (es.eigenvalues()[i].real() > best) {
            best = es.eigenvalues()[i].real();
            freq = std::abs(es.eigenvalues()[i].imag());
        }
    }
    return {best, freq};
}

// Leading growth over kappa in (0, kappa_max], maximized on a coarse grid and
// refined by golden-section around the best grid point.
std::pair<double, double> turing_indicator(const ReactionDiffusionSystem& sys,
                                           const Eigen::VectorXd& eq_guess, double kappa_max) {
    Eigen::VectorXd eq = find_equilibrium(sys, eq_guess);
    Eigen::MatrixXd J = sys.jac(eq);
    auto growth = [&](double kappa) {
        Eigen::MatrixXd A = J;
        A.diagonal() -= (kappa * kappa) * sys.diffusion;
        Eigen::EigenSolver<Eigen::MatrixXd> es(A);
        double best = -1e300;
        for (int i = 0; i < es.eigenvalues().size(); ++i)
            best = std::max(best, es.eigenvalues()[i].real());
        return best;
    };
    const int n = 400;
    double best = -1e300, best_k = 0.0;
    for (int i = 1; i <= n; ++i) {
        double kappa = kappa_max * i / n;
        double g = growth(kappa);
        if (g > best) {
            best = g;
            best_k = kappa;
        }
    }
    double lo = std::max(1e-6, best_k - kappa_max / n), hi = std::min(kappa_max, best_k + kappa_max / n);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi, x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = growth(x1), f2 = growth(x2);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + gr * (b - a); f2 = growth(x2);
        } else {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - gr * (b - a); f1 = growth(x1);
        }
    }
    double kc = 0.5 * (a + b);
    return {growth(kc), kc};
}

}  // namespace

HopfPoint find_hopf_threshold(const ReactionDiffusionSystem& sys, const Eigen::VectorXd& eq_guess,
                              double mu_lo, double mu_hi, double tol) {
    auto value = [&](double mu) { return hopf_indicator(sys.with_mu(mu), eq_guess); };
    double flo = value(mu_lo).first, fhi = value(mu_hi).first;
    if (flo * fhi > 0.0)
        throw std::runtime_error("find_hopf_threshold: no sign change of the kappa=0 growth rate in the window");
    double lo = mu_lo, hi = mu_hi;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (value(mid).first * flo <= 0.0)
            hi = mid;
        else {
            lo = mid;
        }
    }
    double mu = 0.5 * (lo + hi);
    return {mu, value(mu).second};
}

TuringPoint find_turing_threshold(const ReactionDiffusionSystem& sys, const Eigen::VectorXd& eq_guess,
                                  double mu_lo, double mu_hi, double kappa_max, double tol) {
    auto value = [&](double mu) { return turing_indicator(sys.with_mu(mu), eq_guess, kappa_max); };
    double flo = value(mu_lo).first, fhi = value(mu_hi).first;
    if (flo * fhi > 0.0)
        throw std::runtime_error("find_turing_threshold: no sign change of the Turing growth rate in the window");
    double lo = mu_lo, hi = mu_hi;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (value(mid).first * flo <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    double mu = 0.5 * (lo + hi);
    return {mu, value(mu).second};
}

}  // namespace dsnake
