#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace dsnake {

/// Pointwise kinetics u -> f(u). Buffers have species_count entries.
using KineticsFn = std::function<void(const double* u, double* f)>;
/// Pointwise kinetics Jacobian u -> df(u), row-major species_count^2.
using KineticsJacFn = std::function<void(const double* u, double* df)>;

/// A 1-D reaction-diffusion model u_t = D u_xx + f(u) with a designated
/// bifurcation parameter. Immutable after construction; kinetics are pure,
/// so instances can be shared freely across workers.
struct ReactionDiffusionSystem {
    int species_count = 2;
    Eigen::VectorXd diffusion;  // diagonal of D, strictly positive
    KineticsFn kinetics;
    KineticsJacFn kinetics_jacobian;
    std::map<std::string, double> params;
    std::string bifurcation_param;  // key into params acting as mu
    std::function<ReactionDiffusionSystem(const std::map<std::string, double>&)> rebuild;

    double mu() const { return params.at(bifurcation_param); }

    ReactionDiffusionSystem with_param(const std::string& name, double value) const;
    ReactionDiffusionSystem with_mu(double value) const { return with_param(bifurcation_param, value); }

    Eigen::VectorXd f(const Eigen::VectorXd& u) const;
    Eigen::MatrixXd jac(const Eigen::VectorXd& u) const;
};

struct BrusselatorParams {
    double D = 0.27;  // diffusion ratio of species U; the default bifurcation parameter
    double B = 3.0;
    double E = 1.4;
};

struct LambdaOmegaParams {
    double omega0 = 1.0;
    double q = 0.5;  // nonlinear frequency shift; must be nonzero
};

ReactionDiffusionSystem make_brusselator(const BrusselatorParams& p);
ReactionDiffusionSystem make_lambda_omega(const LambdaOmegaParams& p);

/// Build a model by name ("brusselator" or "lambda_omega") from named parameters.
ReactionDiffusionSystem make_system(const std::string& name, const std::map<std::string, double>& params);

/// Damped Newton for f(u) = 0 started from `guess`.
Eigen::VectorXd find_equilibrium(const ReactionDiffusionSystem& sys, Eigen::VectorXd guess,
                                 double tol = 1e-13, int max_iter = 50);

/// Temporal eigenvalues of -kappa^2 D + f'(u*) on a wavenumber grid,
/// sorted by descending real part per row.
struct DispersionTable {
    Eigen::VectorXd kappa;
    std::vector<std::vector<std::complex<double>>> lambda;  // [i][species]
    /// Largest real part over the whole table and the kappa attaining it.
    double max_growth(double* argmax_kappa = nullptr) const;
};

DispersionTable linear_stability_homogeneous(const ReactionDiffusionSystem& sys,
                                             const Eigen::VectorXd& equilibrium,
                                             const Eigen::VectorXd& kappa_grid);

struct HopfPoint {
    double mu;
    double frequency;
};

struct TuringPoint {
    double mu;
    double kappa_c;
};

/// Locate the Hopf threshold (complex pair of f'(u*) crossing the axis at
/// kappa = 0) by bisection in mu over [mu_lo, mu_hi]. The equilibrium is
/// re-solved from eq_guess at every mu.
HopfPoint find_hopf_threshold(const ReactionDiffusionSystem& sys, const Eigen::VectorXd& eq_guess,
                              double mu_lo, double mu_hi, double tol = 1e-10);

/// Locate the Turing threshold (real eigenvalue crossing at kappa_c != 0) by
/// bisection on the leading real eigenvalue maximized over kappa > 0.
TuringPoint find_turing_threshold(const ReactionDiffusionSystem& sys, const Eigen::VectorXd& eq_guess,
                                  double mu_lo, double mu_hi, double kappa_max = 8.0,
                                  double tol = 1e-10);

}  // namespace dsnake
