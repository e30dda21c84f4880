#pragma once

#include "defect_snake/rd_system.hpp"
#include "defect_snake/wavetrain.hpp"

#include <Eigen/Dense>

#include <vector>

namespace dsnake {

/// Stationary spatially periodic pattern u(x) = u_Tur(kappa x) with an even
/// 2pi-periodic profile stored as cosine coefficients (species-major).
struct TuringPattern {
    Eigen::MatrixXd cos_coeffs;  // (n_cos+1) x species, u_s(phi) = sum_m c(m,s) cos(m phi)
    double kappa = 0.0;
    double mu = 0.0;
    double amplitude = 0.0;  // L2 distance from the spatial mean
    double residual = 0.0;

    int n_cos() const { return static_cast<int>(cos_coeffs.rows()) - 1; }
    double eval(double phi, int s) const;
    double eval_dphi(double phi, int s) const;
    /// Sample the profile on Nx equispaced points of [0, 2pi).
    Eigen::MatrixXd grid_profile(int Nx) const;
};

/// Residual max-norm of kappa^2 D u'' + f(u) at the collocation nodes.
double turing_residual(const ReactionDiffusionSystem& sys, const TuringPattern& tp);

/// Even Newton solve of kappa^2 D u'' + f(u) = 0 at fixed (kappa, mu), from a
/// cosine-coefficient guess. Throws on divergence; a collapse to the
/// homogeneous state (amplitude < 1e-8) is reported as sub-onset.
TuringPattern solve_turing(const ReactionDiffusionSystem& sys, double kappa, double mu,
                           const Eigen::MatrixXd& guess_coeffs, const NewtonOptions& opts = {});

/// Seed coefficients from the critical linear eigenvector at (kappa, mu).
Eigen::MatrixXd turing_linear_seed(const ReactionDiffusionSystem& sys, double kappa,
                                   const Eigen::VectorXd& equilibrium, double amplitude, int n_cos);

/// Locate the Turing onset in mu (bisection on the leading growth rate over
/// kappa) and return (mu_T, kappa_c). Thin wrapper over rd_system's finder.
TuringPoint turing_onset(const ReactionDiffusionSystem& sys, const Eigen::VectorXd& eq_guess,
                         double mu_lo, double mu_hi);

/// Continue a pattern across a kappa grid at fixed mu, seeding each point
/// with its neighbor. A fold (Newton failure) reports the last good kappa.
std::vector<TuringPattern> continue_turing_in_kappa(const ReactionDiffusionSystem& sys, double mu,
                                                    const std::vector<double>& kappa_grid,
                                                    const TuringPattern& seed,
                                                    const NewtonOptions& opts = {});

}  // namespace dsnake
