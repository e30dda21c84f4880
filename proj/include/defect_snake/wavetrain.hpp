#pragma once

#include "defect_snake/rd_system.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <vector>

namespace dsnake {

struct NewtonOptions {
    double tol = 1e-12;      // residual max-norm target
    int max_iter = 30;
    double min_damping = 1e-4;
};

/// A wave train u(x,t) = u_wt(k x - omega t) with 2pi-periodic profile
/// sampled on M collocation points phi_j = 2*pi*j/M.
struct WaveTrain {
    Eigen::MatrixXd profile;  // M x species
    double k = 0.0;
    double omega = 0.0;
    double residual = 0.0;  // collocation residual, max norm
    std::map<std::string, double> params;  // system snapshot

    int points() const { return static_cast<int>(profile.rows()); }
    /// Trigonometric evaluation of species s at arbitrary phase.
    double eval(double phi, int s) const;
};

/// Residual max-norm of k^2 D u'' + omega u' + f(u) on the collocation grid.
double wavetrain_residual(const ReactionDiffusionSystem& sys, const WaveTrain& wt);

/// Solve - omega u' = f(u) for a 2pi-periodic orbit of the kinetics with
/// unknown omega, phase-pinned against the guess. Verifies that the temporal
/// Floquet multiplier rho = 1 of the orbit is algebraically simple and throws
/// otherwise.
WaveTrain solve_homogeneous_oscillation(const ReactionDiffusionSystem& sys,
                                        const Eigen::MatrixXd& guess_profile, double guess_omega,
                                        const NewtonOptions& opts = {});

/// Integrate the kinetics ODE from `start` until transients decay, detect the
/// period from Poincare crossings, and sample the orbit as a profile guess
/// (M x species) with matching frequency guess. Throws when no periodic orbit
/// is reached.
std::pair<Eigen::MatrixXd, double> ode_limit_cycle_guess(const ReactionDiffusionSystem& sys,
                                                         const Eigen::VectorXd& start,
                                                         double transient, int M = 64);

/// Continue the wave-train family in k from a homogeneous oscillation.
/// Intermediate steps are capped at dk_max; a Newton failure reports the last
/// good k in the exception message.
std::vector<WaveTrain> continue_wavetrain_in_k(const ReactionDiffusionSystem& sys,
                                               const WaveTrain& hom_osc,
                                               const std::vector<double>& k_targets,
                                               double dk_max = 0.02,
                                               const NewtonOptions& opts = {});

/// Nonlinear dispersion data from a wave-train family, with the linear
/// dispersion quantities (d_par, a) attached later by the floquet module.
struct DispersionData {
    std::vector<std::pair<double, double>> samples;  // (k, omega)
    double omega0 = 0.0;
    double d2_omega = 0.0;                   // omega_nl''(0)
    Eigen::Vector3d even_fit{0.0, 0.0, 0.0}; // omega = c0 + c1 k^2 + c2 k^4
    double fit_residual = 0.0;
    double k_window = 0.0;                   // max |k| covered by the samples
    double d_par = std::numeric_limits<double>::quiet_NaN();
    double a_coef = std::numeric_limits<double>::quiet_NaN();  // -lambda_lin''(0)/omega_nl''(0)

    double omega_nl(double k) const { return even_fit[0] + even_fit[1] * k * k + even_fit[2] * k * k * k * k; }
    double cg(double k) const { return 2.0 * even_fit[1] * k + 4.0 * even_fit[2] * k * k * k; }

    /// Synthetic dispersion with prescribed even expansion, for analysis without
    /// a solved family.
    static DispersionData from_even_coeffs(double c0, double c1, double c2, double k_window);
};

DispersionData dispersion_data(const ReactionDiffusionSystem& sys, const std::vector<WaveTrain>& family,
                               double fit_tol = 1e-6);

/// Unique wavenumber near zero whose group velocity equals c, and its
/// frequency, both from the fitted dispersion. Throws if no root lies inside
/// the fitted window.
std::pair<double, double> select_wavenumber_for_speed(const DispersionData& disp, double c);

}  // namespace dsnake
