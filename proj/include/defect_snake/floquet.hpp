#pragma once

#include "defect_snake/rd_system.hpp"
#include "defect_snake/turing.hpp"
#include "defect_snake/wavetrain.hpp"

#include <complex>
#include <utility>
#include <vector>

namespace dsnake {

/// Spatial Floquet exponents nu of a wave train or Turing pattern, weakest
/// (smallest |Re nu|) first. Exponents of the n < 0 temporal modes are the
/// conjugates of the n > 0 ones and are included explicitly.
struct FloquetSpectrum {
    std::vector<std::complex<double>> exponents;
    std::vector<int> mode_index;                // dominant temporal mode per exponent
    std::pair<int, int> zero_multiplicity{0, 0};  // (geometric, algebraic) of nu = 0
    double c_d = 0.0;
    double lambda = 0.0;  // spectral parameter of the pencil
    int n_modes = 0;

    std::vector<std::complex<double>> weakest(int count) const;
    /// |Re|, |Im| of the weakest exponent bounded away from zero.
    std::pair<double, double> weak_rates(double zero_tol = 1e-6) const;
};

/// Spectrum of the spatial dynamics around a homogeneous oscillation (k = 0)
/// in a frame moving with c_d, from the algebraic eigenproblem of the
/// first-order operator truncated at |temporal mode| <= n_modes. Multiplicity
/// of nu = 0 is decided by singular-value rank tests with threshold rank_tol.
FloquetSpectrum wavetrain_spectrum(const ReactionDiffusionSystem& sys, const WaveTrain& wt,
                                   double c_d, double omega_d, int n_modes, double lambda = 0.0,
                                   double rank_tol = 1e-7);

/// Max change of the `n_weak` weakest exponents between n_modes and
/// 2*n_modes truncations; the spectral convergence gate.
double wavetrain_spectrum_convergence(const ReactionDiffusionSystem& sys, const WaveTrain& wt,
                                      double c_d, double omega_d, int n_modes, int n_weak = 6);

/// Continuation of the zero temporal eigenvalue along purely imaginary
/// spatial exponents nu = i s: the linear dispersion relation
/// lambda_lin(nu) = c_g nu + d_par nu^2 + ...
struct LinearDispersionFit {
    double cg = 0.0;
    double d_par = 0.0;
    std::vector<std::pair<double, std::complex<double>>> samples;  // (s, lambda(i s))
    double fit_residual = 0.0;
};

LinearDispersionFit linear_dispersion_fit(const ReactionDiffusionSystem& sys, const WaveTrain& wt,
                                          const std::vector<double>& nu_imag_samples, int n_modes);

/// Compute the linear-dispersion quantities and attach d_par and
/// a = -lambda_lin''(0)/omega_nl''(0) to the dispersion data.
void attach_linear_dispersion(DispersionData& disp, const ReactionDiffusionSystem& sys,
                              const WaveTrain& hom_osc, int n_modes = 16, double s_max = 0.05);

/// Spectrum of a Turing pattern via per-temporal-mode monodromy over one
/// spatial period. Verifies that the zero pair sits in mode 0 and that the
/// weakest hyperbolic exponents sit in modes +-1, else throws.
FloquetSpectrum turing_spectrum(const ReactionDiffusionSystem& sys, const TuringPattern& tp,
                                double omega_d, int n_modes, double rank_tol = 1e-7);

/// Reorder `current` so that entry i is the exponent closest to previous[i];
/// keeps branch labels continuous along parameter sweeps.
std::vector<std::complex<double>> match_exponents(const std::vector<std::complex<double>>& previous,
                                                  std::vector<std::complex<double>> current);

}  // namespace dsnake
