#pragma once

#include <Eigen/Dense>

#include <complex>

namespace dsnake {

/// Spectral differentiation matrix d/dphi on the 2pi-periodic grid
/// phi_j = 2*pi*j/M, M even. Trefethen's closed form.
Eigen::MatrixXd fourier_diff1(int M);

/// Second derivative on the same grid.
Eigen::MatrixXd fourier_diff2(int M);

/// Complex Fourier coefficient c_m = (1/M) sum_j values[j] exp(-i m phi_j).
std::complex<double> fourier_mode(const Eigen::VectorXd& values, int m);

/// All coefficients for m = -M/2 .. M/2-1, index shifted by M/2.
Eigen::VectorXcd fourier_modes(const Eigen::VectorXd& values);

/// Evaluate the trigonometric interpolant of grid samples at phase phi.
double trig_interp(const Eigen::VectorXd& values, double phi);

/// Smoothstep ramp: 0 for t<=0, 1 for t>=1, C^1 monotone in between.
double smoothstep(double t);

}  // namespace dsnake
