#include "defect_snake/fourier.hpp"

#include <cmath>
#include <stdexcept>

namespace dsnake {

Eigen::MatrixXd fourier_diff1(int M) {
    if (M % 2 != 0) throw std::invalid_argument("fourier_diff1: M must be even");
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(M, M);
    const double h = 2.0 * M_PI / M;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            if (i == j) continue;
            int d = i - j;
            double sign = (d % 2 == 0) ? 1.0 : -1.0;
            D(i, j) = 0.5 * sign / std::tan(0.5 * h * d);
        }
    return D;
}

Eigen::MatrixXd fourier_diff2(int M) {
    if (M % 2 != 0) throw std::invalid_argument("fourier_diff2: M must be even");
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(M, M);
    const double h = 2.0 * M_PI / M;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            if (i == j) {
                D(i, j) = -M_PI * M_PI / (3.0 * h * h) - 1.0 / 6.0;
            } else {
                int d = i - j;
                double sign = (d % 2 == 0) ? 1.0 : -1.0;
                double s = std::sin(0.5 * h * d);
                D(i, j) = -0.5 * sign / (s * s);
            }
        }
    return D;
}

std::complex<double> fourier_mode(const Eigen::VectorXd& values, int m) {
    const int M = static_cast<int>(values.size());
    std::complex<double> acc(0.0, 0.0);
    for (int j = 0; j < M; ++j) {
        double phi = 2.0 * M_PI * j / M;
        acc += values[j] * std::exp(std::complex<double>(0.0, -m * phi));
    }
    return acc / double(M);
}

Eigen::VectorXcd fourier_modes(const Eigen::VectorXd& values) {
    const int M = static_cast<int>(values.size());
    Eigen::VectorXcd out(M);
    for (int m = -M / 2; m < M / 2; ++m) out[m + M / 2] = fourier_mode(values, m);
    return out;
}

double trig_interp(const Eigen::VectorXd& values, double phi) {
    const int M = static_cast<int>(values.size());
    Eigen::VectorXcd c = fourier_modes(values);
    std::complex<double> acc(0.0, 0.0);
    for (int m = -M / 2; m < M / 2; ++m) {
        if (m == -M / 2) {
            // split the Nyquist mode symmetrically to keep the interpolant real
            acc += c[0] * std::cos(double(M / 2) * phi);
        } else {
            acc += c[m + M / 2] * std::exp(std::complex<double>(0.0, m * phi));
        }
    }
    return acc.real();
}

double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * (3.0 - 2.0 * t);
}

}  // namespace dsnake
