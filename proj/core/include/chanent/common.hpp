/**
 * This code is part of chanent.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CHANENT_COMMON_HPP
#define CHANENT_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace chanent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

/// Structured error carrying a short machine-readable code next to the message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

namespace tol {
// Relative cutoff below which eigenvalues are treated as exact zeros.
inline constexpr double support_cutoff = 1e-10;
// Hermiticity defect allowed relative to the largest entry magnitude.
inline constexpr double hermiticity = 1e-10;
// Trace-preservation / CPTP validation slack.
inline constexpr double cptp = 1e-9;
// Negative eigenvalues beyond -neg_eig * lambda_max are a domain error.
inline constexpr double neg_eig = 1e-9;
}  // namespace tol

inline double log2_safe(double x) { return std::log2(x); }

}  // namespace chanent

#endif
