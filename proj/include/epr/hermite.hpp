#pragma once

#include <Eigen/Dense>

namespace epr {

// Harmonic-oscillator position wavefunctions psi_n(x) for the convention
// x = a + a^dag (vacuum variance 1):
//   psi_0(x) = (2*pi)^(-1/4) * exp(-x^2/4)
//   psi_{n+1}(x) = (x*psi_n(x) - sqrt(n)*psi_{n-1}(x)) / sqrt(n+1)
// Returns a (x.size() x (n_max+1)) matrix, column n holding psi_n at each point.
// The recurrence is stable upward; no factorials are formed.
Eigen::MatrixXd hermite_functions(const Eigen::VectorXd& x, int n_max);

}  // namespace epr
