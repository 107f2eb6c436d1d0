#pragma once

#include <Eigen/Dense>

#include "epr/errors.hpp"

namespace epr {

// Quadrature convention used throughout: x = a + a^dag, p = -i(a - a^dag),
// so [x, p] = 2i and the vacuum has Var(x) = Var(p) = 1.  Two-mode vectors
// are ordered (x_A, p_A, x_B, p_B).

// Uncertainty constants for the two stations: Delta(x_A)Delta(p_A) >= C,
// Delta(x_B)Delta(p_B) >= D.  Both equal 1 in this convention.
struct UncertaintyBounds {
  double c = 1.0;
  double d = 1.0;
};

// Symplectic form Omega for (x_A, p_A, x_B, p_B) with [x, p] = 2i.
Eigen::Matrix4d symplectic_form();

// Gaussian two-mode state: mean vector and covariance matrix
// cov_ij = <R_i R_j + R_j R_i>/2 - <R_i><R_j>.
struct GaussianState {
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Matrix4d cov = Eigen::Matrix4d::Identity();
};

struct SingleModeGaussian {
  Eigen::Vector2d mean = Eigen::Vector2d::Zero();
  Eigen::Matrix2d cov = Eigen::Matrix2d::Identity();
};

// Physicality: cov symmetric and cov + i*Omega >= 0.  Throws PhysicalityError
// naming the violated invariant.
void validate(const GaussianState& state);
void validate(const SingleModeGaussian& state);

// Smallest eigenvalue of cov + i*Omega; >= 0 (up to tolerance) for a
// physical state.
double physicality_min_eigenvalue(const GaussianState& state);

// Smallest eigenvalue of cov + i*Omega after flipping the sign of p_B
// (partial transposition in phase space).  Negative values witness
// entanglement of a Gaussian state.
double ppt_min_eigenvalue(const GaussianState& state);

}  // namespace epr
