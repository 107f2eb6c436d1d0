#pragma once

#include <complex>
#include <cstdint>
#include <variant>

#include "epr/fock.hpp"
#include "epr/gaussian.hpp"
#include "epr/mixture.hpp"

namespace epr {

using TwoModeState = std::variant<FockDensityMatrix, GaussianState, SeparableMixture>;

// Two-mode squeezed vacuum sum_n tanh(r)^n / cosh(r) |n,n> truncated at
// photon number `cutoff` per mode and renormalized.  The discarded tail mass
// tanh(r)^(2(cutoff+1)) must be below 1e-10, else TruncationError.
FockDensityMatrix make_two_mode_squeezed_vacuum(double r, int cutoff);

// Exact covariance representation of the same state:
// Var(x_A) = Var(p_A) = Var(x_B) = Var(p_B) = cosh(2r),
// <x_A x_B> = sinh(2r), <p_A p_B> = -sinh(2r).
GaussianState make_gaussian_tmsv(double r);

GaussianState vacuum_gaussian();

enum class MixtureFamily { gaussian, fock };

// Seed-deterministic separable mixture of n_terms product states with
// moderate squeezing, displacement and thermal occupation per term.
SeparableMixture make_separable_random(int n_terms, std::uint64_t seed,
                                       MixtureFamily family);

// Flattens a mixture to one density matrix at the given per-mode cutoffs.
// Gaussian terms are synthesized in the number basis; fock terms are padded
// or truncated.  TruncationError if any term leaves more than 1e-8 tail mass.
FockDensityMatrix mixture_to_density(const SeparableMixture& mixture,
                                     int cutoff_a, int cutoff_b);

// First and second quadrature moments of a number-basis state, computed from
// ladder-operator sums.  The result is a moments container, not a claim that
// the state is Gaussian.
GaussianState fock_to_gaussian_moments(const FockDensityMatrix& rho);

// Mean and covariance of (x_A, p_A, x_B, p_B) for any representation.
struct Moments4 {
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Matrix4d cov = Eigen::Matrix4d::Identity();
};
Moments4 two_mode_moments(const TwoModeState& state);

// Mean and covariance of (x, p) for a single-mode state.
SingleModeGaussian single_mode_moments(const SingleModeState& state);

// Number-basis matrices of the elementary Gaussian unitaries, dimension
// `dim`, truncated.  Conventions (verified by the moment round-trip tests):
//   displacement_matrix(alpha):  <x> -> <x> + 2*Re(alpha), <p> -> <p> + 2*Im(alpha)
//   squeeze_matrix(s):           Var(x) -> e^(-2s) Var(x), Var(p) -> e^(2s) Var(p)
//   phase_rotation_matrix(phi):  rotates (x, p) moments by angle phi
Eigen::MatrixXcd displacement_matrix(std::complex<double> alpha, int dim);
Eigen::MatrixXcd squeeze_matrix(double s, int dim);
Eigen::MatrixXcd phase_rotation_matrix(double phi, int dim);

// Thermal state with mean occupation n_bar, truncated and renormalized.
SingleModeFock thermal_fock(double n_bar, int dim);

// Synthesizes the number-basis density matrix of a single-mode Gaussian
// state (decomposed as displaced rotated squeezed thermal).  TruncationError
// if the truncated tail mass exceeds 1e-8.
SingleModeFock gaussian_to_fock(const SingleModeGaussian& state, int dim);

}  // namespace epr
