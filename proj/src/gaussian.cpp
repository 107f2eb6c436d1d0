#include "epr/gaussian.hpp"

#include <complex>
#include <sstream>

namespace epr {
namespace {

constexpr double kSymTol = 1e-12;
constexpr double kEigTol = 1e-10;

using Cplx = std::complex<double>;

double min_eig_with_form(const Eigen::Matrix4d& cov, const Eigen::Matrix4d& omega) {
  Eigen::Matrix4cd m = cov.cast<Cplx>() + Cplx(0.0, 1.0) * omega.cast<Cplx>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

}  // namespace

Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d omega = Eigen::Matrix4d::Zero();
  omega(0, 1) = 1.0;
  omega(1, 0) = -1.0;
  omega(2, 3) = 1.0;
  omega(3, 2) = -1.0;
  return omega;
}

double physicality_min_eigenvalue(const GaussianState& state) {
  return min_eig_with_form(state.cov, symplectic_form());
}

double ppt_min_eigenvalue(const GaussianState& state) {
  Eigen::Matrix4d flip = Eigen::Matrix4d::Identity();
  flip(3, 3) = -1.0;
  return min_eig_with_form(flip * state.cov * flip, symplectic_form());
}

void validate(const GaussianState& state) {
  if (!state.mean.allFinite() || !state.cov.allFinite())
    throw PhysicalityError("gaussian state has non-finite entries");
  const double asym = (state.cov - state.cov.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymTol) {
    std::ostringstream msg;
    msg << "covariance is not symmetric (max asymmetry " << asym << ")";
    throw PhysicalityError(msg.str());
  }
  const double min_eig = physicality_min_eigenvalue(state);
  if (min_eig < -kEigTol) {
    std::ostringstream msg;
    msg << "covariance violates the uncertainty relation: min eigenvalue of "
           "cov + i*Omega is "
        << min_eig;
    throw PhysicalityError(msg.str());
  }
}

void validate(const SingleModeGaussian& state) {
  if (!state.mean.allFinite() || !state.cov.allFinite())
    throw PhysicalityError("gaussian state has non-finite entries");
  const double asym = (state.cov - state.cov.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymTol) {
    std::ostringstream msg;
    msg << "covariance is not symmetric (max asymmetry " << asym << ")";
    throw PhysicalityError(msg.str());
  }
  Eigen::Matrix2d omega;
  omega << 0.0, 1.0, -1.0, 0.0;
  Eigen::Matrix2cd m = state.cov.cast<Cplx>() + Cplx(0.0, 1.0) * omega.cast<Cplx>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(m, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (min_eig < -kEigTol) {
    std::ostringstream msg;
    msg << "covariance violates the uncertainty relation: min eigenvalue of "
           "cov + i*omega is "
        << min_eig;
    throw PhysicalityError(msg.str());
  }
}

}  // namespace epr
