#include "epr/hermite.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace epr {

Eigen::MatrixXd hermite_functions(const Eigen::VectorXd& x, int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  const auto n_pts = x.size();
  Eigen::MatrixXd psi(n_pts, n_max + 1);
  const double norm0 = std::pow(2.0 * std::numbers::pi, -0.25);
  for (Eigen::Index i = 0; i < n_pts; ++i)
    psi(i, 0) = norm0 * std::exp(-0.25 * x[i] * x[i]);
  if (n_max >= 1) psi.col(1) = x.cwiseProduct(psi.col(0));
  for (int n = 1; n < n_max; ++n) {
    const double inv = 1.0 / std::sqrt(n + 1.0);
    psi.col(n + 1) =
        inv * (x.cwiseProduct(psi.col(n)) - std::sqrt(double(n)) * psi.col(n - 1));
  }
  return psi;
}

}  // namespace epr
