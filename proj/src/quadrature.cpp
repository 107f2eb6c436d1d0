#include "epr/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "epr/format.hpp"
#include "epr/hermite.hpp"

namespace epr {
namespace {

using Cplx = std::complex<double>;

constexpr double kCaptureTol = 1e-6;
constexpr double kBinMassFloor = 1e-12;

// Rotated-basis wavefunctions u_n(x) = psi_n(x) * exp(-i*n*angle), one column
// per n.  The phase implements measurement of x_angle = cos(angle)*x +
// sin(angle)*p.
Eigen::MatrixXcd rotated_basis(const Eigen::VectorXd& x, int dim, double angle) {
  const Eigen::MatrixXd psi = hermite_functions(x, dim - 1);
  Eigen::MatrixXcd u(x.size(), dim);
  for (int n = 0; n < dim; ++n)
    u.col(n) = psi.col(n) * std::exp(Cplx(0.0, -angle * n));
  return u;
}

// Column (n*dim + n') holds u_n(x_i) * conj(u_{n'}(x_i)).
Eigen::MatrixXcd pair_basis(const Eigen::MatrixXcd& u) {
  const auto pts = u.rows();
  const auto dim = u.cols();
  Eigen::MatrixXcd g(pts, dim * dim);
  for (Eigen::Index n = 0; n < dim; ++n)
    for (Eigen::Index np = 0; np < dim; ++np)
      g.col(n * dim + np) = u.col(n).cwiseProduct(u.col(np).conjugate());
  return g;
}

Eigen::MatrixXd fock_joint(const FockDensityMatrix& rho, double theta, double phi,
                           const QuadratureGrid& ga, const QuadratureGrid& gb) {
  const int da = rho.dim_a;
  const int db = rho.dim_b;
  // Reshape rho[(n,m),(n',m')] into R[(n,n'),(m,m')] so both modes factor
  // into one matrix product each.
  Eigen::MatrixXcd r(da * da, db * db);
  for (int n = 0; n < da; ++n)
    for (int np = 0; np < da; ++np)
      for (int m = 0; m < db; ++m)
        for (int mp = 0; mp < db; ++mp)
          r(n * da + np, m * db + mp) = rho.entries(rho.index(n, m), rho.index(np, mp));
  const Eigen::MatrixXcd basis_a = pair_basis(rotated_basis(ga.centers(), da, theta));
  const Eigen::MatrixXcd basis_b = pair_basis(rotated_basis(gb.centers(), db, phi));
  const Eigen::MatrixXcd t = basis_a * r;
  Eigen::MatrixXd dens = (t * basis_b.transpose()).real();
  return dens * (ga.width() * gb.width());
}

Eigen::MatrixXd gaussian_joint(const GaussianState& state, double theta, double phi,
                               const QuadratureGrid& ga, const QuadratureGrid& gb) {
  Eigen::Vector4d ca(std::cos(theta), std::sin(theta), 0.0, 0.0);
  Eigen::Vector4d cb(0.0, 0.0, std::cos(phi), std::sin(phi));
  const double mx = ca.dot(state.mean);
  const double my = cb.dot(state.mean);
  const double vxx = ca.dot(state.cov * ca);
  const double vyy = cb.dot(state.cov * cb);
  const double vxy = ca.dot(state.cov * cb);
  const double det = vxx * vyy - vxy * vxy;
  if (det <= 0.0)
    throw GridError("projected covariance is degenerate");
  const double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det));
  Eigen::MatrixXd dens(ga.n_points, gb.n_points);
  for (int i = 0; i < ga.n_points; ++i) {
    const double dx = ga.center(i) - mx;
    for (int j = 0; j < gb.n_points; ++j) {
      const double dy = gb.center(j) - my;
      const double q = (vyy * dx * dx - 2.0 * vxy * dx * dy + vxx * dy * dy) / det;
      dens(i, j) = norm * std::exp(-0.5 * q);
    }
  }
  return dens * (ga.width() * gb.width());
}

Eigen::VectorXd single_mode_density(const SingleModeState& state, double angle,
                                    const QuadratureGrid& grid) {
  const Eigen::VectorXd x = grid.centers();
  if (std::holds_alternative<SingleModeFock>(state)) {
    const auto& rho = std::get<SingleModeFock>(state);
    const Eigen::MatrixXcd u = rotated_basis(x, rho.dim, angle);
    return ((u * rho.entries).cwiseProduct(u.conjugate())).rowwise().sum().real();
  }
  const auto& g = std::get<SingleModeGaussian>(state);
  Eigen::Vector2d c(std::cos(angle), std::sin(angle));
  const double mean = c.dot(g.mean);
  const double var = c.dot(g.cov * c);
  if (var <= 0.0) throw GridError("projected variance is degenerate");
  Eigen::VectorXd dens(x.size());
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * var);
  for (Eigen::Index i = 0; i < x.size(); ++i)
    dens[i] = norm * std::exp(-0.5 * (x[i] - mean) * (x[i] - mean) / var);
  return dens;
}

// Mixtures are integrated term by term: each product term contributes an
// outer product of one-dimensional densities, so no flattening to a joint
// density matrix is needed.
Eigen::MatrixXd mixture_joint(const SeparableMixture& mix, double theta, double phi,
                              const QuadratureGrid& ga, const QuadratureGrid& gb) {
  Eigen::MatrixXd masses = Eigen::MatrixXd::Zero(ga.n_points, gb.n_points);
  for (const auto& term : mix.terms) {
    const Eigen::VectorXd da = single_mode_density(term.state_a, theta, ga) * ga.width();
    const Eigen::VectorXd db = single_mode_density(term.state_b, phi, gb) * gb.width();
    masses += term.weight * (da * db.transpose());
  }
  return masses;
}

}  // namespace

JointQuadratureDistribution joint_distribution(const TwoModeState& state,
                                               double theta, double phi,
                                               const QuadratureGrid& grid_a,
                                               const QuadratureGrid& grid_b) {
  JointQuadratureDistribution out;
  out.grid_a = grid_a;
  out.grid_b = grid_b;
  out.theta = theta;
  out.phi = phi;
  if (std::holds_alternative<FockDensityMatrix>(state))
    out.probs = fock_joint(std::get<FockDensityMatrix>(state), theta, phi, grid_a, grid_b);
  else if (std::holds_alternative<GaussianState>(state))
    out.probs = gaussian_joint(std::get<GaussianState>(state), theta, phi, grid_a, grid_b);
  else
    out.probs = mixture_joint(std::get<SeparableMixture>(state), theta, phi, grid_a, grid_b);

  out.captured_mass = out.probs.sum();
  if (out.captured_mass < 1.0 - kCaptureTol) {
    std::ostringstream msg;
    msg << "grids capture only " << out.captured_mass
        << " of the probability mass";
    throw GridError(msg.str(), 1.0 - out.captured_mass);
  }
  out.probs = out.probs.cwiseMax(0.0);
  out.probs /= out.probs.sum();
  return out;
}

JointQuadratureDistribution joint_distribution(const TwoModeState& state,
                                               double theta, double phi,
                                               const GridSpec& spec) {
  const auto [ma, sa] = marginal_moments(state, Mode::a, theta);
  const auto [mb, sb] = marginal_moments(state, Mode::b, phi);
  return joint_distribution(state, theta, phi, auto_grid(ma, sa, spec),
                            auto_grid(mb, sb, spec));
}

ConditionalProfile conditional_profile(const JointQuadratureDistribution& joint,
                                       bool infer_at_a) {
  // Condition on the outcome at the other station; describe the inferred one.
  const Eigen::MatrixXd probs =
      infer_at_a ? joint.probs : Eigen::MatrixXd(joint.probs.transpose());
  const QuadratureGrid& outcome_grid = infer_at_a ? joint.grid_b : joint.grid_a;
  const QuadratureGrid& value_grid = infer_at_a ? joint.grid_a : joint.grid_b;
  const Eigen::VectorXd values = value_grid.centers();

  ConditionalProfile profile;
  double kept = 0.0;
  for (int j = 0; j < outcome_grid.n_points; ++j) {
    const double w = probs.col(j).sum();
    if (w < kBinMassFloor) {
      profile.skipped_mass += w;
      continue;
    }
    const double mu = values.dot(probs.col(j)) / w;
    const double var =
        (values.array() - mu).square().matrix().dot(probs.col(j)) / w;
    profile.outcomes.push_back(outcome_grid.center(j));
    profile.weights.push_back(w);
    profile.means.push_back(mu);
    profile.variances.push_back(var);
    kept += w;
  }
  if (kept > 0.0)
    for (auto& w : profile.weights) w /= kept;
  return profile;
}

std::pair<double, double> marginal_moments(const TwoModeState& state, Mode mode,
                                           double angle) {
  const Moments4 m = two_mode_moments(state);
  Eigen::Vector4d c = Eigen::Vector4d::Zero();
  const int base = mode == Mode::a ? 0 : 2;
  c[base] = std::cos(angle);
  c[base + 1] = std::sin(angle);
  const double mean = c.dot(m.mean);
  const double var = c.dot(m.cov * c);
  return {mean, std::sqrt(std::max(var, 0.0))};
}

std::pair<double, double> gridded_marginal_moments(
    const JointQuadratureDistribution& joint, Mode mode) {
  const Eigen::VectorXd w = mode == Mode::a
                                ? Eigen::VectorXd(joint.probs.rowwise().sum())
                                : Eigen::VectorXd(joint.probs.colwise().sum());
  const Eigen::VectorXd x =
      mode == Mode::a ? joint.grid_a.centers() : joint.grid_b.centers();
  const double mean = x.dot(w);
  const double var = (x.array() - mean).square().matrix().dot(w);
  return {mean, var};
}

void write_joint_csv(const JointQuadratureDistribution& joint, std::ostream& os) {
  os << "x,y,prob\n";
  for (int i = 0; i < joint.grid_a.n_points; ++i)
    for (int j = 0; j < joint.grid_b.n_points; ++j)
      os << format_sig(joint.grid_a.center(i)) << ','
         << format_sig(joint.grid_b.center(j)) << ','
         << format_sig(joint.probs(i, j)) << '\n';
}

}  // namespace epr
