#include "epr/states.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "epr/random.hpp"

namespace epr {
namespace {

using Cplx = std::complex<double>;

constexpr double kTailTol = 1e-10;       // tmsv truncation budget
constexpr double kSynthTailTol = 1e-8;   // gaussian -> fock synthesis budget

struct LadderMoments1 {
  Cplx a{0.0, 0.0};
  Cplx a2{0.0, 0.0};
  double n = 0.0;
};

// tr(rho*a), tr(rho*a^2), tr(rho*n) from the sub-diagonals of a single-mode
// density matrix.
LadderMoments1 ladder_moments(const SingleModeFock& rho) {
  LadderMoments1 m;
  for (int n = 0; n < rho.dim; ++n) {
    m.n += n * rho.entries(n, n).real();
    if (n >= 1) m.a += std::sqrt(double(n)) * rho.entries(n, n - 1);
    if (n >= 2) m.a2 += std::sqrt(double(n) * (n - 1)) * rho.entries(n, n - 2);
  }
  return m;
}

SingleModeGaussian moments_from_ladder(const LadderMoments1& m) {
  SingleModeGaussian out;
  out.mean[0] = 2.0 * m.a.real();
  out.mean[1] = 2.0 * m.a.imag();
  out.cov(0, 0) = 2.0 * m.a2.real() + 2.0 * m.n + 1.0 - out.mean[0] * out.mean[0];
  out.cov(1, 1) = -2.0 * m.a2.real() + 2.0 * m.n + 1.0 - out.mean[1] * out.mean[1];
  out.cov(0, 1) = 2.0 * m.a2.imag() - out.mean[0] * out.mean[1];
  out.cov(1, 0) = out.cov(0, 1);
  return out;
}

Eigen::Matrix2d rotation(double phi) {
  Eigen::Matrix2d r;
  r << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  return r;
}

}  // namespace

FockDensityMatrix make_two_mode_squeezed_vacuum(double r, int cutoff) {
  if (r < 0.0) throw PhysicalityError("squeezing parameter must be >= 0");
  if (cutoff < 0) throw TruncationError("cutoff must be >= 0", 1.0);
  const double t = std::tanh(r);
  // Discarded mass of the Schmidt distribution is an exact geometric tail.
  const double tail = std::pow(t, 2.0 * (cutoff + 1));
  if (tail >= kTailTol) {
    std::ostringstream msg;
    msg << "cutoff " << cutoff << " leaves tail mass " << tail
        << " for squeezing " << r;
    throw TruncationError(msg.str(), tail);
  }
  const int dim = cutoff + 1;
  std::vector<double> c(dim);
  double norm_sq = 0.0;
  for (int n = 0; n < dim; ++n) {
    c[n] = std::pow(t, n) / std::cosh(r);
    norm_sq += c[n] * c[n];
  }
  const double inv = 1.0 / norm_sq;
  FockDensityMatrix rho;
  rho.dim_a = dim;
  rho.dim_b = dim;
  rho.entries = Eigen::MatrixXcd::Zero(dim * dim, dim * dim);
  for (int n = 0; n < dim; ++n)
    for (int m = 0; m < dim; ++m)
      rho.entries(rho.index(n, n), rho.index(m, m)) = c[n] * c[m] * inv;
  return rho;
}

GaussianState make_gaussian_tmsv(double r) {
  if (r < 0.0) throw PhysicalityError("squeezing parameter must be >= 0");
  GaussianState s;
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  s.cov = ch * Eigen::Matrix4d::Identity();
  s.cov(0, 2) = s.cov(2, 0) = sh;
  s.cov(1, 3) = s.cov(3, 1) = -sh;
  return s;
}

GaussianState vacuum_gaussian() { return GaussianState{}; }

SeparableMixture make_separable_random(int n_terms, std::uint64_t seed,
                                       MixtureFamily family) {
  if (n_terms < 1) throw PhysicalityError("mixture needs at least one term");
  Rng rng(seed);

  auto random_gaussian = [&rng]() {
    SingleModeGaussian g;
    const double n_bar = 0.6 * rng.uniform();
    const double s = -0.5 + rng.uniform();
    const double phi = std::numbers::pi * rng.uniform();
    const double nu = 2.0 * n_bar + 1.0;
    Eigen::Matrix2d d = Eigen::Matrix2d::Zero();
    d(0, 0) = nu * std::exp(-2.0 * s);
    d(1, 1) = nu * std::exp(2.0 * s);
    const Eigen::Matrix2d rot = rotation(phi);
    g.cov = rot * d * rot.transpose();
    g.mean[0] = 3.0 * (rng.uniform() - 0.5);
    g.mean[1] = 3.0 * (rng.uniform() - 0.5);
    return g;
  };

  auto random_fock = [&rng]() {
    SingleModeFock f;
    f.dim = 2 + static_cast<int>(rng.integer(7));
    const int rank = 1 + static_cast<int>(rng.integer(3));
    std::vector<double> q(rank);
    double q_total = 0.0;
    for (auto& w : q) {
      w = 0.1 + rng.uniform();
      q_total += w;
    }
    f.entries = Eigen::MatrixXcd::Zero(f.dim, f.dim);
    for (int k = 0; k < rank; ++k) {
      Eigen::VectorXcd v(f.dim);
      for (int i = 0; i < f.dim; ++i) v[i] = Cplx(rng.normal(), rng.normal());
      v.normalize();
      f.entries += (q[k] / q_total) * (v * v.adjoint());
    }
    // Rounding can leave a ~1e-16 anti-hermitian part; remove it.
    f.entries = 0.5 * (f.entries + f.entries.adjoint()).eval();
    return f;
  };

  std::vector<MixtureTerm> terms(n_terms);
  for (auto& term : terms) {
    term.weight = 0.05 + rng.uniform();
    if (family == MixtureFamily::gaussian) {
      term.state_a = random_gaussian();
      term.state_b = random_gaussian();
    } else {
      term.state_a = random_fock();
      term.state_b = random_fock();
    }
  }
  return make_mixture(std::move(terms));
}

Eigen::MatrixXcd displacement_matrix(Cplx alpha, int dim) {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(dim, dim);
  d(0, 0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < dim; ++n)
    d(0, n) = d(0, n - 1) * (-std::conj(alpha)) / std::sqrt(double(n));
  for (int m = 0; m + 1 < dim; ++m) {
    for (int n = 0; n < dim; ++n) {
      Cplx v = alpha * d(m, n);
      if (n >= 1) v += std::sqrt(double(n)) * d(m, n - 1);
      d(m + 1, n) = v / std::sqrt(double(m + 1));
    }
  }
  return d;
}

Eigen::MatrixXcd squeeze_matrix(double s, int dim) {
  // Number-basis matrix elements of exp((s/2)(a^2 - a^dag^2)) via the
  // two-term recurrence; positive s shrinks the x quadrature.
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(dim, dim);
  const double sech = 1.0 / std::cosh(s);
  const double tanh_s = std::tanh(s);
  std::vector<double> sq(dim + 1);
  for (int i = 0; i <= dim; ++i) sq[i] = std::sqrt(double(i));
  mat(0, 0) = std::sqrt(sech);
  for (int m = 2; m < dim; m += 2)
    mat(m, 0) = -(sq[m - 1] / sq[m]) * tanh_s * mat(m - 2, 0);
  for (int n = 1; n < dim; ++n) {
    for (int m = (n % 2); m < dim; m += 2) {
      Cplx v(0.0, 0.0);
      if (m >= 1) v += sq[m] * sech * mat(m - 1, n - 1);
      if (n >= 2) v += sq[n - 1] * tanh_s * mat(m, n - 2);
      mat(m, n) = v / sq[n];
    }
  }
  return mat;
}

Eigen::MatrixXcd phase_rotation_matrix(double phi, int dim) {
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n)
    u(n, n) = std::exp(Cplx(0.0, phi * n));
  return u;
}

SingleModeFock thermal_fock(double n_bar, int dim) {
  if (n_bar < 0.0) throw PhysicalityError("thermal occupation must be >= 0");
  SingleModeFock rho;
  rho.dim = dim;
  rho.entries = Eigen::MatrixXcd::Zero(dim, dim);
  double total = 0.0;
  const double ratio = n_bar / (n_bar + 1.0);
  double p = 1.0 / (n_bar + 1.0);
  for (int n = 0; n < dim; ++n) {
    rho.entries(n, n) = p;
    total += p;
    p *= ratio;
  }
  rho.entries /= total;
  return rho;
}

SingleModeFock gaussian_to_fock(const SingleModeGaussian& state, int dim) {
  validate(state);
  // Decompose cov = R(phi) diag(nu e^{-2s}, nu e^{2s}) R(phi)^T.
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(state.cov);
  const double nu1 = solver.eigenvalues()[0];
  const double nu2 = solver.eigenvalues()[1];
  if (nu1 <= 0.0)
    throw PhysicalityError("covariance is not positive definite");
  const double nu = std::sqrt(nu1 * nu2);
  const double n_bar = std::max(0.0, 0.5 * (nu - 1.0));
  const double s = 0.25 * std::log(nu2 / nu1);
  const Eigen::Vector2d axis = solver.eigenvectors().col(0);
  const double phi = std::atan2(axis[1], axis[0]);
  const Cplx alpha(0.5 * state.mean[0], 0.5 * state.mean[1]);

  const Eigen::MatrixXcd sq = squeeze_matrix(s, dim);
  const Eigen::MatrixXcd rot = phase_rotation_matrix(phi, dim);
  const Eigen::MatrixXcd disp = displacement_matrix(alpha, dim);
  const Eigen::MatrixXcd u = disp * rot * sq;

  // Un-renormalized thermal weights, so cutoff leakage shows up as trace
  // deficit instead of being hidden by renormalization.
  Eigen::MatrixXcd th_raw = Eigen::MatrixXcd::Zero(dim, dim);
  {
    const double ratio = n_bar / (n_bar + 1.0);
    double p = 1.0 / (n_bar + 1.0);
    for (int n = 0; n < dim; ++n) {
      th_raw(n, n) = p;
      p *= ratio;
    }
  }
  Eigen::MatrixXcd rho = u * th_raw * u.adjoint();
  const double tail = 1.0 - rho.trace().real();
  if (tail > kSynthTailTol) {
    std::ostringstream msg;
    msg << "dimension " << dim << " leaves tail mass " << tail
        << " when synthesizing a gaussian state";
    throw TruncationError(msg.str(), tail);
  }
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  SingleModeFock out;
  out.dim = dim;
  out.entries = std::move(rho);
  return out;
}

FockDensityMatrix mixture_to_density(const SeparableMixture& mixture,
                                     int cutoff_a, int cutoff_b) {
  validate(mixture);
  if (cutoff_a < 0 || cutoff_b < 0)
    throw TruncationError("cutoffs must be >= 0", 1.0);
  const int da = cutoff_a + 1;
  const int db = cutoff_b + 1;

  auto to_fock = [](const SingleModeState& s, int dim) {
    if (std::holds_alternative<SingleModeGaussian>(s))
      return gaussian_to_fock(std::get<SingleModeGaussian>(s), dim);
    const auto& f = std::get<SingleModeFock>(s);
    SingleModeFock out;
    out.dim = dim;
    out.entries = Eigen::MatrixXcd::Zero(dim, dim);
    if (f.dim <= dim) {
      out.entries.topLeftCorner(f.dim, f.dim) = f.entries;
      return out;
    }
    const double kept = f.entries.topLeftCorner(dim, dim).trace().real();
    const double tail = 1.0 - kept;
    if (tail > kSynthTailTol) {
      std::ostringstream msg;
      msg << "dimension " << dim << " leaves tail mass " << tail
          << " when truncating a fock state";
      throw TruncationError(msg.str(), tail);
    }
    out.entries = f.entries.topLeftCorner(dim, dim) / kept;
    return out;
  };

  FockDensityMatrix rho;
  rho.dim_a = da;
  rho.dim_b = db;
  rho.entries = Eigen::MatrixXcd::Zero(da * db, da * db);
  for (const auto& term : mixture.terms) {
    const SingleModeFock fa = to_fock(term.state_a, da);
    const SingleModeFock fb = to_fock(term.state_b, db);
    rho.entries += term.weight * tensor_product(fa, fb).entries;
  }
  rho.entries = 0.5 * (rho.entries + rho.entries.adjoint()).eval();
  return rho;
}

GaussianState fock_to_gaussian_moments(const FockDensityMatrix& rho) {
  LadderMoments1 ma, mb;
  Cplx ab{0.0, 0.0}, ab_dag{0.0, 0.0};
  for (int n = 0; n < rho.dim_a; ++n) {
    for (int m = 0; m < rho.dim_b; ++m) {
      const int row = rho.index(n, m);
      ma.n += n * rho.entries(row, row).real();
      mb.n += m * rho.entries(row, row).real();
      if (n >= 1) ma.a += std::sqrt(double(n)) * rho.entries(row, rho.index(n - 1, m));
      if (m >= 1) mb.a += std::sqrt(double(m)) * rho.entries(row, rho.index(n, m - 1));
      if (n >= 2)
        ma.a2 += std::sqrt(double(n) * (n - 1)) * rho.entries(row, rho.index(n - 2, m));
      if (m >= 2)
        mb.a2 += std::sqrt(double(m) * (m - 1)) * rho.entries(row, rho.index(n, m - 2));
      if (n >= 1 && m >= 1)
        ab += std::sqrt(double(n) * m) * rho.entries(row, rho.index(n - 1, m - 1));
      if (n >= 1 && m + 1 < rho.dim_b)
        ab_dag +=
            std::sqrt(double(n) * (m + 1)) * rho.entries(row, rho.index(n - 1, m + 1));
    }
  }
  const SingleModeGaussian ga = moments_from_ladder(ma);
  const SingleModeGaussian gb = moments_from_ladder(mb);
  GaussianState out;
  out.mean << ga.mean[0], ga.mean[1], gb.mean[0], gb.mean[1];
  out.cov.setZero();
  out.cov.topLeftCorner<2, 2>() = ga.cov;
  out.cov.bottomRightCorner<2, 2>() = gb.cov;
  Eigen::Matrix2d cross;
  cross(0, 0) = 2.0 * ab.real() + 2.0 * ab_dag.real() - out.mean[0] * out.mean[2];
  cross(0, 1) = 2.0 * ab.imag() - 2.0 * ab_dag.imag() - out.mean[0] * out.mean[3];
  cross(1, 0) = 2.0 * ab.imag() + 2.0 * ab_dag.imag() - out.mean[1] * out.mean[2];
  cross(1, 1) = -2.0 * ab.real() + 2.0 * ab_dag.real() - out.mean[1] * out.mean[3];
  out.cov.topRightCorner<2, 2>() = cross;
  out.cov.bottomLeftCorner<2, 2>() = cross.transpose();
  return out;
}

SingleModeGaussian single_mode_moments(const SingleModeState& state) {
  if (std::holds_alternative<SingleModeGaussian>(state))
    return std::get<SingleModeGaussian>(state);
  return moments_from_ladder(ladder_moments(std::get<SingleModeFock>(state)));
}

Moments4 two_mode_moments(const TwoModeState& state) {
  Moments4 out;
  if (std::holds_alternative<GaussianState>(state)) {
    const auto& g = std::get<GaussianState>(state);
    out.mean = g.mean;
    out.cov = g.cov;
    return out;
  }
  if (std::holds_alternative<FockDensityMatrix>(state)) {
    const GaussianState g = fock_to_gaussian_moments(std::get<FockDensityMatrix>(state));
    out.mean = g.mean;
    out.cov = g.cov;
    return out;
  }
  const auto& mix = std::get<SeparableMixture>(state);
  Eigen::Vector4d mean = Eigen::Vector4d::Zero();
  Eigen::Matrix4d second = Eigen::Matrix4d::Zero();
  for (const auto& term : mix.terms) {
    const SingleModeGaussian a = single_mode_moments(term.state_a);
    const SingleModeGaussian b = single_mode_moments(term.state_b);
    Eigen::Vector4d mu;
    mu << a.mean[0], a.mean[1], b.mean[0], b.mean[1];
    Eigen::Matrix4d cov = Eigen::Matrix4d::Zero();
    cov.topLeftCorner<2, 2>() = a.cov;
    cov.bottomRightCorner<2, 2>() = b.cov;
    mean += term.weight * mu;
    second += term.weight * (cov + mu * mu.transpose());
  }
  out.mean = mean;
  out.cov = second - mean * mean.transpose();
  return out;
}

}  // namespace epr
