#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "epr/states.hpp"

using namespace epr;
using Cplx = std::complex<double>;

namespace {

// Largest absolute difference between two matrices.
template <class A, class B>
double max_diff(const A& a, const B& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("tmsv schmidt weights and normalization") {
  const double r = 0.5;
  const int cutoff = 30;
  const FockDensityMatrix rho = make_two_mode_squeezed_vacuum(r, cutoff);
  validate(rho);

  // Diagonal weights against the closed form, renormalized over the kept
  // range.
  const double t = std::tanh(r);
  double norm = 0.0;
  for (int n = 0; n <= cutoff; ++n) norm += std::pow(t, 2 * n);
  for (int n = 0; n <= cutoff; ++n) {
    const double expected = std::pow(t, 2 * n) / norm;
    CHECK(std::abs(rho.entries(rho.index(n, n), rho.index(n, n)).real() -
                   expected) < 1e-14);
  }
  // Off-diagonal coherences |n,n><m,m|.
  const double c01 = std::pow(t, 1) / norm;
  CHECK(std::abs(rho.entries(rho.index(0, 0), rho.index(1, 1)).real() - c01) <
        1e-14);
  // Everything outside the |n,n><m,m| pattern vanishes.
  CHECK(std::abs(rho.entries(rho.index(0, 1), rho.index(0, 1))) == 0.0);
}

TEST_CASE("tmsv truncation tail is enforced") {
  // tanh(1)^82 = 2e-10 sits just above the 1e-10 budget, so r = 1 at cutoff
  // 40 must be refused while cutoff 45 passes.
  CHECK_THROWS_AS(make_two_mode_squeezed_vacuum(1.0, 40), TruncationError);
  try {
    make_two_mode_squeezed_vacuum(1.0, 40);
  } catch (const TruncationError& e) {
    CHECK(e.tail_mass() == doctest::Approx(std::pow(std::tanh(1.0), 82.0)));
  }
  CHECK_NOTHROW(make_two_mode_squeezed_vacuum(1.0, 45));
  CHECK_NOTHROW(make_two_mode_squeezed_vacuum(0.0, 0));
}

TEST_CASE("tmsv reduced state is thermal") {
  const double r = 0.6;
  const FockDensityMatrix rho = make_two_mode_squeezed_vacuum(r, 35);
  const SingleModeFock red_a = reduced_mode_a(rho);
  const SingleModeFock red_b = reduced_mode_b(rho);
  const double n_bar = std::sinh(r) * std::sinh(r);
  const SingleModeFock th = thermal_fock(n_bar, 36);
  CHECK(max_diff(red_a.entries, th.entries) < 1e-10);
  CHECK(max_diff(red_b.entries, th.entries) < 1e-10);
}

TEST_CASE("gaussian tmsv covariance and physicality") {
  const double r = 0.5;
  const GaussianState g = make_gaussian_tmsv(r);
  validate(g);
  CHECK(g.cov(0, 0) == doctest::Approx(std::cosh(2.0 * r)).epsilon(1e-12));
  CHECK(g.cov(0, 2) == doctest::Approx(std::sinh(2.0 * r)).epsilon(1e-12));
  CHECK(g.cov(1, 3) == doctest::Approx(-std::sinh(2.0 * r)).epsilon(1e-12));
  CHECK(g.cov(0, 1) == 0.0);
  // Pure state: cov + i*Omega is singular but not negative.
  CHECK(std::abs(physicality_min_eigenvalue(g)) < 1e-9);
  // Entangled for r > 0, separable boundary at r = 0.
  CHECK(ppt_min_eigenvalue(g) < -0.5);
  CHECK(ppt_min_eigenvalue(vacuum_gaussian()) >= -1e-12);
}

TEST_CASE("fock moments match the exact covariance") {
  for (double r : {0.25, 0.5, 0.75}) {
    const FockDensityMatrix rho = make_two_mode_squeezed_vacuum(r, 40);
    const GaussianState from_fock = fock_to_gaussian_moments(rho);
    const GaussianState exact = make_gaussian_tmsv(r);
    CHECK(max_diff(from_fock.cov, exact.cov) < 1e-9);
    CHECK(from_fock.mean.cwiseAbs().maxCoeff() < 1e-12);
  }
  // r = 1 needs the bigger cutoff.
  const GaussianState from_fock =
      fock_to_gaussian_moments(make_two_mode_squeezed_vacuum(1.0, 45));
  CHECK(max_diff(from_fock.cov, make_gaussian_tmsv(1.0).cov) < 1e-8);
}

TEST_CASE("displacement matrix conventions") {
  const Cplx alpha(0.7, -0.4);
  const int dim = 30;
  const Eigen::MatrixXcd d = displacement_matrix(alpha, dim);
  // Column 0 is the coherent state.
  double fact = 1.0;
  for (int n = 0; n < 10; ++n) {
    if (n > 0) fact *= n;
    const Cplx expected =
        std::pow(alpha, n) / std::sqrt(fact) * std::exp(-0.5 * std::norm(alpha));
    CHECK(std::abs(d(n, 0) - expected) < 1e-12);
  }
  // Unitary on the low block (truncation spoils only the top corner).
  const Eigen::MatrixXcd gram = d.adjoint() * d;
  CHECK(max_diff(gram.topLeftCorner(10, 10),
                 Eigen::MatrixXcd::Identity(10, 10)) < 1e-10);

  // Displaced vacuum: mean shifts, covariance stays the identity.
  SingleModeFock coh;
  coh.dim = dim;
  coh.entries = d.col(0) * d.col(0).adjoint();
  const SingleModeGaussian m = single_mode_moments(coh);
  CHECK(m.mean[0] == doctest::Approx(2.0 * alpha.real()).epsilon(1e-10));
  CHECK(m.mean[1] == doctest::Approx(2.0 * alpha.imag()).epsilon(1e-10));
  CHECK(max_diff(m.cov, Eigen::Matrix2d::Identity()) < 1e-9);
}

TEST_CASE("squeeze matrix shrinks x") {
  const double s = 0.4;
  const int dim = 40;
  const Eigen::MatrixXcd sq = squeeze_matrix(s, dim);
  SingleModeFock state;
  state.dim = dim;
  state.entries = sq.col(0) * sq.col(0).adjoint();
  CHECK(std::abs(state.entries.trace().real() - 1.0) < 1e-12);
  const SingleModeGaussian m = single_mode_moments(state);
  CHECK(m.cov(0, 0) == doctest::Approx(std::exp(-2.0 * s)).epsilon(1e-10));
  CHECK(m.cov(1, 1) == doctest::Approx(std::exp(2.0 * s)).epsilon(1e-10));
  CHECK(std::abs(m.cov(0, 1)) < 1e-10);
}

TEST_CASE("phase rotation turns moments") {
  const double s = 0.3, phi = 0.7;
  const int dim = 40;
  const Eigen::MatrixXcd sq = squeeze_matrix(s, dim);
  const Eigen::MatrixXcd rot = phase_rotation_matrix(phi, dim);
  SingleModeFock state;
  state.dim = dim;
  const Eigen::VectorXcd v = rot * sq.col(0);
  state.entries = v * v.adjoint();
  const SingleModeGaussian m = single_mode_moments(state);
  Eigen::Matrix2d r2;
  r2 << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  Eigen::Matrix2d d2 = Eigen::Matrix2d::Zero();
  d2(0, 0) = std::exp(-2.0 * s);
  d2(1, 1) = std::exp(2.0 * s);
  CHECK(max_diff(m.cov, r2 * d2 * r2.transpose()) < 1e-9);
}

TEST_CASE("thermal state variance") {
  const SingleModeFock th = thermal_fock(0.8, 60);
  validate(th);
  const SingleModeGaussian m = single_mode_moments(th);
  CHECK(m.cov(0, 0) == doctest::Approx(2.6).epsilon(1e-9));
  CHECK(m.cov(1, 1) == doctest::Approx(2.6).epsilon(1e-9));
}

TEST_CASE("gaussian to fock round trip") {
  SingleModeGaussian g;
  SUBCASE("displaced squeezed rotated") {
    const double nu = 1.6, s = 0.35, phi = 0.9;
    Eigen::Matrix2d rot;
    rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    Eigen::Matrix2d d = Eigen::Matrix2d::Zero();
    d(0, 0) = nu * std::exp(-2.0 * s);
    d(1, 1) = nu * std::exp(2.0 * s);
    g.cov = rot * d * rot.transpose();
    g.mean << 1.2, -0.8;
  }
  SUBCASE("displaced thermal") {
    g.cov = 1.9 * Eigen::Matrix2d::Identity();
    g.mean << -0.5, 1.4;
  }
  const SingleModeFock rho = gaussian_to_fock(g, 45);
  validate(rho);
  const SingleModeGaussian back = single_mode_moments(rho);
  CHECK(max_diff(back.mean, g.mean) < 1e-8);
  CHECK(max_diff(back.cov, g.cov) < 1e-7);
}

TEST_CASE("gaussian to fock refuses a too small cutoff") {
  SingleModeGaussian hot;
  hot.cov = 9.0 * Eigen::Matrix2d::Identity();  // n_bar = 4
  CHECK_THROWS_AS(gaussian_to_fock(hot, 6), TruncationError);
}

TEST_CASE("mixture moments agree with the flattened density matrix") {
  for (auto family : {MixtureFamily::gaussian, MixtureFamily::fock}) {
    const SeparableMixture mix = make_separable_random(4, 11, family);
    validate(mix);
    const Moments4 direct = two_mode_moments(mix);
    const int cutoff = family == MixtureFamily::gaussian ? 34 : 10;
    const FockDensityMatrix flat = mixture_to_density(mix, cutoff, cutoff);
    validate(flat);
    const GaussianState from_flat = fock_to_gaussian_moments(flat);
    CHECK(max_diff(direct.mean, from_flat.mean) < 1e-7);
    CHECK(max_diff(direct.cov, from_flat.cov) < 1e-6);
    // Product terms carry no cross-mode covariance beyond mean spread; the
    // flattened state must agree on that too (checked above via the blocks).
  }
}

TEST_CASE("separable mixtures stay positive under partial transposition") {
  const SeparableMixture mix = make_separable_random(3, 7, MixtureFamily::fock);
  const FockDensityMatrix flat = mixture_to_density(mix, 9, 9);
  CHECK(min_eigenvalue(partial_transpose_b(flat).entries) > -1e-9);
}

TEST_CASE("tmsv has negative partial transpose") {
  const FockDensityMatrix rho = make_two_mode_squeezed_vacuum(0.5, 20);
  CHECK(min_eigenvalue(partial_transpose_b(rho).entries) < -0.1);
}

TEST_CASE("mixture weights are normalized and guarded") {
  SingleModeFock vac;
  vac.dim = 2;
  vac.entries = Eigen::MatrixXcd::Zero(2, 2);
  vac.entries(0, 0) = 1.0;
  MixtureTerm t1{2.0, vac, vac};
  MixtureTerm t2{6.0, vac, vac};
  const SeparableMixture mix = make_mixture({t1, t2});
  CHECK(mix.terms[0].weight == doctest::Approx(0.25));
  CHECK(mix.terms[1].weight == doctest::Approx(0.75));
  MixtureTerm bad{-0.1, vac, vac};
  CHECK_THROWS_AS(make_mixture({bad}), PhysicalityError);
}

TEST_CASE("physicality violations are named") {
  FockDensityMatrix rho;
  rho.dim_a = 1;
  rho.dim_b = 2;
  rho.entries = Eigen::MatrixXcd::Zero(2, 2);
  rho.entries(0, 0) = 1.0;
  rho.entries(0, 1) = Cplx(0.0, 0.3);  // not hermitian
  try {
    validate(rho);
    CHECK(false);
  } catch (const PhysicalityError& e) {
    CHECK(std::string(e.what()).find("hermitian") != std::string::npos);
  }

  rho.entries(0, 1) = 0.0;
  rho.entries(0, 0) = 0.9;  // trace deficit
  try {
    validate(rho);
    CHECK(false);
  } catch (const PhysicalityError& e) {
    CHECK(std::string(e.what()).find("trace") != std::string::npos);
  }

  rho.entries(0, 0) = 1.3;  // forces a negative eigenvalue
  rho.entries(1, 1) = -0.3;
  try {
    validate(rho);
    CHECK(false);
  } catch (const PhysicalityError& e) {
    CHECK(std::string(e.what()).find("positive semidefinite") !=
          std::string::npos);
  }

  GaussianState squeezed_too_far;
  squeezed_too_far.cov = 0.5 * Eigen::Matrix4d::Identity();
  try {
    validate(squeezed_too_far);
    CHECK(false);
  } catch (const PhysicalityError& e) {
    CHECK(std::string(e.what()).find("uncertainty") != std::string::npos);
  }

  GaussianState asym;
  asym.cov(0, 1) = 0.2;  // not symmetric
  try {
    validate(asym);
    CHECK(false);
  } catch (const PhysicalityError& e) {
    CHECK(std::string(e.what()).find("symmetric") != std::string::npos);
  }
}

TEST_CASE("tensor product layout") {
  SingleModeFock a, b;
  a.dim = 2;
  a.entries = Eigen::MatrixXcd::Zero(2, 2);
  a.entries(1, 1) = 1.0;  // |1><1|
  b.dim = 3;
  b.entries = Eigen::MatrixXcd::Zero(3, 3);
  b.entries(2, 2) = 1.0;  // |2><2|
  const FockDensityMatrix prod = tensor_product(a, b);
  validate(prod);
  CHECK(prod.entries(prod.index(1, 2), prod.index(1, 2)).real() ==
        doctest::Approx(1.0));
}

TEST_CASE("seeded mixtures are reproducible") {
  const SeparableMixture m1 = make_separable_random(3, 99, MixtureFamily::gaussian);
  const SeparableMixture m2 = make_separable_random(3, 99, MixtureFamily::gaussian);
  REQUIRE(m1.terms.size() == m2.terms.size());
  for (std::size_t i = 0; i < m1.terms.size(); ++i) {
    CHECK(m1.terms[i].weight == m2.terms[i].weight);
    const auto& a1 = std::get<SingleModeGaussian>(m1.terms[i].state_a);
    const auto& a2 = std::get<SingleModeGaussian>(m2.terms[i].state_a);
    CHECK(max_diff(a1.cov, a2.cov) == 0.0);
  }
  const SeparableMixture m3 = make_separable_random(3, 100, MixtureFamily::gaussian);
  const auto& a1 = std::get<SingleModeGaussian>(m1.terms[0].state_a);
  const auto& a3 = std::get<SingleModeGaussian>(m3.terms[0].state_a);
  CHECK(max_diff(a1.cov, a3.cov) > 1e-6);
}
