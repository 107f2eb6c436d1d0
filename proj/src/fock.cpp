#include "epr/fock.hpp"

#include <sstream>

namespace epr {
namespace {

constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-10;
constexpr double kEigTol = 1e-10;

void validate_density(const Eigen::MatrixXcd& rho, const char* label) {
  if (rho.rows() != rho.cols())
    throw PhysicalityError(std::string(label) + ": matrix is not square");
  if (!rho.allFinite())
    throw PhysicalityError(std::string(label) + ": non-finite entries");
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermTol) {
    std::ostringstream msg;
    msg << label << ": not hermitian (max deviation " << herm << ")";
    throw PhysicalityError(msg.str());
  }
  const double trace_err = std::abs(rho.trace() - std::complex<double>(1.0, 0.0));
  if (trace_err > kTraceTol) {
    std::ostringstream msg;
    msg << label << ": trace differs from 1 by " << trace_err;
    throw PhysicalityError(msg.str());
  }
  const double min_eig = min_eigenvalue(rho);
  if (min_eig < -kEigTol) {
    std::ostringstream msg;
    msg << label << ": not positive semidefinite (min eigenvalue " << min_eig << ")";
    throw PhysicalityError(msg.str());
  }
}

}  // namespace

double min_eigenvalue(const Eigen::MatrixXcd& hermitian) {
  Eigen::MatrixXcd sym = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void validate(const FockDensityMatrix& rho) {
  if (rho.dim_a < 1 || rho.dim_b < 1)
    throw PhysicalityError("fock state: mode dimensions must be positive");
  if (rho.entries.rows() != static_cast<Eigen::Index>(rho.dim_a) * rho.dim_b)
    throw PhysicalityError("fock state: entry matrix does not match dim_a*dim_b");
  validate_density(rho.entries, "fock state");
}

void validate(const SingleModeFock& rho) {
  if (rho.dim < 1)
    throw PhysicalityError("fock state: dimension must be positive");
  if (rho.entries.rows() != rho.dim)
    throw PhysicalityError("fock state: entry matrix does not match dim");
  validate_density(rho.entries, "fock state");
}

FockDensityMatrix tensor_product(const SingleModeFock& a, const SingleModeFock& b) {
  FockDensityMatrix out;
  out.dim_a = a.dim;
  out.dim_b = b.dim;
  const auto n = static_cast<Eigen::Index>(a.dim) * b.dim;
  out.entries.resize(n, n);
  for (int i = 0; i < a.dim; ++i)
    for (int j = 0; j < a.dim; ++j)
      out.entries.block(i * b.dim, j * b.dim, b.dim, b.dim) =
          a.entries(i, j) * b.entries;
  return out;
}

SingleModeFock reduced_mode_a(const FockDensityMatrix& rho) {
  SingleModeFock out;
  out.dim = rho.dim_a;
  out.entries = Eigen::MatrixXcd::Zero(rho.dim_a, rho.dim_a);
  for (int n = 0; n < rho.dim_a; ++n)
    for (int np = 0; np < rho.dim_a; ++np)
      for (int m = 0; m < rho.dim_b; ++m)
        out.entries(n, np) += rho.entries(rho.index(n, m), rho.index(np, m));
  return out;
}

SingleModeFock reduced_mode_b(const FockDensityMatrix& rho) {
  SingleModeFock out;
  out.dim = rho.dim_b;
  out.entries = Eigen::MatrixXcd::Zero(rho.dim_b, rho.dim_b);
  for (int m = 0; m < rho.dim_b; ++m)
    for (int mp = 0; mp < rho.dim_b; ++mp)
      for (int n = 0; n < rho.dim_a; ++n)
        out.entries(m, mp) += rho.entries(rho.index(n, m), rho.index(n, mp));
  return out;
}

FockDensityMatrix partial_transpose_b(const FockDensityMatrix& rho) {
  FockDensityMatrix out;
  out.dim_a = rho.dim_a;
  out.dim_b = rho.dim_b;
  out.entries.resizeLike(rho.entries);
  for (int n = 0; n < rho.dim_a; ++n)
    for (int np = 0; np < rho.dim_a; ++np)
      for (int m = 0; m < rho.dim_b; ++m)
        for (int mp = 0; mp < rho.dim_b; ++mp)
          out.entries(out.index(n, mp), out.index(np, m)) =
              rho.entries(rho.index(n, m), rho.index(np, mp));
  return out;
}

}  // namespace epr
