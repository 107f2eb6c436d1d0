#pragma once

#include <Eigen/Dense>

#include "epr/errors.hpp"

namespace epr {

// Two-mode density matrix in the number basis.  Row/column index for the
// basis element |n>_A |m>_B is n*dim_b + m.
struct FockDensityMatrix {
  int dim_a = 0;
  int dim_b = 0;
  Eigen::MatrixXcd entries;

  int index(int n, int m) const { return n * dim_b + m; }
};

struct SingleModeFock {
  int dim = 0;
  Eigen::MatrixXcd entries;
};

// Physical-state invariants: hermitian within 1e-12, trace 1 within 1e-10,
// eigenvalues >= -1e-10.  Throws PhysicalityError naming the failed check.
void validate(const FockDensityMatrix& rho);
void validate(const SingleModeFock& rho);

// rho_A tensor rho_B with the index layout above.
FockDensityMatrix tensor_product(const SingleModeFock& a, const SingleModeFock& b);

// Reduced states (trace over the other mode).
SingleModeFock reduced_mode_a(const FockDensityMatrix& rho);
SingleModeFock reduced_mode_b(const FockDensityMatrix& rho);

// Transpose of the B indices only.  A negative eigenvalue of the result
// witnesses entanglement.
FockDensityMatrix partial_transpose_b(const FockDensityMatrix& rho);

// Smallest eigenvalue of a hermitian matrix (hermitized before solving).
double min_eigenvalue(const Eigen::MatrixXcd& hermitian);

}  // namespace epr
