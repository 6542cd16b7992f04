#pragma once

#include <vector>

#include "core/common.hpp"

namespace sc {

// Dense Hermitian matrix, row-major.  Only the operations the project needs:
// assembly, eigenvalues, Hilbert-Schmidt norms and LDL^* inertia.
struct HermitianMatrix {
  int n = 0;
  std::vector<cplx> a; // n*n entries

  static HermitianMatrix zeros(int n) {
    HermitianMatrix m;
    m.n = n;
    m.a.assign(static_cast<size_t>(n) * n, cplx(0.0, 0.0));
    return m;
  }
  cplx& at(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  const cplx& at(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  double max_hermiticity_residual() const;
  double frobenius_sq() const;
  bool is_real(double tol = 0.0) const;
};

// All eigenvalues of a real symmetric matrix (row-major, size n*n), ascending.
// Cyclic Jacobi with the usual threshold schedule; no eigenvectors.
std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n);

// All eigenvalues of a Hermitian matrix, ascending.  Real input goes straight
// to the symmetric solver; complex input is embedded into the real symmetric
// matrix [[Re, -Im], [Im, Re]] of doubled size, whose spectrum is the original
// one with every multiplicity doubled.
// Throws errc::usage if the Hermiticity residual exceeds `herm_tol`.
std::vector<double> eigenvalues_hermitian(const HermitianMatrix& m, double herm_tol = 1e-10);

struct Inertia {
  int negative = 0;
  int zero = 0;
  int positive = 0;
};

// Inertia of a Hermitian matrix via LDL^* with Bunch-Kaufman pivoting.
// Independent of the Jacobi route; used as the second leg of the
// eigenvalue-counting cross-check.
Inertia ldl_inertia(HermitianMatrix m, double zero_tol = 0.0);

} // namespace sc
