#pragma once

#include <vector>

#include "core/kernel.hpp"
#include "core/linalg.hpp"
#include "core/quadrature.hpp"

namespace sc {

struct SpectralResult {
  std::vector<double> eigenvalues; // ascending
  int grid_size = 0;
  long long count_below_t = 0;
  double t = 0.0;
  double guard = 0.0;
  bool boundary_warning = false; // some eigenvalue within [t-guard, t+guard]
};

// Symmetrized Nystrom discretization A_ij = sqrt(w_i w_j) K(x_i, x_j).
// Hermitian by construction (upper triangle evaluated, mirrored); real
// symmetric for real kernels.
HermitianMatrix nystrom_matrix(const KernelSpec& k, const Quadrature& q);

// Eigenvalues below t - guard.  guard < 0 requests the default 1e-9 * max|eig|.
SpectralResult count_below(const KernelSpec& k, const Quadrature& q, double t,
                           double guard = -1.0);

struct RefinementResult {
  std::vector<SpectralResult> per_grid;
  bool converged = false; // final two counts equal and free of boundary warnings
};

RefinementResult refine_and_count(const KernelSpec& k, const std::vector<Quadrature>& grids,
                                  double t, double guard = -1.0);

} // namespace sc
