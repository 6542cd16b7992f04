#include "core/oracle.hpp"

#include <cmath>

namespace sc {

HermitianMatrix nystrom_matrix(const KernelSpec& k, const Quadrature& q) {
  const int n = q.size();
  if (n > 0 && q.nodes[0].dim() != k.dim)
    fail(errc::usage, "nystrom_matrix: quadrature dimension does not match kernel");
  HermitianMatrix m = HermitianMatrix::zeros(n);
  std::vector<double> sw(n);
  for (int i = 0; i < n; ++i) sw[i] = std::sqrt(q.weights[i]);
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = cplx(sw[i] * sw[i] * k.evaluate(q.nodes[i], q.nodes[i]).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      cplx v = sw[i] * sw[j] * k.evaluate(q.nodes[i], q.nodes[j]);
      m.at(i, j) = v;
      m.at(j, i) = std::conj(v);
    }
  }
  return m;
}

SpectralResult count_below(const KernelSpec& k, const Quadrature& q, double t, double guard) {
  SpectralResult res;
  res.grid_size = q.size();
  res.t = t;
  res.eigenvalues = eigenvalues_hermitian(nystrom_matrix(k, q));
  double max_abs = 0.0;
  for (double ev : res.eigenvalues) max_abs = std::max(max_abs, std::fabs(ev));
  res.guard = (guard >= 0.0) ? guard : 1e-9 * max_abs;
  for (double ev : res.eigenvalues) {
    if (ev < t - res.guard) ++res.count_below_t;
    if (ev >= t - res.guard && ev <= t + res.guard) res.boundary_warning = true;
  }
  return res;
}

RefinementResult refine_and_count(const KernelSpec& k, const std::vector<Quadrature>& grids,
                                  double t, double guard) {
  if (grids.size() < 2) fail(errc::usage, "refine_and_count: need at least two grids");
  for (size_t i = 1; i < grids.size(); ++i)
    if (grids[i].size() <= grids[i - 1].size())
      fail(errc::usage, "refine_and_count: grids must strictly increase in size");
  RefinementResult out;
  out.per_grid.reserve(grids.size());
  for (const auto& q : grids) out.per_grid.push_back(count_below(k, q, t, guard));
  const auto& last = out.per_grid[out.per_grid.size() - 1];
  const auto& prev = out.per_grid[out.per_grid.size() - 2];
  out.converged = last.count_below_t == prev.count_below_t && !last.boundary_warning &&
                  !prev.boundary_warning;
  return out;
}

} // namespace sc
