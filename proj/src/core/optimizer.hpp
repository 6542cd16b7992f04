#pragma once

#include <utility>
#include <vector>

#include "core/bounds.hpp"
#include "core/kernel.hpp"
#include "core/measure.hpp"

namespace sc {

struct GreedyStep {
  int step = 0;
  double c = 0.0;
  int pool_index = -1; // candidate chosen at this step
};

struct GreedyResult {
  SymmetricAtomicMeasure measure;
  double c = 0.0;
  std::vector<GreedyStep> trace;
};

// Greedy construction of a symmetric measure maximizing C_t: repeatedly add
// the unit-weight symmetrized candidate pair that maximizes c_t, stopping at
// max_atoms or when the best improvement drops to 1e-9.  Ties break on the
// lowest pool index.  Inadmissible pool pairs (kappa >= t) are dropped up
// front; an empty admissible pool is an admissibility error.
GreedyResult greedy_atoms(const KernelSpec& k, double t,
                          const std::vector<std::pair<Point, Point>>& pool, int max_atoms);

// Coordinate ascent on the weights of mu0 over its symmetric atom groups;
// support is fixed, c_t never decreases.  Appends one c value per sweep to
// *sweep_trace when given.
SymmetricAtomicMeasure reweight_fixed_support(const KernelSpec& k, double t,
                                              const SymmetricAtomicMeasure& mu0, int iters,
                                              std::vector<double>* sweep_trace = nullptr);

// Default candidate pool: all ordered pairs of an n-point tensor grid over the
// kernel's declared domain.
std::vector<std::pair<Point, Point>> grid_pool(const KernelSpec& k, int n_points);

} // namespace sc
