#pragma once

#include <cstdint>
#include <vector>

#include "core/kernel.hpp"
#include "core/linalg.hpp"
#include "core/measure.hpp"

namespace sc {

// An admissible configuration: n point pairs with kappa(xi_j, eta_j) < t.
struct Configuration {
  std::vector<std::pair<Point, Point>> pairs;

  int size() const { return static_cast<int>(pairs.size()); }
};

// The finite matrices behind the counting argument, for one configuration:
//   k2n         2n x 2n Hermitian matrix of kernel values in 2x2 blocks
//   lambda_diag diagonal scale factors (t - kappa_j)^{-1/2}, twice per pair
//   k_tilde     lambda_diag (k2n - t I) lambda_diag
//   k_diag      block-diagonal part of k_tilde
//   k_off       k_tilde - k_diag (zero 2x2 diagonal blocks)
struct ProofMatrices {
  HermitianMatrix k2n;
  std::vector<double> lambda_diag;
  HermitianMatrix k_tilde;
  HermitianMatrix k_diag;
  HermitianMatrix k_off;
};

ProofMatrices assemble(const KernelSpec& k, const Configuration& config, double t);

// Number of eigenvalues of a Hermitian matrix strictly below t - eps.
long long inertia_count(const HermitianMatrix& a, double t, double eps);

// Same count through the LDL^* inertia of A - tI; the independent second route.
long long inertia_count_ldl(const HermitianMatrix& a, double t);

// Right-hand side of the off-diagonal Hilbert-Schmidt identity:
//   sum_{i != j} (|K(xi_i,xi_j)|^2 + |K(xi_i,eta_j)|^2 + |K(eta_i,xi_j)|^2 +
//                 |K(eta_i,eta_j)|^2) / ((t-kappa_i)(t-kappa_j)).
double hs_off_closed_form(const KernelSpec& k, const Configuration& config, double t);

struct McAverageResult {
  double empirical_mean = 0.0;
  double target = 0.0; // 4 n (n-1) / C_t(mu)
  double stderr_mean = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

// Monte-Carlo check of the averaging identity: configurations drawn i.i.d.
// from the tilted measure (atom probability proportional to w * (t - kappa)),
// mean of ||k_off||_HS^2 against 4n(n-1)/C_t(mu).  The measure is restricted
// to its admissible atoms first.
McAverageResult mc_average_check(const KernelSpec& k, const SymmetricAtomicMeasure& mu, double t,
                                 int n, int samples, std::uint64_t seed);

// Helper for tests and the trace runner: draw an admissible configuration
// from the tilted measure.  With distinct_entries, configurations whose 2n
// points are not pairwise distinct are rejected and redrawn; coincident
// points put eigenvalues exactly at the counting cut, which the proof handles
// by a perturbation argument that is not simulated here.
Configuration sample_configuration(const SymmetricAtomicMeasure& mu, const KernelSpec& k, double t,
                                   int n, std::mt19937_64& rng, bool distinct_entries = false);

} // namespace sc
