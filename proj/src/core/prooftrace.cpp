#include "core/prooftrace.hpp"

#include <algorithm>
#include <cmath>

#include "core/bounds.hpp"

namespace sc {

ProofMatrices assemble(const KernelSpec& k, const Configuration& config, double t) {
  const int n = config.size();
  std::vector<double> scale(n); // (t - kappa_j)^{-1/2}
  for (int j = 0; j < n; ++j) {
    double kap = kappa(k, config.pairs[j].first, config.pairs[j].second);
    if (!(kap < t))
      fail(errc::usage, "assemble: pair " + std::to_string(j) + " is not admissible (kappa >= t)");
    scale[j] = 1.0 / std::sqrt(t - kap);
  }

  ProofMatrices pm;
  pm.k2n = HermitianMatrix::zeros(2 * n);
  pm.lambda_diag.resize(2 * n);
  auto point_of = [&](int a) -> const Point& {
    return (a % 2 == 0) ? config.pairs[a / 2].first : config.pairs[a / 2].second;
  };
  for (int a = 0; a < 2 * n; ++a) pm.lambda_diag[a] = scale[a / 2];
  for (int a = 0; a < 2 * n; ++a) {
    pm.k2n.at(a, a) = cplx(eval_kernel(k, point_of(a), point_of(a)).real(), 0.0);
    for (int b = a + 1; b < 2 * n; ++b) {
      cplx v = eval_kernel(k, point_of(a), point_of(b));
      pm.k2n.at(a, b) = v;
      pm.k2n.at(b, a) = std::conj(v);
    }
  }
  pm.k_tilde = HermitianMatrix::zeros(2 * n);
  pm.k_diag = HermitianMatrix::zeros(2 * n);
  pm.k_off = HermitianMatrix::zeros(2 * n);
  // upper triangle scaled, then mirrored, so k_tilde stays exactly Hermitian
  for (int a = 0; a < 2 * n; ++a)
    for (int b = a; b < 2 * n; ++b) {
      cplx shifted = pm.k2n.at(a, b) - (a == b ? cplx(t, 0.0) : cplx(0.0, 0.0));
      cplx v = pm.lambda_diag[a] * shifted * pm.lambda_diag[b];
      pm.k_tilde.at(a, b) = v;
      pm.k_tilde.at(b, a) = std::conj(v);
      if (a / 2 == b / 2) {
        pm.k_diag.at(a, b) = v;
        pm.k_diag.at(b, a) = std::conj(v);
      } else {
        pm.k_off.at(a, b) = v;
        pm.k_off.at(b, a) = std::conj(v);
      }
    }
  return pm;
}

long long inertia_count(const HermitianMatrix& a, double t, double eps) {
  if (eps < 0.0) fail(errc::usage, "inertia_count: eps must be >= 0");
  std::vector<double> evs = eigenvalues_hermitian(a);
  long long count = 0;
  for (double ev : evs)
    if (ev < t - eps) ++count;
  return count;
}

long long inertia_count_ldl(const HermitianMatrix& a, double t) {
  HermitianMatrix shifted = a;
  for (int i = 0; i < shifted.n; ++i) shifted.at(i, i) -= t;
  return ldl_inertia(std::move(shifted)).negative;
}

double hs_off_closed_form(const KernelSpec& k, const Configuration& config, double t) {
  const int n = config.size();
  std::vector<double> denom(n);
  for (int j = 0; j < n; ++j) {
    double kap = kappa(k, config.pairs[j].first, config.pairs[j].second);
    if (!(kap < t)) fail(errc::usage, "hs_off_closed_form: configuration not admissible");
    denom[j] = t - kap;
  }
  KahanSum sum;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const auto& [xi_i, eta_i] = config.pairs[i];
      const auto& [xi_j, eta_j] = config.pairs[j];
      double terms = std::norm(eval_kernel(k, xi_i, xi_j)) +
                     std::norm(eval_kernel(k, xi_i, eta_j)) +
                     std::norm(eval_kernel(k, eta_i, xi_j)) +
                     std::norm(eval_kernel(k, eta_i, eta_j));
      sum.add(terms / (denom[i] * denom[j]));
    }
  return sum.value();
}

namespace {

// Restriction of mu to its admissible atoms, with the tilted sampling weights
// w * (t - kappa).
struct TiltedAtoms {
  SymmetricAtomicMeasure restricted;
  std::vector<double> cumulative; // cumulative tilted weights over restricted.atoms
  double total = 0.0;
};

TiltedAtoms tilt(const SymmetricAtomicMeasure& mu, const KernelSpec& k, double t) {
  TiltedAtoms out;
  out.restricted.label = mu.label;
  for (const auto& a : mu.atoms) {
    double gap = t - kappa(k, a.xi, a.eta);
    if (gap > 0.0) {
      out.restricted.atoms.push_back(a);
      out.total += a.w * gap;
      out.cumulative.push_back(out.total);
    }
  }
  if (out.restricted.atoms.empty() || !(out.total > 0.0))
    fail(errc::admissibility, "mc_average_check: no admissible atoms (condition (C2) fails)");
  return out;
}

} // namespace

Configuration sample_configuration(const SymmetricAtomicMeasure& mu, const KernelSpec& k, double t,
                                   int n, std::mt19937_64& rng, bool distinct_entries) {
  TiltedAtoms ta = tilt(mu, k, t);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Configuration cfg;
    cfg.pairs.reserve(n);
    for (int i = 0; i < n; ++i) {
      double u = uniform01(rng) * ta.total;
      size_t idx = std::lower_bound(ta.cumulative.begin(), ta.cumulative.end(), u) -
                   ta.cumulative.begin();
      if (idx >= ta.restricted.atoms.size()) idx = ta.restricted.atoms.size() - 1;
      cfg.pairs.push_back({ta.restricted.atoms[idx].xi, ta.restricted.atoms[idx].eta});
    }
    if (!distinct_entries) return cfg;
    std::vector<const Point*> pts;
    for (const auto& [xi, eta] : cfg.pairs) {
      pts.push_back(&xi);
      pts.push_back(&eta);
    }
    bool ok = true;
    for (size_t i = 0; i < pts.size() && ok; ++i)
      for (size_t j = i + 1; j < pts.size() && ok; ++j)
        if (same_point(*pts[i], *pts[j])) ok = false;
    if (ok) return cfg;
  }
  fail(errc::admissibility,
       "sample_configuration: measure support cannot produce configurations with "
       "pairwise-distinct points");
}

McAverageResult mc_average_check(const KernelSpec& k, const SymmetricAtomicMeasure& mu, double t,
                                 int n, int samples, std::uint64_t seed) {
  if (n < 1) fail(errc::usage, "mc_average_check: n must be >= 1");
  if (samples < 100) fail(errc::usage, "mc_average_check: need at least 100 samples");
  TiltedAtoms ta = tilt(mu, k, t);

  McAverageResult res;
  res.samples = samples;
  res.seed = seed;
  if (n == 1) {
    res.target = 0.0;
    return res; // single-pair configurations have no off-diagonal part
  }
  CtValue ct = c_t(k, ta.restricted, t);
  if (ct.degenerate)
    fail(errc::admissibility, "mc_average_check: degenerate kernel, target undefined");
  res.target = 4.0 * n * (n - 1.0) / ct.c;

  std::mt19937_64 rng(seed);
  KahanSum sum, sum_sq;
  for (int s = 0; s < samples; ++s) {
    Configuration cfg;
    cfg.pairs.reserve(n);
    for (int i = 0; i < n; ++i) {
      double u = uniform01(rng) * ta.total;
      size_t idx = std::lower_bound(ta.cumulative.begin(), ta.cumulative.end(), u) -
                   ta.cumulative.begin();
      if (idx >= ta.restricted.atoms.size()) idx = ta.restricted.atoms.size() - 1;
      cfg.pairs.push_back({ta.restricted.atoms[idx].xi, ta.restricted.atoms[idx].eta});
    }
    double v = assemble(k, cfg, t).k_off.frobenius_sq();
    sum.add(v);
    sum_sq.add(v * v);
  }
  double mean = sum.value() / samples;
  double var = std::max(0.0, sum_sq.value() / samples - mean * mean);
  res.empirical_mean = mean;
  res.stderr_mean = std::sqrt(var / samples);
  return res;
}

} // namespace sc
