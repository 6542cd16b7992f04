#include "core/bounds.hpp"

#include <cmath>
#include <limits>

namespace sc {

CtValue c_t(const KernelSpec& k, const SymmetricAtomicMeasure& mu, double t) {
  if (t > 0.0) fail(errc::usage, "c_t: t must be <= 0");
  if (mu.empty()) fail(errc::admissibility, "c_t: empty measure violates condition (C2)");

  KahanSum num;
  for (const auto& a : mu.atoms) num.add(a.w * std::max(t - kappa(k, a.xi, a.eta), 0.0));

  AtomicMeasure mg = marginal(mu);
  const size_t m = mg.atoms.size();
  KahanSum den;
  double marg_mass = 0.0;
  for (size_t i = 0; i < m; ++i) {
    marg_mass += mg.atoms[i].w;
    den.add(mg.atoms[i].w * mg.atoms[i].w *
            std::norm(eval_kernel(k, mg.atoms[i].x, mg.atoms[i].x)));
    for (size_t j = i + 1; j < m; ++j) {
      double v = std::norm(eval_kernel(k, mg.atoms[i].x, mg.atoms[j].x));
      den.add(2.0 * mg.atoms[i].w * mg.atoms[j].w * v);
    }
  }

  CtValue out;
  out.numerator = num.value();
  out.denominator = den.value();
  // RMS of |K| over the marginal support; below tolerance the kernel is
  // treated as identically zero there and the bound degenerates to +infinity.
  if (out.denominator <= kDegenerateRmsTol * kDegenerateRmsTol * marg_mass * marg_mass) {
    out.degenerate = true;
    out.c = std::numeric_limits<double>::infinity();
    return out;
  }
  if (!(out.numerator > 0.0))
    fail(errc::admissibility, "c_t: condition (C2) fails, (t - kappa)_+ vanishes on the measure");
  out.c = out.numerator * out.numerator / out.denominator;
  return out;
}

long long choose_n(double c) {
  if (!(c > 0.0)) fail(errc::usage, "choose_n: c must be positive");
  long long n = std::llround((c + 4.0) / 8.0);
  return n < 1 ? 1 : n;
}

BoundReport theorem_bound(const KernelSpec& k, const SymmetricAtomicMeasure& mu, double t) {
  CtValue v = c_t(k, mu, t);
  BoundReport rep;
  rep.t = t;
  rep.numerator = v.numerator;
  rep.denominator = v.denominator;
  rep.c_t = v.c;
  rep.degenerate = v.degenerate;
  rep.measure_label = mu.label;
  if (v.degenerate) {
    rep.raw_bound = std::numeric_limits<double>::infinity();
    rep.integer_bound = -1; // no finite bound; the kernel vanishes on the support
    rep.n_mu = 1;
    return rep;
  }
  rep.raw_bound = 0.5 + v.c / 16.0;
  rep.integer_bound = static_cast<long long>(std::ceil(rep.raw_bound));
  rep.n_mu = choose_n(v.c);
  return rep;
}

double trace_hs_bound(const KernelSpec& k, const Quadrature& quad) {
  std::vector<int> neg;
  for (int i = 0; i < quad.size(); ++i)
    if (eval_kernel(k, quad.nodes[i], quad.nodes[i]).real() < 0.0) neg.push_back(i);
  if (neg.empty())
    fail(errc::not_applicable, "trace_hs_bound: kernel diagonal is nowhere negative on the grid");
  KahanSum tr;
  for (int i : neg) tr.add(quad.weights[i] * eval_kernel(k, quad.nodes[i], quad.nodes[i]).real());
  KahanSum hs;
  for (size_t a = 0; a < neg.size(); ++a) {
    hs.add(quad.weights[neg[a]] * quad.weights[neg[a]] *
           std::norm(eval_kernel(k, quad.nodes[neg[a]], quad.nodes[neg[a]])));
    for (size_t b = a + 1; b < neg.size(); ++b) {
      double v = std::norm(eval_kernel(k, quad.nodes[neg[a]], quad.nodes[neg[b]]));
      hs.add(2.0 * quad.weights[neg[a]] * quad.weights[neg[b]] * v);
    }
  }
  double trace = tr.value();
  return trace * trace / hs.value();
}

double convolution_bound_point(const DifferenceProfile& h, const Point& theta, double t,
                               const AtomicMeasure& mu_tilde) {
  if (t > 0.0) fail(errc::usage, "convolution_bound_point: t must be <= 0");
  for (const auto& a : mu_tilde.atoms)
    if (!(a.w > 0.0))
      fail(errc::usage, "convolution_bound_point: weights must be strictly positive");
  double m = mu_tilde.mass();
  if (std::fabs(m - 1.0) > 1e-12)
    fail(errc::usage, "convolution_bound_point: mu_tilde must be a probability measure");
  Point origin;
  origin.coords.assign(static_cast<size_t>(h.dim), 0.0);
  double h0 = h.h(origin).real();
  double ht = std::abs(h.h(theta));
  if (!(ht > h0 - t))
    fail(errc::admissibility, "convolution_bound_point: |h(theta)| must exceed h(0) - t");
  KahanSum den;
  for (const auto& a : mu_tilde.atoms)
    for (const auto& b : mu_tilde.atoms) {
      Point diff = a.x - b.x;
      den.add(a.w * b.w * (std::norm(h.h(diff)) + std::norm(h.h(diff + theta))));
    }
  double num = ht - h0 + t;
  return 0.5 + num * num / (8.0 * den.value());
}

ConvolutionSupBound convolution_bound_sup(const DifferenceProfile& h, double t,
                                          double search_radius, double tail_radius, int grid_n) {
  if (t > 0.0) fail(errc::usage, "convolution_bound_sup: t must be <= 0");
  if (!(search_radius > 0.0) || !(tail_radius > 0.0) || grid_n < 2)
    fail(errc::usage, "convolution_bound_sup: radii must be positive and grid_n >= 2");

  // Direction set: coordinate axes plus the main diagonal; every built-in
  // profile is radial for dim >= 2, so this is exact for them and a sampled
  // approximation otherwise.
  std::vector<Point> dirs;
  if (h.dim == 1) {
    dirs.push_back(Point{1.0});
  } else {
    for (int j = 0; j < h.dim; ++j) {
      Point e;
      e.coords.assign(static_cast<size_t>(h.dim), 0.0);
      e.coords[static_cast<size_t>(j)] = 1.0;
      dirs.push_back(e);
    }
    Point diag;
    diag.coords.assign(static_cast<size_t>(h.dim), 1.0 / std::sqrt(double(h.dim)));
    dirs.push_back(diag);
  }
  auto sup_over = [&](double r_lo, double r_hi) {
    double best = 0.0;
    for (const Point& dir : dirs)
      for (int i = 0; i < grid_n; ++i) {
        double r = r_lo + (r_hi - r_lo) * i / (grid_n - 1);
        Point th;
        th.coords.resize(dir.coords.size());
        for (size_t j = 0; j < dir.coords.size(); ++j) th.coords[j] = r * dir.coords[j];
        best = std::max(best, std::abs(h.h(th)));
      }
    return best;
  };

  ConvolutionSupBound out;
  out.sup_h = sup_over(0.0, search_radius);
  out.tail_sup = sup_over(tail_radius, 2.0 * tail_radius);
  Point origin;
  origin.coords.assign(static_cast<size_t>(h.dim), 0.0);
  double h0 = h.h(origin).real();
  double num = out.sup_h - h0 + t;
  if (!(num > 0.0))
    fail(errc::admissibility, "convolution_bound_sup: h(0) - sup|h| >= t, bound not applicable");
  if (out.tail_sup < 1e-14) {
    out.infinite = true;
    out.bound = std::numeric_limits<double>::infinity();
    return out;
  }
  double ratio = num / (4.0 * out.tail_sup);
  out.bound = 0.5 + ratio * ratio;
  return out;
}

double fs_constant(const BoxDomain& box, double lambda, double r, int n_dirs) {
  if (!(lambda > 0.0)) fail(errc::usage, "fs_constant: lambda must be positive");
  if (!(r > 0.0) || !(r < 2.0 * lambda)) fail(errc::usage, "fs_constant: r must lie in (0, 2*lambda)");
  int d = box.dim();
  double inf_sq = std::numeric_limits<double>::infinity();
  if (d == 2) {
    int nd = n_dirs > 0 ? n_dirs : 256;
    for (int i = 0; i < nd; ++i) {
      double ang = 2.0 * M_PI * i / nd;
      Point th{r * std::cos(ang), r * std::sin(ang)};
      inf_sq = std::min(inf_sq, std::norm(chi_hat_box(box, th)));
    }
  } else if (d == 3) {
    int nd = n_dirs > 0 ? n_dirs : 64;
    for (int i = 0; i < nd; ++i) {
      double th = M_PI * (i + 0.5) / nd;
      for (int j = 0; j < nd; ++j) {
        double ph = 2.0 * M_PI * j / nd;
        Point theta{r * std::sin(th) * std::cos(ph), r * std::sin(th) * std::sin(ph),
                    r * std::cos(th)};
        inf_sq = std::min(inf_sq, std::norm(chi_hat_box(box, theta)));
      }
    }
  } else {
    fail(errc::usage, "fs_constant: box dimension must be 2 or 3");
  }
  double c_sphere = (d == 2) ? 2.0 * M_PI : 4.0 * M_PI;
  double layer = boundary_layer_volume(box, lambda);
  return c_sphere * std::pow(r, 4) / 18.0 * inf_sq * std::pow(lambda, d - 4) / layer;
}

long long dn_gap_report(double n_K, long long dim_ker, long long n_D, bool c3_asserted) {
  long long base = static_cast<long long>(std::ceil(n_K));
  return base + n_D + (c3_asserted ? dim_ker : 0);
}

} // namespace sc
