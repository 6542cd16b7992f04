#include "core/kernel.hpp"

#include <cmath>

namespace sc {

double norm(const Point& p) { return std::sqrt(norm_sq(p)); }

bool same_point(const Point& a, const Point& b) {
  if (a.coords.size() != b.coords.size()) return false;
  for (size_t i = 0; i < a.coords.size(); ++i)
    if (a.coords[i] != b.coords[i]) return false;
  return true;
}

int domain_dim(const Domain& dom) {
  if (const auto* iv = std::get_if<IntervalDomain>(&dom)) {
    (void)iv;
    return 1;
  }
  if (const auto* bx = std::get_if<BoxSamplingDomain>(&dom)) return static_cast<int>(bx->lo.size());
  return std::get<SphereDomain>(dom).d;
}

cplx eval_kernel(const KernelSpec& k, const Point& xi, const Point& eta) {
  if (xi.dim() != k.dim || eta.dim() != k.dim)
    fail(errc::usage, "eval_kernel: point dimension does not match kernel dimension");
  return k.evaluate(xi, eta);
}

double kappa(const KernelSpec& k, const Point& xi, const Point& eta) {
  cplx dxx = eval_kernel(k, xi, xi);
  cplx dyy = eval_kernel(k, eta, eta);
  if (std::abs(dxx.imag()) > 1e-12 || std::abs(dyy.imag()) > 1e-12)
    fail(errc::invalid_kernel, "kappa: kernel diagonal is not real (label '" + k.label + "')");
  cplx off = eval_kernel(k, xi, eta);
  double p = dxx.real();
  double q = dyy.real();
  return 0.5 * (p + q) - 0.5 * std::sqrt((p - q) * (p - q) + 4.0 * std::norm(off));
}

Point random_domain_point(const Domain& dom, std::mt19937_64& rng) {
  if (const auto* iv = std::get_if<IntervalDomain>(&dom))
    return Point{uniform(rng, iv->a, iv->b)};
  if (const auto* bx = std::get_if<BoxSamplingDomain>(&dom)) {
    Point p;
    p.coords.resize(bx->lo.size());
    for (size_t i = 0; i < bx->lo.size(); ++i) p.coords[i] = uniform(rng, bx->lo[i], bx->hi[i]);
    return p;
  }
  const auto& sp = std::get<SphereDomain>(dom);
  if (sp.d == 2) {
    double ang = uniform(rng, 0.0, 2.0 * M_PI);
    return Point{sp.lambda * std::cos(ang), sp.lambda * std::sin(ang)};
  }
  // uniform on the 2-sphere: uniform z, uniform azimuth
  double z = uniform(rng, -1.0, 1.0);
  double ang = uniform(rng, 0.0, 2.0 * M_PI);
  double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  return Point{sp.lambda * s * std::cos(ang), sp.lambda * s * std::sin(ang), sp.lambda * z};
}

bool check_hermitian(const KernelSpec& k, std::mt19937_64& rng, int samples, double tol) {
  Domain dom = k.domain ? *k.domain : Domain(IntervalDomain{0.0, 1.0});
  for (int s = 0; s < samples; ++s) {
    Point xi = random_domain_point(dom, rng);
    Point eta = random_domain_point(dom, rng);
    cplx fwd = eval_kernel(k, xi, eta);
    cplx bwd = eval_kernel(k, eta, xi);
    if (std::abs(bwd - std::conj(fwd)) > tol) return false;
  }
  return true;
}

} // namespace sc
