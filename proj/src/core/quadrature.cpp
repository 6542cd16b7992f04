#include "core/quadrature.hpp"

#include <cmath>

namespace sc {

double Quadrature::total_weight() const {
  KahanSum s;
  for (double w : weights) s.add(w);
  return s.value();
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  if (n < 1) fail(errc::usage, "gauss_legendre: need at least one node");
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration from the Chebyshev estimate of the i-th root of P_n.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::fabs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

Quadrature gauss_legendre_interval(double a, double b, int n) {
  if (!(b > a)) fail(errc::usage, "gauss-legendre-interval: need b > a");
  std::vector<double> x, w;
  gauss_legendre(n, x, w);
  Quadrature q;
  q.domain_label = "interval[" + std::to_string(a) + "," + std::to_string(b) + "]";
  q.nodes.reserve(n);
  q.weights.reserve(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    q.nodes.push_back(Point{mid + half * x[i]});
    q.weights.push_back(half * w[i]);
  }
  return q;
}

Quadrature box_product(const std::vector<double>& sides, int n_per_axis) {
  int d = static_cast<int>(sides.size());
  if (d < 1) fail(errc::usage, "box-product: empty side list");
  for (double L : sides)
    if (!(L > 0.0)) fail(errc::usage, "box-product: sides must be positive");
  std::vector<double> x, w;
  gauss_legendre(n_per_axis, x, w);
  Quadrature q;
  q.domain_label = "box";
  std::vector<int> idx(d, 0);
  for (;;) {
    Point p;
    p.coords.resize(d);
    double wt = 1.0;
    for (int j = 0; j < d; ++j) {
      double half = 0.5 * sides[j];
      p.coords[j] = half + half * x[idx[j]];
      wt *= half * w[idx[j]];
    }
    q.nodes.push_back(std::move(p));
    q.weights.push_back(wt);
    int j = 0;
    while (j < d && ++idx[j] == n_per_axis) idx[j++] = 0;
    if (j == d) break;
  }
  return q;
}

Quadrature circle_uniform(double lambda, int n) {
  if (!(lambda > 0.0) || n < 1) fail(errc::usage, "circle-uniform: need lambda > 0 and n >= 1");
  Quadrature q;
  q.domain_label = "circle(lambda=" + std::to_string(lambda) + ")";
  for (int k = 0; k < n; ++k) {
    double ang = 2.0 * M_PI * k / n;
    q.nodes.push_back(Point{lambda * std::cos(ang), lambda * std::sin(ang)});
    q.weights.push_back(1.0 / n);
  }
  return q;
}

Quadrature sphere_latlong(double lambda, int n_azimuth, int n_polar) {
  if (!(lambda > 0.0) || n_azimuth < 1 || n_polar < 1)
    fail(errc::usage, "sphere-latlong: need lambda > 0 and positive node counts");
  std::vector<double> sin_pol(n_polar);
  double total = 0.0;
  for (int i = 0; i < n_polar; ++i) {
    double th = M_PI * (i + 0.5) / n_polar;
    sin_pol[i] = std::sin(th);
    total += sin_pol[i];
  }
  Quadrature q;
  q.domain_label = "sphere(lambda=" + std::to_string(lambda) + ")";
  for (int i = 0; i < n_polar; ++i) {
    double th = M_PI * (i + 0.5) / n_polar;
    double wt = sin_pol[i] / (total * n_azimuth);
    for (int j = 0; j < n_azimuth; ++j) {
      double ph = 2.0 * M_PI * j / n_azimuth;
      q.nodes.push_back(Point{lambda * std::sin(th) * std::cos(ph),
                              lambda * std::sin(th) * std::sin(ph), lambda * std::cos(th)});
      q.weights.push_back(wt);
    }
  }
  return q;
}

Quadrature make_quadrature(const std::string& kind, const nlohmann::json& params) {
  if (kind == "gauss-legendre-interval") {
    return gauss_legendre_interval(params.value("a", 0.0), params.value("b", 1.0),
                                   params.value("n", 32));
  }
  if (kind == "box-product") {
    if (!params.contains("sides")) fail(errc::usage, "box-product: missing 'sides'");
    return box_product(params["sides"].get<std::vector<double>>(), params.value("n", 16));
  }
  if (kind == "circle-uniform") {
    return circle_uniform(params.value("lambda", 1.0), params.value("n", 64));
  }
  if (kind == "sphere-latlong") {
    int n = params.value("n", 16);
    return sphere_latlong(params.value("lambda", 1.0), params.value("n_azimuth", n),
                          params.value("n_polar", n));
  }
  fail(errc::usage, "make_quadrature: unknown kind '" + kind + "'");
}

Quadrature quadrature_for_domain(const Domain& dom, int n) {
  if (const auto* iv = std::get_if<IntervalDomain>(&dom))
    return gauss_legendre_interval(iv->a, iv->b, n);
  if (const auto* bx = std::get_if<BoxSamplingDomain>(&dom)) {
    std::vector<double> sides(bx->lo.size());
    for (size_t i = 0; i < sides.size(); ++i) sides[i] = bx->hi[i] - bx->lo[i];
    Quadrature q = box_product(sides, n);
    for (auto& p : q.nodes)
      for (size_t i = 0; i < p.coords.size(); ++i) p.coords[i] += bx->lo[i];
    return q;
  }
  const auto& sp = std::get<SphereDomain>(dom);
  if (sp.d == 2) return circle_uniform(sp.lambda, n);
  if (sp.d == 3) return sphere_latlong(sp.lambda, n, n);
  fail(errc::usage, "quadrature_for_domain: sphere dimension must be 2 or 3");
}

} // namespace sc
