#include "core/measure.hpp"

#include <cmath>
#include <cstring>
#include <map>

#include "core/quadrature.hpp"

namespace sc {

double AtomicMeasure::mass() const {
  KahanSum s;
  for (const auto& a : atoms) s.add(a.w);
  return s.value();
}

double SymmetricAtomicMeasure::mass() const {
  KahanSum s;
  for (const auto& a : atoms) s.add(a.w);
  return s.value();
}

SymmetricAtomicMeasure make_symmetric(
    const std::vector<std::pair<std::pair<Point, Point>, double>>& pairs) {
  SymmetricAtomicMeasure mu;
  mu.atoms.reserve(2 * pairs.size());
  for (const auto& [pq, w] : pairs) {
    if (!(w > 0.0)) fail(errc::usage, "make_symmetric: weights must be strictly positive");
    const auto& [p, q] = pq;
    if (p.dim() != q.dim()) fail(errc::usage, "make_symmetric: mixed point dimensions in a pair");
    if (same_point(p, q)) {
      mu.atoms.push_back({p, q, w});
    } else {
      mu.atoms.push_back({p, q, 0.5 * w});
      mu.atoms.push_back({q, p, 0.5 * w});
    }
  }
  return mu;
}

AtomicMeasure marginal(const SymmetricAtomicMeasure& mu) {
  AtomicMeasure out;
  out.atoms.reserve(mu.atoms.size());
  for (const auto& a : mu.atoms) out.atoms.push_back({a.xi, a.w});
  return out;
}

SymmetricAtomicMeasure shift_measure(const AtomicMeasure& mu_tilde, const Point& theta) {
  if (norm_sq(theta) == 0.0) fail(errc::usage, "shift_measure: theta must be nonzero");
  for (const auto& a : mu_tilde.atoms)
    if (!(a.w > 0.0)) fail(errc::usage, "shift_measure: weights must be strictly positive");
  double m = mu_tilde.mass();
  if (std::fabs(m - 1.0) > 1e-12)
    fail(errc::usage, "shift_measure: mu_tilde must be a probability measure (mass " +
                          std::to_string(m) + ")");
  SymmetricAtomicMeasure mu;
  mu.label = "shift";
  mu.atoms.reserve(2 * mu_tilde.atoms.size());
  for (const auto& a : mu_tilde.atoms) {
    if (a.x.dim() != theta.dim()) fail(errc::usage, "shift_measure: dimension mismatch");
    Point shifted = a.x + theta;
    mu.atoms.push_back({a.x, shifted, a.w});
    mu.atoms.push_back({shifted, a.x, a.w});
  }
  return mu;
}

SymmetricAtomicMeasure chord_measure(double lambda, double r, int d, int n) {
  if (!(lambda > 0.0)) fail(errc::usage, "chord_measure: lambda must be positive");
  if (!(r > 0.0) || !(r < 2.0 * lambda))
    fail(errc::usage, "chord_measure: r must lie in (0, 2*lambda)");
  if (d != 2 && d != 3) fail(errc::usage, "chord_measure: only d=2 and d=3 are implemented");
  if (n < 4) fail(errc::usage, "chord_measure: need n >= 4");

  std::vector<std::pair<std::pair<Point, Point>, double>> pairs;
  if (d == 2) {
    // One chord per node, rotated by the chord angle; symmetrization supplies
    // the opposite chords and makes the marginal exactly uniform.
    double alpha = 2.0 * std::asin(r / (2.0 * lambda));
    for (int k = 0; k < n; ++k) {
      double ang = 2.0 * M_PI * k / n;
      Point xi{lambda * std::cos(ang), lambda * std::sin(ang)};
      Point eta{lambda * std::cos(ang + alpha), lambda * std::sin(ang + alpha)};
      pairs.push_back({{xi, eta}, 1.0 / n});
    }
  } else {
    Quadrature outer = sphere_latlong(lambda, n, n);
    double cb = 1.0 - r * r / (2.0 * lambda * lambda);
    double sb = std::sqrt(std::max(0.0, 1.0 - cb * cb));
    for (int i = 0; i < outer.size(); ++i) {
      const Point& xi = outer.nodes[i];
      // orthonormal frame perpendicular to xi
      double inv = 1.0 / lambda;
      Point u{xi[0] * inv, xi[1] * inv, xi[2] * inv};
      Point e1 = (std::fabs(u[0]) < 0.9) ? Point{0.0, -u[2], u[1]} : Point{-u[2], 0.0, u[0]};
      double e1n = norm(e1);
      e1 = Point{e1[0] / e1n, e1[1] / e1n, e1[2] / e1n};
      Point e2{u[1] * e1[2] - u[2] * e1[1], u[2] * e1[0] - u[0] * e1[2],
               u[0] * e1[1] - u[1] * e1[0]};
      for (int kph = 0; kph < n; ++kph) {
        double ph = 2.0 * M_PI * kph / n;
        Point eta{lambda * (cb * u[0] + sb * (std::cos(ph) * e1[0] + std::sin(ph) * e2[0])),
                  lambda * (cb * u[1] + sb * (std::cos(ph) * e1[1] + std::sin(ph) * e2[1])),
                  lambda * (cb * u[2] + sb * (std::cos(ph) * e1[2] + std::sin(ph) * e2[2]))};
        pairs.push_back({{xi, eta}, outer.weights[i] / n});
      }
    }
  }
  SymmetricAtomicMeasure mu = make_symmetric(pairs);
  mu.label = "chord(r=" + std::to_string(r) + ")";
  return mu;
}

bool check_c2(const SymmetricAtomicMeasure& mu, const KernelSpec& k, double t) {
  if (t > 0.0) fail(errc::usage, "check_c2: t must be <= 0");
  KahanSum s;
  for (const auto& a : mu.atoms) s.add(a.w * std::max(t - kappa(k, a.xi, a.eta), 0.0));
  return s.value() > 0.0;
}

nlohmann::json measure_to_json(const SymmetricAtomicMeasure& mu) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& a : mu.atoms)
    arr.push_back({{"xi", a.xi.coords}, {"eta", a.eta.coords}, {"w", a.w}});
  return arr;
}

namespace {

std::string atom_key(const Point& a, const Point& b) {
  std::string key(sizeof(double) * (a.coords.size() + b.coords.size()), '\0');
  std::memcpy(key.data(), a.coords.data(), sizeof(double) * a.coords.size());
  std::memcpy(key.data() + sizeof(double) * a.coords.size(), b.coords.data(),
              sizeof(double) * b.coords.size());
  return key;
}

} // namespace

SymmetricAtomicMeasure measure_from_json(const nlohmann::json& j) {
  if (!j.is_array()) fail(errc::usage, "measure JSON: expected an array of atom records");
  SymmetricAtomicMeasure mu;
  std::map<std::string, double> net; // (xi,eta) weight minus (eta,xi) weight
  for (const auto& rec : j) {
    PairAtom a;
    a.xi = Point(rec.at("xi").get<std::vector<double>>());
    a.eta = Point(rec.at("eta").get<std::vector<double>>());
    a.w = rec.at("w").get<double>();
    if (!(a.w > 0.0)) fail(errc::usage, "measure JSON: weights must be strictly positive");
    if (a.xi.dim() != a.eta.dim()) fail(errc::usage, "measure JSON: mixed dimensions in an atom");
    if (!same_point(a.xi, a.eta)) {
      net[atom_key(a.xi, a.eta)] += a.w;
      net[atom_key(a.eta, a.xi)] -= a.w;
    }
    mu.atoms.push_back(std::move(a));
  }
  for (const auto& [key, imbalance] : net) {
    (void)key;
    if (std::fabs(imbalance) > 1e-12)
      fail(errc::usage, "measure JSON: atom list is not swap-symmetric");
  }
  return mu;
}

} // namespace sc
