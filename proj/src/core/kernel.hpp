#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "core/common.hpp"

#include <json.hpp>

namespace sc {

// A location in the underlying space M: an ambient real vector, optionally
// constrained to a sphere by the constructors that produce such points.
struct Point {
  std::vector<double> coords;

  Point() = default;
  explicit Point(std::vector<double> c) : coords(std::move(c)) {}
  Point(std::initializer_list<double> c) : coords(c) {}

  int dim() const { return static_cast<int>(coords.size()); }
  double operator[](int i) const { return coords[static_cast<size_t>(i)]; }
};

inline Point operator-(const Point& a, const Point& b) {
  Point r;
  r.coords.resize(a.coords.size());
  for (size_t i = 0; i < a.coords.size(); ++i) r.coords[i] = a.coords[i] - b.coords[i];
  return r;
}
inline Point operator+(const Point& a, const Point& b) {
  Point r;
  r.coords.resize(a.coords.size());
  for (size_t i = 0; i < a.coords.size(); ++i) r.coords[i] = a.coords[i] + b.coords[i];
  return r;
}
inline double dot(const Point& a, const Point& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.coords.size(); ++i) s += a.coords[i] * b.coords[i];
  return s;
}
inline double norm_sq(const Point& p) { return dot(p, p); }
double norm(const Point& p);
bool same_point(const Point& a, const Point& b);

// Domain metadata attached to a kernel; drives quadrature construction and
// candidate pools, nothing else.
struct IntervalDomain {
  double a = 0.0;
  double b = 1.0;
};
struct BoxSamplingDomain {
  std::vector<double> lo;
  std::vector<double> hi;
};
struct SphereDomain {
  double lambda = 1.0;
  int d = 2; // ambient dimension; the sphere itself is (d-1)-dimensional
};
using Domain = std::variant<IntervalDomain, BoxSamplingDomain, SphereDomain>;

int domain_dim(const Domain& dom);

// A difference kernel K(xi, eta) = h(xi - eta); the profile h is kept around
// because the convolution bounds evaluate h directly.
struct DifferenceProfile {
  int dim = 1;
  std::function<cplx(const Point&)> h;
  std::string label;
};

// Evaluatable continuous Hermitian kernel with domain metadata.  Evaluation is
// pure and stateless; concurrent use is safe.
struct KernelSpec {
  int dim = 1;
  bool is_real = true;
  std::string label;
  std::function<cplx(const Point&, const Point&)> evaluate;
  std::optional<Domain> domain;
  std::optional<DifferenceProfile> profile;
};

// K(xi, eta); checks dimensions, nothing else.
cplx eval_kernel(const KernelSpec& k, const Point& xi, const Point& eta);

// Smaller eigenvalue of the 2x2 matrix of kernel values at (xi, eta):
//   (K(xi,xi) + K(eta,eta))/2 - sqrt((K(xi,xi) - K(eta,eta))^2 + 4|K(xi,eta)|^2)/2.
// The diagonal values must be real up to 1e-12; otherwise errc::invalid_kernel.
double kappa(const KernelSpec& k, const Point& xi, const Point& eta);

// Randomized Hermitian-symmetry check: |K(eta,xi) - conj(K(xi,eta))| <= tol on
// `samples` random pairs drawn from the kernel's domain.
bool check_hermitian(const KernelSpec& k, std::mt19937_64& rng, int samples = 256,
                     double tol = 1e-12);

// Random point in the kernel's domain (uniform over the interval/box, uniform
// surface sampling on the sphere).
Point random_domain_point(const Domain& dom, std::mt19937_64& rng);

// Built-in kernel catalog.  Names: constant, difference, gaussian-bump,
// mexican-hat, dn.  Params come as a JSON record; see catalog_json() for the
// accepted fields of each entry.
KernelSpec builtin_kernel(const std::string& name, const nlohmann::json& params);
KernelSpec kernel_from_descriptor(const nlohmann::json& descriptor);
nlohmann::json catalog_json();

// Named difference profiles (cos, gaussian, mexican-hat) with optional
// scale/offset/width; used by "difference" and by the convolution bounds.
DifferenceProfile make_profile(const nlohmann::json& h_descriptor, int dim);

} // namespace sc
