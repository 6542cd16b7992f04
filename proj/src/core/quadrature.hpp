#pragma once

#include <string>
#include <vector>

#include "core/common.hpp"
#include "core/kernel.hpp"

#include <json.hpp>

namespace sc {

// Node/weight discretization of a measure nu on M.  Sphere rules carry the
// normalized surface measure (total weight 1); interval/box rules carry the
// Lebesgue measure of the domain.
struct Quadrature {
  std::vector<Point> nodes;
  std::vector<double> weights;
  std::string domain_label;

  int size() const { return static_cast<int>(nodes.size()); }
  double total_weight() const;
};

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

Quadrature gauss_legendre_interval(double a, double b, int n);
Quadrature box_product(const std::vector<double>& sides, int n_per_axis);
// n equally spaced nodes on the circle of radius lambda, weights 1/n.
Quadrature circle_uniform(double lambda, int n);
// (azimuth x polar) product grid on the sphere of radius lambda, sin-polar
// weights normalized to total 1.
Quadrature sphere_latlong(double lambda, int n_azimuth, int n_polar);

// kind in {gauss-legendre-interval, box-product, circle-uniform, sphere-latlong}.
Quadrature make_quadrature(const std::string& kind, const nlohmann::json& params);

// Quadrature with n nodes (n per axis for boxes, n x n for spheres) on a
// kernel's declared domain.
Quadrature quadrature_for_domain(const Domain& dom, int n);

} // namespace sc
