#pragma once

#include <string>
#include <vector>

#include "core/common.hpp"
#include "core/kernel.hpp"
#include "core/quadrature.hpp"

namespace sc {

// Axis-aligned box [0,L1] x ... x [0,Ld], d in {2,3}.
struct BoxDomain {
  std::vector<double> sides;

  int dim() const { return static_cast<int>(sides.size()); }
  double volume() const;
};

BoxDomain make_box(std::vector<double> sides);

// Fourier transform of the box indicator, convention integral_box exp(-i theta.x) dx
// = prod_j (1 - exp(-i theta_j L_j)) / (i theta_j), with the theta_j -> 0 limit L_j.
cplx chi_hat_box(const BoxDomain& box, const Point& theta);

// Volume of {x in box : dist(x, boundary) < 1/lambda}:
// prod L_j - prod max(L_j - 2/lambda, 0).
double boundary_layer_volume(const BoxDomain& box, double lambda);

// Kernel K(xi, eta) = -|xi - eta|^2 chi_hat_box(xi - eta) on the sphere of
// radius lambda; zero diagonal, complex in general.
KernelSpec build_dn_kernel(const BoxDomain& box, double lambda);

// Sampled field u on a sphere quadrature.
struct SphereField {
  Quadrature quadrature;
  std::vector<cplx> values;
};

struct KcCheck {
  double lhs = 0.0;     // ||grad f_u||^2 - lambda^2 ||f_u||^2 over the box
  double rhs = 0.0;     // (1/2) sum_ab w_a w_b K(xi_a, xi_b) u_b conj(u_a)
  double rel_err = 0.0;
  bool resolved = true; // box quadrature meets the 8-nodes-per-wavelength rule
};

// Validates the quadratic-form identity linking the box energy of
// f_u(x) = sum_k w_k exp(-i x.xi_k) u_k with the sphere kernel form.  The box
// quadrature must be a tensor rule over the same box.
KcCheck verify_kc_identity(const BoxDomain& box, double lambda, const SphereField& u,
                           const Quadrature& box_quad);

struct DnReport {
  std::vector<double> box;
  double lambda = 0.0;
  double r = 0.0;
  double c_t = 0.0;
  double raw_bound = 0.0;
  double fs_bound = 0.0;       // 1/2 + C_Omega(lambda, r)/16
  long long nystrom_count = 0; // N(K_{lambda,nu}, 0) on the sphere quadrature
  bool count_boundary_warning = false;
  long long dn_lower = 0;      // ceil(raw_bound) + n_D
  bool degenerate = false;
};

// Full pipeline for one (lambda, r): chord-measure bound, closed-form
// comparison, Nystrom count, and the resulting N_N - N_D lower bound.
DnReport dn_lower_bound(const BoxDomain& box, double lambda, double r, int n_sphere,
                        long long n_dirichlet);

// Same, for a whole r-grid; the Nystrom count is computed once and shared.
std::vector<DnReport> dn_sweep(const BoxDomain& box, double lambda,
                               const std::vector<double>& r_values, int n_sphere,
                               long long n_dirichlet);

} // namespace sc
