#pragma once

#include <string>

#include "core/dn.hpp"
#include "core/kernel.hpp"
#include "core/measure.hpp"
#include "core/quadrature.hpp"

namespace sc {

// Ratio C_t(mu) and its two building blocks:
//   numerator   = sum over atoms of w * (t - kappa(xi, eta))_+
//   denominator = sum over marginal pairs of w_a w_b |K(x_a, x_b)|^2
//   c           = numerator^2 / denominator
// `degenerate` is set when the kernel vanishes on the marginal support (RMS
// |K| below 1e-14), in which case c is +infinity.
struct CtValue {
  double numerator = 0.0;
  double denominator = 0.0;
  double c = 0.0;
  bool degenerate = false;
};

struct BoundReport {
  double t = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  double c_t = 0.0;
  double raw_bound = 0.0;      // 1/2 + c_t/16
  long long integer_bound = 0; // smallest integer >= raw_bound
  long long n_mu = 1;          // integer nearest to (c_t+4)/8, clamped to >= 1
  std::string measure_label;
  bool degenerate = false;
};

// Kernel values with |K| at or below this RMS level across the marginal
// support count as identically zero (the degenerate-denominator route).
inline constexpr double kDegenerateRmsTol = 1e-14;

CtValue c_t(const KernelSpec& k, const SymmetricAtomicMeasure& mu, double t);

// Counting-function lower bound 1/2 + C_t(mu)/16 for t <= 0.
BoundReport theorem_bound(const KernelSpec& k, const SymmetricAtomicMeasure& mu, double t);

// Integer n with |2n - (c+4)/4| <= 1, clamped to >= 1.
long long choose_n(double c);

// Trace/Hilbert-Schmidt bound restricted to quadrature nodes with negative
// kernel diagonal:
//   (sum_i w_i K(x_i,x_i))^2 / (sum_ij w_i w_j |K(x_i,x_j)|^2).
// Throws errc::not_applicable when no node has K(x,x) < 0.
double trace_hs_bound(const KernelSpec& k, const Quadrature& quad);

// Closed-form bound for difference kernels at a fixed shift theta:
//   1/2 + (|h(theta)|-h(0)+t)^2 / (8 sum_ab w_a w_b (|h(x_a-x_b)|^2 + |h(x_a-x_b+theta)|^2)).
double convolution_bound_point(const DifferenceProfile& h, const Point& theta, double t,
                               const AtomicMeasure& mu_tilde);

struct ConvolutionSupBound {
  double sup_h = 0.0;      // grid sup of |h| over |theta| <= search_radius
  double tail_sup = 0.0;   // sup of |h| over tail_radius <= |theta| <= 2*tail_radius
  double bound = 0.0;      // 1/2 + ((sup_h - h(0) + t) / (4 tail_sup))^2
  bool infinite = false;   // tail_sup below 1e-14 while the numerator is positive
};

// Shift-optimized bound with the tail limsup approximated by an annulus sup.
// The annulus approximation is not certified; callers flag it as approximate.
ConvolutionSupBound convolution_bound_sup(const DifferenceProfile& h, double t,
                                          double search_radius, double tail_radius, int grid_n);

// Closed-form constant
//   C_Omega(lambda, r) = (c_{d-1} r^4 / 18) * inf_{|theta|=r} |chi_hat(theta)|^2
//                        * lambda^{d-4} / |Omega_{1/lambda}|
// with c_1 = 2*pi, c_2 = 4*pi and the inf taken over a uniform direction grid
// (>= 256 directions for d=2, >= 64x64 for d=3 when n_dirs <= 0).
double fs_constant(const BoxDomain& box, double lambda, double r, int n_dirs = 0);

// N_N - N_D lower bound arithmetic: ceil(n_K) + n_D, plus dim_ker when
// condition (C3) is asserted by the user.
long long dn_gap_report(double n_K, long long dim_ker, long long n_D, bool c3_asserted);

} // namespace sc
