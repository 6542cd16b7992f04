#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "core/bounds.hpp"
#include "core/dn.hpp"
#include "core/oracle.hpp"

using namespace sc;

TEST_CASE("chi_hat at zero frequency is the volume") {
  BoxDomain box = make_box({1.5, 0.5});
  CHECK(chi_hat_box(box, Point{0.0, 0.0}).real() == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(chi_hat_box(box, Point{0.0, 0.0}).imag() == 0.0);
}

TEST_CASE("chi_hat vanishes at the lattice zeros of the unit square") {
  BoxDomain square = make_box({1.0, 1.0});
  CHECK(std::abs(chi_hat_box(square, Point{2.0 * M_PI, 0.0})) < 1e-15);
  CHECK(std::abs(chi_hat_box(square, Point{0.0, 4.0 * M_PI})) < 1e-15);
}

TEST_CASE("chi_hat conjugate symmetry") {
  std::mt19937_64 rng(83);
  BoxDomain box = make_box({1.0, 0.8});
  for (int i = 0; i < 100; ++i) {
    Point th{uniform(rng, -10.0, 10.0), uniform(rng, -10.0, 10.0)};
    Point neg{-th[0], -th[1]};
    CHECK(std::abs(chi_hat_box(box, neg) - std::conj(chi_hat_box(box, th))) < 1e-14);
  }
}

TEST_CASE("chi_hat agrees with tensor quadrature of the defining integral") {
  std::mt19937_64 rng(89);
  BoxDomain box = make_box({1.0, 0.7});
  Quadrature q = box_product(box.sides, 48);
  for (int rep = 0; rep < 20; ++rep) {
    Point th{uniform(rng, -8.0, 8.0), uniform(rng, -8.0, 8.0)};
    cplx byquad(0.0, 0.0);
    for (int i = 0; i < q.size(); ++i) {
      double phase = -dot(th, q.nodes[i]);
      byquad += q.weights[i] * cplx(std::cos(phase), std::sin(phase));
    }
    CHECK(std::abs(byquad - chi_hat_box(box, th)) < 1e-10);
  }
}

TEST_CASE("dn kernel structure") {
  BoxDomain square = make_box({1.0, 1.0});
  KernelSpec k = build_dn_kernel(square, 1.0);
  Point xi{1.0, 0.0}, anti{-1.0, 0.0};
  CHECK(std::abs(k.evaluate(xi, xi)) == 0.0);
  // antipodal pair: -|2 xi|^2 chi_hat(2 xi)
  cplx expect = -4.0 * chi_hat_box(square, Point{2.0, 0.0});
  CHECK(std::abs(k.evaluate(xi, anti) - expect) < 1e-14);

  // zero diagonal means kappa = -|K|
  std::mt19937_64 rng(97);
  for (int i = 0; i < 100; ++i) {
    Point a = random_domain_point(*k.domain, rng);
    Point b = random_domain_point(*k.domain, rng);
    CHECK(std::fabs(kappa(k, a, b) + std::abs(k.evaluate(a, b))) < 1e-13);
  }
}

TEST_CASE("boundary layer volume of a box") {
  BoxDomain square = make_box({1.0, 1.0});
  CHECK(boundary_layer_volume(square, 4.0) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(boundary_layer_volume(square, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  // large lambda: layer volume ~ perimeter / (2 lambda) * 2 = 4/lambda for the square
  double v = boundary_layer_volume(square, 1000.0);
  CHECK(std::fabs(v - 4.0 / 1000.0) < 0.01 * v);
}

TEST_CASE("kc identity for the zero field") {
  BoxDomain square = make_box({1.0, 1.0});
  SphereField u;
  u.quadrature = circle_uniform(3.0, 16);
  u.values.assign(16, cplx(0.0, 0.0));
  KcCheck chk = verify_kc_identity(square, 3.0, u, box_product(square.sides, 32));
  CHECK(chk.lhs == 0.0);
  CHECK(chk.rhs == 0.0);
}

TEST_CASE("kc identity for random fields") {
  std::mt19937_64 rng(101);
  BoxDomain square = make_box({1.0, 1.0});
  double lambda = 3.0;
  Quadrature sphere = circle_uniform(lambda, 24);
  Quadrature box_quad = box_product(square.sides, 48);
  for (int rep = 0; rep < 5; ++rep) {
    SphereField u;
    u.quadrature = sphere;
    for (int i = 0; i < sphere.size(); ++i)
      u.values.push_back(cplx(uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)));
    KcCheck chk = verify_kc_identity(square, lambda, u, box_quad);
    CHECK(chk.resolved);
    CHECK(chk.rel_err < 1e-6);
  }
}

TEST_CASE("kc identity flags under-resolved box quadratures") {
  BoxDomain square = make_box({1.0, 1.0});
  SphereField u;
  u.quadrature = circle_uniform(40.0, 8);
  u.values.assign(8, cplx(1.0, 0.0));
  KcCheck chk = verify_kc_identity(square, 40.0, u, box_product(square.sides, 8));
  CHECK_FALSE(chk.resolved);
}

TEST_CASE("kc identity on the vanishing two-node field") {
  // antipodal nodes at distance 2*pi where chi_hat vanishes: the kernel form
  // collapses and the box energy of f_u sits at lambda^2
  BoxDomain square = make_box({1.0, 1.0});
  double lambda = M_PI;
  SphereField u;
  u.quadrature = circle_uniform(lambda, 8); // nodes 0 and 4 are antipodal on the x axis
  u.values.assign(8, cplx(0.0, 0.0));
  u.values[0] = cplx(1.0, 0.0);
  u.values[4] = cplx(0.7, -0.3);
  KcCheck chk = verify_kc_identity(square, lambda, u, box_product(square.sides, 48));
  CHECK(std::fabs(chk.rhs) < 1e-12);
  CHECK(std::fabs(chk.lhs) < 1e-10);
}

TEST_CASE("fourth-moment kernel integral agrees across two quadrature routes") {
  // route 1: double sum over circle nodes; route 2: reduction to the
  // (separation, direction) integral, which decouples on the circle
  BoxDomain square = make_box({1.0, 1.0});
  double lambda = 8.0;
  Quadrature q = circle_uniform(lambda, 256);
  KahanSum route1;
  for (int a = 0; a < q.size(); ++a)
    for (int b = 0; b < q.size(); ++b) {
      Point diff = q.nodes[a] - q.nodes[b];
      double r2 = norm_sq(diff);
      route1.add(q.weights[a] * q.weights[b] * r2 * r2 * std::norm(chi_hat_box(square, diff)));
    }
  const int na = 800, np = 800;
  KahanSum route2;
  for (int ia = 0; ia < na; ++ia) {
    double alpha = M_PI * (ia + 0.5) / na;
    double s = 2.0 * lambda * std::sin(alpha / 2.0);
    KahanSum inner;
    for (int ip = 0; ip < np; ++ip) {
      double psi = 2.0 * M_PI * (ip + 0.5) / np;
      Point th{s * std::cos(psi), s * std::sin(psi)};
      inner.add(s * s * s * s * std::norm(chi_hat_box(square, th)));
    }
    route2.add(inner.value() / np);
  }
  double v1 = route1.value();
  double v2 = route2.value() / na;
  CHECK(std::fabs(v1 - v2) < 1e-3 * v1);
}

TEST_CASE("dn pipeline on the unit square") {
  BoxDomain square = make_box({1.0, 1.0});
  DnReport rep = dn_lower_bound(square, 5.0, 1.0, 128, 0);
  CHECK_FALSE(rep.degenerate);
  CHECK(rep.raw_bound > 0.5);
  CHECK(rep.nystrom_count >= 1); // kappa takes negative values
  CHECK(rep.nystrom_count >= static_cast<long long>(std::ceil(rep.raw_bound)));
  CHECK(rep.dn_lower == static_cast<long long>(std::ceil(rep.raw_bound)));

  // chord-measure numerator dominates r^2 inf |chi_hat| up to discretization
  double r = 1.0;
  KernelSpec k = build_dn_kernel(square, 5.0);
  auto mu = chord_measure(5.0, r, 2, 128);
  KahanSum num;
  for (const auto& a : mu.atoms) num.add(a.w * std::max(0.0 - kappa(k, a.xi, a.eta), 0.0));
  double inf_abs = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 512; ++i) {
    double ang = 2.0 * M_PI * i / 512;
    inf_abs = std::min(inf_abs, std::abs(chi_hat_box(square, Point{r * std::cos(ang), r * std::sin(ang)})));
  }
  CHECK(num.value() >= r * r * inf_abs - 1e-6);
}

TEST_CASE("theorem bound tracks the closed form across an r grid") {
  BoxDomain square = make_box({1.0, 1.0});
  std::vector<double> rs;
  for (int i = 0; i < 6; ++i) rs.push_back(1.0 + i);
  auto reports = dn_sweep(square, 8.0, rs, 96, 0);
  for (const auto& rep : reports) {
    CHECK(rep.raw_bound >= rep.fs_bound * 0.95 - 1e-9);
  }
}
