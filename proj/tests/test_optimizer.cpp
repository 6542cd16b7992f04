#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "core/optimizer.hpp"

using namespace sc;

TEST_CASE("greedy with a single admissible pair returns it") {
  KernelSpec mh = builtin_kernel("mexican-hat", {{"d", 1}});
  std::vector<std::pair<Point, Point>> pool{{Point{0.0}, Point{1.0}}};
  GreedyResult g = greedy_atoms(mh, 0.0, pool, 4);
  CHECK(!g.measure.empty());
  double single = c_t(mh, make_symmetric({{{Point{0.0}, Point{1.0}}, 1.0}}), 0.0).c;
  CHECK(g.c == doctest::Approx(single).epsilon(1e-12));
}

TEST_CASE("constant kernels are flat: c = 4 regardless of the selection") {
  KernelSpec constant = builtin_kernel("constant", {{"c", -1.0}});
  GreedyResult g = greedy_atoms(constant, 0.0, grid_pool(constant, 8), 6);
  CHECK(g.c == doctest::Approx(4.0).epsilon(1e-11));
}

TEST_CASE("greedy beats the best single atom on the mexican hat") {
  KernelSpec mh = builtin_kernel("mexican-hat", {{"d", 1}});
  auto pool = grid_pool(mh, 16);
  // exhaustive single-atom baseline
  double best_single = 0.0;
  for (const auto& [p, q] : pool) {
    if (!(kappa(mh, p, q) < 0.0)) continue;
    best_single = std::max(best_single, c_t(mh, make_symmetric({{{p, q}, 1.0}}), 0.0).c);
  }
  GreedyResult g = greedy_atoms(mh, 0.0, pool, 16);
  CHECK(g.c > best_single + 1e-6);
  // trace is non-decreasing
  for (size_t i = 1; i < g.trace.size(); ++i) CHECK(g.trace[i].c >= g.trace[i - 1].c - 1e-12);
}

TEST_CASE("greedy result ignores pool ordering") {
  KernelSpec mh = builtin_kernel("mexican-hat", {{"d", 1}});
  auto pool = grid_pool(mh, 10);
  GreedyResult a = greedy_atoms(mh, 0.0, pool, 8);
  std::mt19937_64 rng(5);
  auto shuffled = pool;
  for (size_t i = shuffled.size(); i > 1; --i)
    std::swap(shuffled[i - 1], shuffled[static_cast<size_t>(uniform01(rng) * i)]);
  GreedyResult b = greedy_atoms(mh, 0.0, shuffled, 8);
  CHECK(a.c == doctest::Approx(b.c).epsilon(1e-9));
}

TEST_CASE("empty admissible pool raises an admissibility error") {
  KernelSpec positive = builtin_kernel("constant", {{"c", 1.0}});
  CHECK_THROWS_AS(greedy_atoms(positive, 0.0, grid_pool(positive, 4), 4), Error);
}

TEST_CASE("reweight leaves an optimal single atom unchanged") {
  KernelSpec mh = builtin_kernel("mexican-hat", {{"d", 1}});
  auto mu = make_symmetric({{{Point{0.0}, Point{0.0}}, 1.0}});
  double before = c_t(mh, mu, 0.0).c;
  auto after = reweight_fixed_support(mh, 0.0, mu, 20);
  CHECK(c_t(mh, after, 0.0).c >= before - 1e-12);
  CHECK(std::fabs(c_t(mh, after, 0.0).c - before) < 1e-9);
}

TEST_CASE("reweight starves atoms that only inflate the denominator") {
  // second group has kappa > t: zero numerator gain, positive denominator
  KernelSpec mh = builtin_kernel("mexican-hat", {{"d", 1}});
  double t = -1.5; // kappa = -1 - |h|; pairs with |h| < 0.5 are useless
  Point good_a{0.0}, good_b{0.0};         // |h(0)| = 1
  Point bad_a{-4.0}, bad_b{4.0};          // h(8) ~ 0: kappa ~ -1 > t
  REQUIRE(kappa(mh, good_a, good_b) < t);
  REQUIRE(kappa(mh, bad_a, bad_b) > t);
  auto mu = make_symmetric({{{good_a, good_b}, 1.0}, {{bad_a, bad_b}, 1.0}});
  double before = c_t(mh, mu, t).c;
  auto after = reweight_fixed_support(mh, t, mu, 10);
  double after_c = c_t(mh, after, t).c;
  CHECK(after_c > before);
  // the useless group is gone or negligible
  double bad_weight = 0.0;
  for (const auto& a : after.atoms)
    if (std::fabs(a.xi[0]) > 3.0) bad_weight += a.w;
  CHECK(bad_weight < 1e-9 * after.mass());
}

TEST_CASE("reweight ascent is monotone across sweeps") {
  KernelSpec mh = builtin_kernel("mexican-hat", {{"d", 1}});
  GreedyResult g = greedy_atoms(mh, 0.0, grid_pool(mh, 12), 10);
  std::vector<double> trace;
  auto tuned = reweight_fixed_support(mh, 0.0, g.measure, 25, &trace);
  REQUIRE(trace.size() == 25);
  for (size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] >= trace[i - 1] - 1e-12);
  CHECK(c_t(mh, tuned, 0.0).c >= g.c - 1e-12);
}
