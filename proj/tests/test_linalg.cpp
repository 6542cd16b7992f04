#include <doctest.h>

#include <cmath>
#include <random>

#include "core/linalg.hpp"

using namespace sc;

namespace {

HermitianMatrix random_hermitian(int n, std::mt19937_64& rng, bool complex_entries) {
  HermitianMatrix m = HermitianMatrix::zeros(n);
  for (int i = 0; i < n; ++i) {
    m.at(i, i) = cplx(uniform(rng, -2.0, 2.0), 0.0);
    for (int j = i + 1; j < n; ++j) {
      cplx v(uniform(rng, -1.0, 1.0), complex_entries ? uniform(rng, -1.0, 1.0) : 0.0);
      m.at(i, j) = v;
      m.at(j, i) = std::conj(v);
    }
  }
  return m;
}

} // namespace

TEST_CASE("jacobi solves a diagonal matrix") {
  HermitianMatrix m = HermitianMatrix::zeros(3);
  m.at(0, 0) = 3.0;
  m.at(1, 1) = 1.0;
  m.at(2, 2) = 2.0;
  auto evs = eigenvalues_hermitian(m);
  REQUIRE(evs.size() == 3);
  CHECK(evs[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(evs[1] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(evs[2] == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("complex 2x2 with modulus-5 off-diagonal") {
  HermitianMatrix m = HermitianMatrix::zeros(2);
  m.at(0, 1) = cplx(3.0, 4.0);
  m.at(1, 0) = cplx(3.0, -4.0);
  auto evs = eigenvalues_hermitian(m);
  CHECK(evs[0] == doctest::Approx(-5.0).epsilon(1e-13));
  CHECK(evs[1] == doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("trace and Hilbert-Schmidt identities on random matrices") {
  std::mt19937_64 rng(42);
  for (int rep = 0; rep < 10; ++rep) {
    bool cpx = rep % 2 == 0;
    HermitianMatrix m = random_hermitian(20, rng, cpx);
    auto evs = eigenvalues_hermitian(m);
    double tr = 0.0;
    for (int i = 0; i < m.n; ++i) tr += m.at(i, i).real();
    double sum = 0.0, sum_sq = 0.0;
    for (double ev : evs) {
      sum += ev;
      sum_sq += ev * ev;
    }
    CHECK(std::fabs(sum - tr) < 1e-10 * (1.0 + std::fabs(tr)));
    CHECK(std::fabs(sum_sq - m.frobenius_sq()) < 1e-9 * (1.0 + m.frobenius_sq()));
  }
}

TEST_CASE("non-Hermitian input is rejected") {
  HermitianMatrix m = HermitianMatrix::zeros(2);
  m.at(0, 1) = 1.0;
  m.at(1, 0) = 0.5;
  CHECK_THROWS_AS(eigenvalues_hermitian(m), Error);
}

TEST_CASE("eigenvalue count matches LDL inertia on random matrices") {
  std::mt19937_64 rng(7);
  for (int rep = 0; rep < 100; ++rep) {
    HermitianMatrix m = random_hermitian(20, rng, rep % 2 == 0);
    double t = uniform(rng, -2.0, 2.0);
    auto evs = eigenvalues_hermitian(m);
    long long by_eig = 0;
    for (double ev : evs)
      if (ev < t) ++by_eig;
    HermitianMatrix shifted = m;
    for (int i = 0; i < m.n; ++i) shifted.at(i, i) -= t;
    Inertia in = ldl_inertia(shifted);
    CHECK(by_eig == in.negative);
    CHECK(in.negative + in.zero + in.positive == m.n);
  }
}

TEST_CASE("ldl inertia handles zero diagonals via 2x2 pivots") {
  // [[0, 1], [1, 0]] has eigenvalues -1 and 1
  HermitianMatrix m = HermitianMatrix::zeros(2);
  m.at(0, 1) = 1.0;
  m.at(1, 0) = 1.0;
  Inertia in = ldl_inertia(m);
  CHECK(in.negative == 1);
  CHECK(in.positive == 1);
  CHECK(in.zero == 0);
}
