#include "core/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace sc {

double HermitianMatrix::max_hermiticity_residual() const {
  double r = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      r = std::max(r, std::abs(at(i, j) - std::conj(at(j, i))));
  return r;
}

double HermitianMatrix::frobenius_sq() const {
  KahanSum s;
  for (const cplx& z : a) s.add(std::norm(z));
  return s.value();
}

bool HermitianMatrix::is_real(double tol) const {
  for (const cplx& z : a)
    if (std::abs(z.imag()) > tol) return false;
  return true;
}

std::vector<double> jacobi_eigenvalues(std::vector<double> a, int n) {
  auto idx = [n](int i, int j) { return static_cast<size_t>(i) * n + j; };
  std::vector<double> d(n), b(n), z(n, 0.0);
  for (int i = 0; i < n; ++i) b[i] = d[i] = a[idx(i, i)];

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) off += std::fabs(a[idx(p, q)]);
    if (off == 0.0) {
      std::sort(d.begin(), d.end());
      return d;
    }
    double thresh = (sweep < 3) ? 0.2 * off / (static_cast<double>(n) * n) : 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a[idx(p, q)];
        double g = 100.0 * std::fabs(apq);
        // Skip rotations that can no longer change the diagonal.
        if (sweep > 3 && std::fabs(d[p]) + g == std::fabs(d[p]) &&
            std::fabs(d[q]) + g == std::fabs(d[q])) {
          a[idx(p, q)] = 0.0;
          continue;
        }
        if (std::fabs(apq) <= thresh) continue;
        double h = d[q] - d[p];
        double t;
        if (std::fabs(h) + g == std::fabs(h)) {
          t = apq / h;
        } else {
          double theta = 0.5 * h / apq;
          t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
          if (theta < 0.0) t = -t;
        }
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = t * c;
        double tau = s / (1.0 + c);
        double hh = t * apq;
        z[p] -= hh;
        z[q] += hh;
        d[p] -= hh;
        d[q] += hh;
        a[idx(p, q)] = 0.0;
        auto rotate = [&](int i, int j, int k, int l) {
          double gg = a[idx(i, j)];
          double hh2 = a[idx(k, l)];
          a[idx(i, j)] = gg - s * (hh2 + gg * tau);
          a[idx(k, l)] = hh2 + s * (gg - hh2 * tau);
        };
        for (int j = 0; j < p; ++j) rotate(j, p, j, q);
        for (int j = p + 1; j < q; ++j) rotate(p, j, j, q);
        for (int j = q + 1; j < n; ++j) rotate(p, j, q, j);
      }
    }
    for (int i = 0; i < n; ++i) {
      b[i] += z[i];
      d[i] = b[i];
      z[i] = 0.0;
    }
  }
  fail(errc::internal, "jacobi_eigenvalues: no convergence within sweep limit");
}

std::vector<double> eigenvalues_hermitian(const HermitianMatrix& m, double herm_tol) {
  if (m.n == 0) return {};
  double resid = m.max_hermiticity_residual();
  if (resid > herm_tol)
    fail(errc::usage, "eigenvalues_hermitian: matrix is not Hermitian (residual " +
                          std::to_string(resid) + ")");
  const int n = m.n;
  if (m.is_real(0.0)) {
    std::vector<double> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // Symmetrize exactly so the Jacobi sweep sees a_ij == a_ji.
        double v = 0.5 * (m.at(i, j).real() + m.at(j, i).real());
        a[static_cast<size_t>(i) * n + j] = v;
      }
    return jacobi_eigenvalues(std::move(a), n);
  }
  // Real embedding [[A, -B], [B, A]] of A + iB; eigenvalues come out doubled.
  const int N = 2 * n;
  std::vector<double> a(static_cast<size_t>(N) * N, 0.0);
  auto put = [&](int i, int j, double v) { a[static_cast<size_t>(i) * N + j] = v; };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx z = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
      put(i, j, z.real());
      put(n + i, n + j, z.real());
      put(i, n + j, -z.imag());
      put(n + i, j, z.imag());
    }
  std::vector<double> doubled = jacobi_eigenvalues(std::move(a), N);
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = doubled[2 * k]; // halve every multiplicity
  return out;
}

Inertia ldl_inertia(HermitianMatrix m, double zero_tol) {
  const int n = m.n;
  Inertia in;
  if (n == 0) return in;
  const double alpha = (1.0 + std::sqrt(17.0)) / 8.0;

  auto swap_rc = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < n; ++k) std::swap(m.at(i, k), m.at(j, k));
    for (int k = 0; k < n; ++k) std::swap(m.at(k, i), m.at(k, j));
  };
  auto classify = [&](double x) {
    if (x > zero_tol)
      ++in.positive;
    else if (x < -zero_tol)
      ++in.negative;
    else
      ++in.zero;
  };

  int k = 0;
  while (k < n) {
    if (k == n - 1) {
      classify(m.at(k, k).real());
      break;
    }
    double akk = std::abs(m.at(k, k));
    double lambda = 0.0;
    int r = k;
    for (int i = k + 1; i < n; ++i) {
      double v = std::abs(m.at(i, k));
      if (v > lambda) {
        lambda = v;
        r = i;
      }
    }
    bool one_by_one = true;
    if (akk == 0.0 && lambda == 0.0) {
      classify(0.0); // structurally zero column
      ++k;
      continue;
    }
    if (akk < alpha * lambda) {
      double sigma = 0.0;
      for (int i = k; i < n; ++i) {
        if (i == r) continue;
        sigma = std::max(sigma, std::abs(m.at(i, r)));
      }
      if (akk * sigma >= alpha * lambda * lambda) {
        one_by_one = true;
      } else if (std::abs(m.at(r, r)) >= alpha * sigma) {
        swap_rc(k, r);
        one_by_one = true;
      } else {
        swap_rc(k + 1, r);
        one_by_one = false;
      }
    }
    if (one_by_one) {
      double d = m.at(k, k).real();
      classify(d);
      if (d != 0.0) {
        for (int i = k + 1; i < n; ++i) {
          cplx lik = m.at(i, k) / d;
          for (int j = k + 1; j <= i; ++j) {
            cplx upd = m.at(i, j) - lik * std::conj(m.at(j, k));
            m.at(i, j) = upd;
            m.at(j, i) = std::conj(upd);
          }
        }
      }
      ++k;
    } else {
      // 2x2 pivot E = [[a, conj(b)], [b, c]]; Bunch-Kaufman guarantees det < 0,
      // but classify via the closed-form eigenvalues anyway.
      double pa = m.at(k, k).real();
      double pc = m.at(k + 1, k + 1).real();
      cplx pb = m.at(k + 1, k);
      double disc = std::sqrt((pa - pc) * (pa - pc) + 4.0 * std::norm(pb));
      classify(0.5 * (pa + pc) + 0.5 * disc);
      classify(0.5 * (pa + pc) - 0.5 * disc);
      double det = pa * pc - std::norm(pb);
      if (det != 0.0) {
        for (int i = k + 2; i < n; ++i) {
          cplx u = m.at(i, k);
          cplx v = m.at(i, k + 1);
          // [w1 w2] = [u v] * inv(E)
          cplx w1 = (u * pc - v * pb) / det;
          cplx w2 = (v * pa - u * std::conj(pb)) / det;
          for (int j = k + 2; j <= i; ++j) {
            cplx upd = m.at(i, j) - w1 * std::conj(m.at(j, k)) - w2 * std::conj(m.at(j, k + 1));
            m.at(i, j) = upd;
            m.at(j, i) = std::conj(upd);
          }
        }
      }
      k += 2;
    }
  }
  return in;
}

} // namespace sc
