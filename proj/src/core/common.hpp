#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sc {

using cplx = std::complex<double>;

enum class errc {
  usage = 1,          // bad arguments, malformed descriptors, dimension mismatch
  admissibility = 2,  // condition (C2)-style failures: nothing below t
  invalid_kernel = 3, // kernel violates Hermitian requirements
  not_applicable = 4, // operation has no meaning for this input (e.g. empty M_-)
  io = 5,             // file / JSON problems
  internal = 6,
};

class Error : public std::runtime_error {
public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& msg) { throw Error(code, msg); }

// Compensated (Kahan) accumulator.  The big double sums in the bound engine
// must not depend on summation order beyond ~1e-12, so every multi-term
// reduction goes through one of these.
class KahanSum {
public:
  void add(double x) {
    double y = x - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Deterministic uniform doubles from a raw 64-bit stream.  Distributions from
// <random> are implementation-defined; tests and the Monte-Carlo harness need
// the exact same stream everywhere.
template <class Engine>
double uniform01(Engine& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

template <class Engine>
double uniform(Engine& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

} // namespace sc
