#pragma once

#include <string>
#include <utility>
#include <vector>

#include "core/common.hpp"
#include "core/kernel.hpp"

#include <json.hpp>

namespace sc {

struct PairAtom {
  Point xi;
  Point eta;
  double w = 0.0;
};

struct PointAtom {
  Point x;
  double w = 0.0;
};

// Marginal / one-coordinate measure: finite weighted atoms on M.  Atoms need
// not be distinct points; coincident atoms just add in every sum.
struct AtomicMeasure {
  std::vector<PointAtom> atoms;

  double mass() const;
};

// Finite symmetric measure on M x M: for every off-diagonal atom ((xi,eta),w)
// the swapped atom ((eta,xi),w) is present too.  Immutable after construction.
struct SymmetricAtomicMeasure {
  std::vector<PairAtom> atoms;
  std::string label;

  double mass() const;
  bool empty() const { return atoms.empty(); }
};

// Symmetrizing constructor: each off-diagonal input pair ((p,q),w) becomes
// ((p,q),w/2) + ((q,p),w/2); diagonal pairs pass through.  Mass is preserved.
SymmetricAtomicMeasure make_symmetric(const std::vector<std::pair<std::pair<Point, Point>, double>>& pairs);

// First-coordinate marginal; same total mass.
AtomicMeasure marginal(const SymmetricAtomicMeasure& mu);

// mu_theta: every atom (x, w) of the probability measure mu_tilde contributes
// ((x, x+theta), w) and ((x+theta, x), w).  Total mass 2.
SymmetricAtomicMeasure shift_measure(const AtomicMeasure& mu_tilde, const Point& theta);

// Quadrature discretization of the symmetric measure supported on pairs of
// sphere points at distance r, with uniform marginal.  d in {2,3}; total mass 1.
// For d=2, n is the number of circle nodes; for d=3 the outer grid is n x n
// and each chord circle gets n nodes.
SymmetricAtomicMeasure chord_measure(double lambda, double r, int d, int n);

// Condition check: sum of w*(t - kappa)_+ over atoms is strictly positive.
bool check_c2(const SymmetricAtomicMeasure& mu, const KernelSpec& k, double t);

// JSON round-trip format: array of {"xi": [...], "eta": [...], "w": ...}.
nlohmann::json measure_to_json(const SymmetricAtomicMeasure& mu);
SymmetricAtomicMeasure measure_from_json(const nlohmann::json& j);

} // namespace sc
