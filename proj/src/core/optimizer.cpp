#include "core/optimizer.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <map>

namespace sc {

namespace {

// Incremental state for greedy scoring: marginal atoms plus the running
// numerator / denominator of c_t.
struct ScoreState {
  std::vector<PointAtom> marg;
  double num = 0.0;
  double den = 0.0;

  double c() const { return den > 0.0 ? num * num / den : 0.0; }
};

// c_t after adding the symmetrized unit-weight pair (p, q); O(|marg|).
double score_candidate(const KernelSpec& k, const ScoreState& st, const Point& p, const Point& q,
                       double gain) {
  bool diag = same_point(p, q);
  double wp = diag ? 1.0 : 0.5;
  double num = st.num + gain;
  double den = st.den;
  for (const auto& m : st.marg) {
    den += 2.0 * m.w * wp * std::norm(k.evaluate(m.x, p));
    if (!diag) den += 2.0 * m.w * wp * std::norm(k.evaluate(m.x, q));
  }
  if (diag) {
    den += std::norm(k.evaluate(p, p));
  } else {
    den += 0.25 * (std::norm(k.evaluate(p, p)) + std::norm(k.evaluate(q, q))) +
           0.5 * std::norm(k.evaluate(p, q));
  }
  return den > 0.0 ? num * num / den : std::numeric_limits<double>::infinity();
}

} // namespace

GreedyResult greedy_atoms(const KernelSpec& k, double t,
                          const std::vector<std::pair<Point, Point>>& pool, int max_atoms) {
  if (max_atoms < 1) fail(errc::usage, "greedy_atoms: max_atoms must be >= 1");
  struct Candidate {
    Point p, q;
    double gain; // contribution of the symmetrized unit atom to the numerator
    int index;
  };
  std::vector<Candidate> admissible;
  for (size_t i = 0; i < pool.size(); ++i) {
    double kap = kappa(k, pool[i].first, pool[i].second);
    if (kap < t)
      admissible.push_back({pool[i].first, pool[i].second, t - kap, static_cast<int>(i)});
  }
  if (admissible.empty())
    fail(errc::admissibility, "greedy_atoms: no admissible candidate pairs (inf kappa >= t)");

  GreedyResult res;
  std::vector<std::pair<std::pair<Point, Point>, double>> chosen;
  ScoreState st;
  for (int step = 0; step < max_atoms; ++step) {
    int best = -1;
    double best_c = st.c() + 1e-9;
    for (size_t ci = 0; ci < admissible.size(); ++ci) {
      double c = score_candidate(k, st, admissible[ci].p, admissible[ci].q, admissible[ci].gain);
      if (c > best_c) {
        best_c = c;
        best = static_cast<int>(ci);
      }
    }
    if (best < 0) break;
    const Candidate& cand = admissible[static_cast<size_t>(best)];
    chosen.push_back({{cand.p, cand.q}, 1.0});
    // update state exactly as the scorer assumed
    bool diag = same_point(cand.p, cand.q);
    double wp = diag ? 1.0 : 0.5;
    st.num += cand.gain;
    for (const auto& m : st.marg) {
      st.den += 2.0 * m.w * wp * std::norm(k.evaluate(m.x, cand.p));
      if (!diag) st.den += 2.0 * m.w * wp * std::norm(k.evaluate(m.x, cand.q));
    }
    if (diag) {
      st.den += std::norm(k.evaluate(cand.p, cand.p));
      st.marg.push_back({cand.p, 1.0});
    } else {
      st.den += 0.25 * (std::norm(k.evaluate(cand.p, cand.p)) +
                        std::norm(k.evaluate(cand.q, cand.q))) +
                0.5 * std::norm(k.evaluate(cand.p, cand.q));
      st.marg.push_back({cand.p, 0.5});
      st.marg.push_back({cand.q, 0.5});
    }
    res.trace.push_back({step, st.c(), cand.index});
  }
  res.measure = make_symmetric(chosen);
  res.measure.label = "greedy(" + std::to_string(chosen.size()) + " atoms)";
  // recompute through the reference path; the incremental sums only steer the search
  res.c = c_t(k, res.measure, t).c;
  return res;
}

namespace {

std::string point_key(const Point& a, const Point& b) {
  std::string key(sizeof(double) * (a.coords.size() + b.coords.size()), '\0');
  std::memcpy(key.data(), a.coords.data(), sizeof(double) * a.coords.size());
  std::memcpy(key.data() + sizeof(double) * a.coords.size(), b.coords.data(),
              sizeof(double) * b.coords.size());
  return key;
}

} // namespace

SymmetricAtomicMeasure reweight_fixed_support(const KernelSpec& k, double t,
                                              const SymmetricAtomicMeasure& mu0, int iters,
                                              std::vector<double>* sweep_trace) {
  // Group atoms into symmetric units: a diagonal atom, or an off-diagonal
  // atom together with its swap partner.  The group weight is the total mass
  // of the unit.
  struct Group {
    Point p, q;
    bool diag;
    double w;
    double gain; // (t - kappa)_+ per unit of group weight
  };
  std::vector<Group> groups;
  {
    std::map<std::string, size_t> open; // unmatched (eta,xi) keys -> group index
    for (const auto& a : mu0.atoms) {
      if (same_point(a.xi, a.eta)) {
        groups.push_back({a.xi, a.eta, true, a.w, 0.0});
        continue;
      }
      auto it = open.find(point_key(a.xi, a.eta));
      if (it != open.end()) {
        groups[it->second].w += a.w;
        open.erase(it);
      } else {
        groups.push_back({a.xi, a.eta, false, a.w, 0.0});
        open[point_key(a.eta, a.xi)] = groups.size() - 1;
      }
    }
    if (!open.empty()) fail(errc::usage, "reweight_fixed_support: measure is not symmetric");
  }
  const size_t G = groups.size();
  for (auto& g : groups) g.gain = std::max(t - kappa(k, g.p, g.q), 0.0);

  // marginal footprint of one unit of group g: diagonal -> {p:1}; pair -> {p:1/2, q:1/2}
  auto cross = [&](const Group& a, const Group& b) {
    auto term = [&](const Point& x, double wx, const Point& y, double wy) {
      return wx * wy * std::norm(k.evaluate(x, y));
    };
    double ap = a.diag ? 1.0 : 0.5;
    double bp = b.diag ? 1.0 : 0.5;
    double s = term(a.p, ap, b.p, bp);
    if (!b.diag) s += term(a.p, ap, b.q, bp);
    if (!a.diag) {
      s += term(a.q, ap, b.p, bp);
      if (!b.diag) s += term(a.q, ap, b.q, bp);
    }
    return s;
  };
  std::vector<std::vector<double>> d(G, std::vector<double>(G));
  for (size_t i = 0; i < G; ++i)
    for (size_t j = i; j < G; ++j) d[i][j] = d[j][i] = cross(groups[i], groups[j]);

  auto c_of = [&](const std::vector<double>& w) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < G; ++i) {
      num += w[i] * groups[i].gain;
      for (size_t j = 0; j < G; ++j) den += w[i] * w[j] * d[i][j];
    }
    return den > 0.0 ? num * num / den : 0.0;
  };

  std::vector<double> w(G);
  for (size_t i = 0; i < G; ++i) w[i] = groups[i].w;
  double total0 = 0.0;
  for (double x : w) total0 += x;

  for (int it = 0; it < iters; ++it) {
    for (size_t g = 0; g < G; ++g) {
      double old = w[g];
      // numerator/denominator with w[g] set to zero
      double n0 = 0.0, b = 0.0, d0 = 0.0;
      for (size_t i = 0; i < G; ++i) {
        if (i == g) continue;
        n0 += w[i] * groups[i].gain;
        b += w[i] * d[i][g];
        for (size_t j = 0; j < G; ++j)
          if (j != g) d0 += w[i] * w[j] * d[i][j];
      }
      double ng = groups[g].gain;
      double dg = d[g][g];
      // c(s) = (n0 + ng s)^2 / (d0 + 2 b s + dg s^2); the derivative vanishes
      // where ng*D(s) = N(s)*(b + dg s), i.e. at s* below.
      std::vector<double> candidates{0.0, old};
      double root_den = ng * b - n0 * dg;
      if (root_den != 0.0) {
        double s_star = (n0 * b - ng * d0) / root_den;
        if (s_star > 0.0 && std::isfinite(s_star)) candidates.push_back(s_star);
      }
      candidates.push_back(1e6 * std::max(total0, 1.0)); // near-single-atom limit
      double best_c = -1.0, best_s = old;
      for (double s : candidates) {
        std::vector<double> trial = w;
        trial[g] = s;
        double c = c_of(trial);
        if (c > best_c + 0.0) {
          best_c = c;
          best_s = s;
        }
      }
      // accept only non-decreasing moves
      std::vector<double> trial = w;
      trial[g] = best_s;
      if (c_of(trial) >= c_of(w)) w[g] = best_s;
    }
    if (sweep_trace) sweep_trace->push_back(c_of(w));
  }

  std::vector<std::pair<std::pair<Point, Point>, double>> out_pairs;
  for (size_t g = 0; g < G; ++g)
    if (w[g] > 0.0) out_pairs.push_back({{groups[g].p, groups[g].q}, w[g]});
  if (out_pairs.empty())
    fail(errc::admissibility, "reweight_fixed_support: all weights driven to zero");
  SymmetricAtomicMeasure out = make_symmetric(out_pairs);
  out.label = mu0.label.empty() ? "reweighted" : mu0.label + "+reweighted";
  return out;
}

std::vector<std::pair<Point, Point>> grid_pool(const KernelSpec& k, int n_points) {
  if (!k.domain) fail(errc::usage, "grid_pool: kernel has no domain metadata");
  std::vector<Point> pts;
  if (const auto* iv = std::get_if<IntervalDomain>(&*k.domain)) {
    for (int i = 0; i < n_points; ++i)
      pts.push_back(Point{iv->a + (iv->b - iv->a) * (i + 0.5) / n_points});
  } else if (const auto* bx = std::get_if<BoxSamplingDomain>(&*k.domain)) {
    int d = static_cast<int>(bx->lo.size());
    int per_axis = std::max(2, static_cast<int>(std::round(std::pow(n_points, 1.0 / d))));
    std::vector<int> idx(static_cast<size_t>(d), 0);
    for (;;) {
      Point p;
      p.coords.resize(static_cast<size_t>(d));
      for (int j = 0; j < d; ++j)
        p.coords[static_cast<size_t>(j)] =
            bx->lo[static_cast<size_t>(j)] +
            (bx->hi[static_cast<size_t>(j)] - bx->lo[static_cast<size_t>(j)]) *
                (idx[static_cast<size_t>(j)] + 0.5) / per_axis;
      pts.push_back(std::move(p));
      int j = 0;
      while (j < d && ++idx[static_cast<size_t>(j)] == per_axis) idx[static_cast<size_t>(j++)] = 0;
      if (j == d) break;
    }
  } else {
    const auto& sp = std::get<SphereDomain>(*k.domain);
    if (sp.d == 2) {
      for (int i = 0; i < n_points; ++i) {
        double ang = 2.0 * M_PI * i / n_points;
        pts.push_back(Point{sp.lambda * std::cos(ang), sp.lambda * std::sin(ang)});
      }
    } else {
      int per = std::max(2, static_cast<int>(std::round(std::sqrt(n_points))));
      Quadrature q = sphere_latlong(sp.lambda, per, per);
      pts = q.nodes;
    }
  }
  std::vector<std::pair<Point, Point>> pool;
  pool.reserve(pts.size() * pts.size());
  for (const auto& p : pts)
    for (const auto& q : pts) pool.push_back({p, q});
  return pool;
}

} // namespace sc
