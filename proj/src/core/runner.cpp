#include "core/runner.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "core/bounds.hpp"
#include "core/dn.hpp"
#include "core/kernel.hpp"
#include "core/measure.hpp"
#include "core/optimizer.hpp"
#include "core/oracle.hpp"
#include "core/prooftrace.hpp"
#include "core/quadrature.hpp"

namespace sc {

std::string format_double(double v) {
  char buf[64];
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

void dump_value(const nlohmann::json& j, std::string& out, int indent, int depth) {
  auto pad = [&](int d) { out.append(static_cast<size_t>(indent) * d, ' '); };
  switch (j.type()) {
    case nlohmann::json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        pad(depth + 1);
        out += '"';
        out += it.key();
        out += "\": ";
        dump_value(it.value(), out, indent, depth + 1);
        if (i + 1 < j.size()) out += ',';
        out += '\n';
      }
      pad(depth);
      out += '}';
      return;
    }
    case nlohmann::json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        pad(depth + 1);
        dump_value(j[i], out, indent, depth + 1);
        if (i + 1 < j.size()) out += ',';
        out += '\n';
      }
      pad(depth);
      out += ']';
      return;
    }
    case nlohmann::json::value_t::number_float: {
      double v = j.get<double>();
      if (std::isinf(v) || std::isnan(v)) {
        out += '"';
        out += std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
        out += '"';
      } else {
        out += format_double(v);
      }
      return;
    }
    default:
      out += j.dump(); // integers, bools, strings, null
      return;
  }
}

} // namespace

std::string dump_json_17(const nlohmann::json& j, int indent) {
  std::string out;
  dump_value(j, out, indent, 0);
  out += '\n';
  return out;
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) fail(errc::io, "cannot open '" + p.string() + "' for writing");
  f << content;
}

nlohmann::json bound_to_json(const BoundReport& b) {
  nlohmann::json j;
  j["t"] = b.t;
  j["numerator"] = b.numerator;
  j["denominator"] = b.denominator;
  j["degenerate"] = b.degenerate;
  if (b.degenerate) {
    j["c_t"] = "inf";
    j["raw_bound"] = "inf";
  } else {
    j["c_t"] = b.c_t;
    j["raw_bound"] = b.raw_bound;
    j["integer_bound"] = b.integer_bound;
    j["n_mu"] = b.n_mu;
  }
  j["measure_label"] = b.measure_label;
  return j;
}

std::string bound_csv(std::string label, const BoundReport& b) {
  for (char& c : label)
    if (c == ',') c = ';';
  std::string row = "label,t,numerator,denominator,c_t,raw_bound,integer_bound\n";
  row += label + "," + format_double(b.t) + "," + format_double(b.numerator) + "," +
         format_double(b.denominator) + "," + format_double(b.c_t) + "," +
         format_double(b.raw_bound) + "," + std::to_string(b.integer_bound) + "\n";
  return row;
}

SymmetricAtomicMeasure resolve_measure(const nlohmann::json& config, const KernelSpec& kernel,
                                       double t, nlohmann::json* echo) {
  if (!config.contains("measure")) fail(errc::usage, "config: missing 'measure'");
  const nlohmann::json& m = config["measure"];
  if (m.is_string() && m.get<std::string>() == "auto") {
    int pool_n = config.value("optimize", nlohmann::json::object()).value("pool", 32);
    int max_atoms = config.value("optimize", nlohmann::json::object()).value("max_atoms", 16);
    GreedyResult g = greedy_atoms(kernel, t, grid_pool(kernel, pool_n), max_atoms);
    if (echo) (*echo)["measure_source"] = "auto";
    return g.measure;
  }
  if (m.is_array()) {
    SymmetricAtomicMeasure mu = measure_from_json(m);
    mu.label = "config-atoms";
    if (echo) (*echo)["measure_source"] = "atoms";
    return mu;
  }
  if (m.is_object() && m.value("type", "") == "shift") {
    AtomicMeasure base;
    for (const auto& rec : m.at("mu"))
      base.atoms.push_back(
          {Point(rec.at("x").get<std::vector<double>>()), rec.at("w").get<double>()});
    Point theta(m.at("theta").get<std::vector<double>>());
    if (echo) (*echo)["measure_source"] = "shift";
    return shift_measure(base, theta);
  }
  if (m.is_object() && m.value("type", "") == "chord") {
    if (echo) (*echo)["measure_source"] = "chord";
    return chord_measure(m.value("lambda", 1.0), m.value("r", 1.0), m.value("d", 2),
                         m.value("n", 64));
  }
  fail(errc::usage, "config: 'measure' must be \"auto\", an atom array, or a shift/chord record");
}

std::vector<Quadrature> oracle_grids(const nlohmann::json& config, const KernelSpec& kernel) {
  if (!kernel.domain) fail(errc::usage, "verify: kernel has no domain metadata for the oracle");
  std::vector<int> ns =
      config.value("oracle", nlohmann::json::object())
          .value("grids", std::vector<int>{32, 64, 128});
  std::vector<Quadrature> grids;
  grids.reserve(ns.size());
  for (int n : ns) grids.push_back(quadrature_for_domain(*kernel.domain, n));
  return grids;
}

nlohmann::json run_bound(const nlohmann::json& config, const KernelSpec& kernel, double t,
                         const std::filesystem::path& outdir) {
  nlohmann::json rep;
  SymmetricAtomicMeasure mu = resolve_measure(config, kernel, t, &rep);
  BoundReport b = theorem_bound(kernel, mu, t);
  rep["bound"] = bound_to_json(b);
  rep["measure"] = {{"atoms", mu.atoms.size()}, {"mass", mu.mass()}, {"label", mu.label}};
  write_file(outdir / "bound.csv", bound_csv(kernel.label, b));
  return rep;
}

nlohmann::json run_verify(const nlohmann::json& config, const KernelSpec& kernel, double t,
                          const std::filesystem::path& outdir, int* exit_code) {
  nlohmann::json rep = run_bound(config, kernel, t, outdir);
  nlohmann::json oracle_cfg = config.value("oracle", nlohmann::json::object());
  double guard = oracle_cfg.value("guard", -1.0);
  RefinementResult rr = refine_and_count(kernel, oracle_grids(config, kernel), t, guard);
  nlohmann::json grids = nlohmann::json::array();
  for (const auto& sr : rr.per_grid)
    grids.push_back({{"n", sr.grid_size},
                     {"count", sr.count_below_t},
                     {"guard", sr.guard},
                     {"boundary_warning", sr.boundary_warning}});
  rep["oracle"] = {{"grids", grids}, {"converged", rr.converged}};
  if (oracle_cfg.value("dump_eigenvalues", false)) {
    std::string csv;
    for (double ev : rr.per_grid.back().eigenvalues) csv += format_double(ev) + "\n";
    write_file(outdir / "eigenvalues.csv", csv);
  }
  bool violation = false;
  if (!rep["bound"]["degenerate"].get<bool>() && rr.converged) {
    long long bound = rep["bound"]["integer_bound"].get<long long>();
    violation = bound > rr.per_grid.back().count_below_t;
  }
  rep["violation"] = violation;
  if (violation) *exit_code = 2;
  return rep;
}

nlohmann::json run_proof_trace(const nlohmann::json& config, const KernelSpec& kernel, double t,
                               std::uint64_t seed) {
  nlohmann::json proof = config.value("proof", nlohmann::json::object());
  int n = proof.value("n", 2);
  int n_configs = proof.value("configs", 25);
  int samples = proof.value("samples", 10000);
  SymmetricAtomicMeasure mu = resolve_measure(config, kernel, t, nullptr);

  std::mt19937_64 rng(seed);
  nlohmann::json checks = nlohmann::json::array();
  auto add = [&](const std::string& name, double value, double target, bool pass) {
    checks.push_back(
        {{"check", name}, {"n", n}, {"t", t}, {"value", value}, {"target", target}, {"pass", pass}});
  };
  for (int c = 0; c < n_configs; ++c) {
    Configuration cfg = sample_configuration(mu, kernel, t, n, rng, /*distinct_entries=*/true);
    ProofMatrices pm = assemble(kernel, cfg, t);
    long long lhs = inertia_count(pm.k2n, t, 0.0);
    long long rhs = inertia_count(pm.k_tilde, 0.0, 0.0);
    add("inertia-invariance", static_cast<double>(lhs), static_cast<double>(rhs), lhs == rhs);
    std::vector<double> evs = eigenvalues_hermitian(pm.k_diag);
    long long near = 0;
    for (double ev : evs)
      if (std::fabs(ev + 1.0) <= 1e-9) ++near;
    add("diag-eigenvalue-minus-one", static_cast<double>(near), static_cast<double>(n), near >= n);
    double frob = pm.k_off.frobenius_sq();
    double closed = hs_off_closed_form(kernel, cfg, t);
    add("off-diag-hs-identity", frob, closed, std::fabs(frob - closed) <= 1e-11 * (1.0 + closed));
    double floor_bound = n - frob;
    add("count-vs-off-norm", static_cast<double>(lhs), floor_bound,
        static_cast<double>(lhs) >= floor_bound - 1e-9);
  }
  McAverageResult mc = mc_average_check(kernel, mu, t, n, samples, seed);
  bool mc_pass = std::fabs(mc.empirical_mean - mc.target) <= 3.0 * mc.stderr_mean + 1e-12;
  checks.push_back({{"check", "mc-average"},
                    {"n", n},
                    {"t", t},
                    {"value", mc.empirical_mean},
                    {"target", mc.target},
                    {"stderr", mc.stderr_mean},
                    {"samples", mc.samples},
                    {"pass", mc_pass}});
  nlohmann::json rep;
  rep["checks"] = checks;
  bool all = true;
  for (const auto& ch : checks) all = all && ch["pass"].get<bool>();
  rep["all_pass"] = all;
  return rep;
}

nlohmann::json run_dn_gap(const nlohmann::json& config, const std::filesystem::path& outdir) {
  nlohmann::json dn = config.value("dn", nlohmann::json::object());
  if (!dn.contains("box")) fail(errc::usage, "dn-gap: missing dn.box");
  BoxDomain box = make_box(dn["box"].get<std::vector<double>>());
  double lambda = dn.value("lambda", 4.0);
  int n_sphere = dn.value("n_sphere", 192);
  long long n_dirichlet = dn.value("n_D", 0);
  std::vector<double> rs;
  if (dn.contains("r") && dn["r"].is_array()) {
    rs = dn["r"].get<std::vector<double>>();
  } else if (dn.contains("r") && dn["r"].is_number()) {
    rs.push_back(dn["r"].get<double>());
  } else {
    nlohmann::json sweep = dn.value("r_sweep", nlohmann::json::object());
    double from = sweep.value("from", 0.25 * lambda);
    double to = sweep.value("to", 1.5 * lambda);
    int count = sweep.value("count", 8);
    for (int i = 0; i < count; ++i)
      rs.push_back(count == 1 ? from : from + (to - from) * i / (count - 1));
  }
  std::vector<DnReport> reports = dn_sweep(box, lambda, rs, n_sphere, n_dirichlet);

  std::string csv = "lambda,r,c_t,raw_bound,fs_bound,nystrom_count,dn_lower\n";
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    j["box"] = r.box;
    j["lambda"] = r.lambda;
    j["r"] = r.r;
    j["c_t"] = r.degenerate ? nlohmann::json("inf") : nlohmann::json(r.c_t);
    j["raw_bound"] = r.degenerate ? nlohmann::json("inf") : nlohmann::json(r.raw_bound);
    j["fs_bound"] = r.fs_bound;
    j["nystrom_count"] = r.nystrom_count;
    j["dn_lower"] = r.dn_lower;
    j["count_boundary_warning"] = r.count_boundary_warning;
    arr.push_back(j);
    csv += format_double(r.lambda) + "," + format_double(r.r) + "," + format_double(r.c_t) + "," +
           format_double(r.raw_bound) + "," + format_double(r.fs_bound) + "," +
           std::to_string(r.nystrom_count) + "," + std::to_string(r.dn_lower) + "\n";
  }
  write_file(outdir / "sweep.csv", csv);
  nlohmann::json rep;
  rep["reports"] = arr;
  return rep;
}

nlohmann::json run_optimize(const nlohmann::json& config, const KernelSpec& kernel, double t,
                            const std::filesystem::path& outdir) {
  nlohmann::json opt = config.value("optimize", nlohmann::json::object());
  int pool_n = opt.value("pool", 32);
  int max_atoms = opt.value("max_atoms", 16);
  int reweight_iters = opt.value("reweight_iters", 0);

  GreedyResult g = greedy_atoms(kernel, t, grid_pool(kernel, pool_n), max_atoms);
  std::string csv = "step,c_t,atom_added\n";
  for (const auto& s : g.trace)
    csv += std::to_string(s.step) + "," + format_double(s.c) + "," + std::to_string(s.pool_index) +
           "\n";
  SymmetricAtomicMeasure mu = g.measure;
  std::vector<double> sweep_trace;
  if (reweight_iters > 0) {
    mu = reweight_fixed_support(kernel, t, mu, reweight_iters, &sweep_trace);
    for (size_t i = 0; i < sweep_trace.size(); ++i)
      csv += std::to_string(g.trace.size() + i) + "," + format_double(sweep_trace[i]) + ",-1\n";
  }
  write_file(outdir / "trace.csv", csv);
  write_file(outdir / "measure.json", dump_json_17(measure_to_json(mu)));

  BoundReport b = theorem_bound(kernel, mu, t);
  write_file(outdir / "bound.csv", bound_csv(kernel.label, b));
  nlohmann::json rep;
  rep["greedy_c"] = g.c;
  rep["final_c"] = b.c_t;
  rep["steps"] = g.trace.size();
  rep["bound"] = bound_to_json(b);
  rep["measure"] = {{"atoms", mu.atoms.size()}, {"mass", mu.mass()}, {"label", mu.label}};
  return rep;
}

nlohmann::json run_convolution(const nlohmann::json& config, const KernelSpec& kernel, double t) {
  if (!kernel.profile)
    fail(errc::usage, "convolution: kernel is not a difference kernel (no profile)");
  nlohmann::json conv = config.value("convolution", nlohmann::json::object());
  nlohmann::json rep;
  rep["approximate"] = true; // tail limsup is an annulus sup, not certified
  double search_radius = conv.value("search_radius", 50.0);
  double tail_radius = conv.value("tail_radius", 50.0);
  int grid_n = conv.value("grid_n", 20001);
  ConvolutionSupBound sup = convolution_bound_sup(*kernel.profile, t, search_radius, tail_radius,
                                                  grid_n);
  rep["sup"] = {{"sup_h", sup.sup_h},
                {"tail_sup", sup.tail_sup},
                {"infinite", sup.infinite},
                {"bound", sup.infinite ? nlohmann::json("inf") : nlohmann::json(sup.bound)},
                {"search_radius", search_radius},
                {"tail_radius", tail_radius},
                {"grid_n", grid_n}};
  if (conv.contains("theta")) {
    Point theta(conv["theta"].get<std::vector<double>>());
    AtomicMeasure mu_tilde;
    if (conv.contains("mu")) {
      for (const auto& rec : conv["mu"])
        mu_tilde.atoms.push_back(
            {Point(rec.at("x").get<std::vector<double>>()), rec.at("w").get<double>()});
    } else {
      Point origin;
      origin.coords.assign(static_cast<size_t>(kernel.profile->dim), 0.0);
      mu_tilde.atoms.push_back({origin, 1.0});
    }
    rep["point"] = {{"theta", conv["theta"]},
                    {"bound", convolution_bound_point(*kernel.profile, theta, t, mu_tilde)}};
  }
  return rep;
}

} // namespace

RunOutcome run_config(const nlohmann::json& config, const std::string& output_override,
                      long long seed_override) {
  RunOutcome out;
  try {
    if (!config.is_object() || !config.contains("command"))
      fail(errc::usage, "config: expected an object with a 'command' field");
    std::string command = config["command"].get<std::string>();
    std::uint64_t seed = seed_override >= 0 ? static_cast<std::uint64_t>(seed_override)
                                            : config.value("seed", 1ull);
    std::string outdir_str =
        !output_override.empty() ? output_override : config.value("output", ".");
    std::filesystem::path outdir(outdir_str);
    std::filesystem::create_directories(outdir);

    double t = config.value("t", 0.0);
    nlohmann::json rep;
    rep["command"] = command;
    rep["seed"] = seed;
    rep["t"] = t;

    if (command == "dn-gap") {
      rep.update(run_dn_gap(config, outdir));
    } else {
      if (!config.contains("kernel")) fail(errc::usage, "config: missing 'kernel' descriptor");
      KernelSpec kernel = kernel_from_descriptor(config["kernel"]);
      rep["kernel"] = kernel.label;
      if (command == "bound") {
        rep.update(run_bound(config, kernel, t, outdir));
      } else if (command == "verify") {
        int code = 0;
        rep.update(run_verify(config, kernel, t, outdir, &code));
        out.exit_code = code;
      } else if (command == "proof-trace") {
        rep.update(run_proof_trace(config, kernel, t, seed));
      } else if (command == "optimize") {
        rep.update(run_optimize(config, kernel, t, outdir));
      } else if (command == "convolution") {
        rep.update(run_convolution(config, kernel, t));
      } else {
        fail(errc::usage, "config: unknown command '" + command + "'");
      }
    }

    std::filesystem::path report_path = outdir / "report.json";
    write_file(report_path, dump_json_17(rep));
    out.report_path = report_path.string();
  } catch (const Error& e) {
    out.exit_code = 1;
    out.message = e.what();
  } catch (const nlohmann::json::exception& e) {
    out.exit_code = 1;
    out.message = std::string("config: ") + e.what();
  }
  return out;
}

RunOutcome run_config_file(const std::string& path, const std::string& output_override,
                           long long seed_override) {
  std::ifstream f(path);
  if (!f) {
    RunOutcome out;
    out.exit_code = 1;
    out.message = "cannot open config '" + path + "'";
    return out;
  }
  nlohmann::json config;
  try {
    config = nlohmann::json::parse(f);
  } catch (const nlohmann::json::exception& e) {
    RunOutcome out;
    out.exit_code = 1;
    out.message = std::string("config parse error: ") + e.what();
    return out;
  }
  return run_config(config, output_override, seed_override);
}

} // namespace sc
