#include "spectral_census.h"

#include <cstring>
#include <string>

#include "core/bounds.hpp"
#include "core/dn.hpp"
#include "core/kernel.hpp"
#include "core/measure.hpp"
#include "core/optimizer.hpp"
#include "core/oracle.hpp"
#include "core/quadrature.hpp"
#include "core/runner.hpp"

struct sc_kernel {
  sc::KernelSpec spec;
};
struct sc_measure {
  sc::SymmetricAtomicMeasure mu;
};
struct sc_quadrature {
  sc::Quadrature q;
};

namespace {

thread_local std::string g_last_error;

sc_status to_status(const sc::Error& e) {
  switch (e.code()) {
    case sc::errc::usage: return SC_ERR_USAGE;
    case sc::errc::admissibility: return SC_ERR_ADMISSIBILITY;
    case sc::errc::invalid_kernel: return SC_ERR_INVALID_KERNEL;
    case sc::errc::not_applicable: return SC_ERR_NOT_APPLICABLE;
    case sc::errc::io: return SC_ERR_IO;
    case sc::errc::internal: return SC_ERR_INTERNAL;
  }
  return SC_ERR_INTERNAL;
}

template <class Fn>
sc_status guarded(Fn&& fn) {
  try {
    fn();
    return SC_OK;
  } catch (const sc::Error& e) {
    g_last_error = e.what();
    return to_status(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SC_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sc::Point point_from(const double* coords, int dim) {
  return sc::Point(std::vector<double>(coords, coords + dim));
}

sc::AtomicMeasure atomic_from(const double* points, const double* w, size_t n, int dim) {
  sc::AtomicMeasure mu;
  mu.atoms.reserve(n);
  for (size_t i = 0; i < n; ++i)
    mu.atoms.push_back({point_from(points + i * static_cast<size_t>(dim), dim), w[i]});
  return mu;
}

void fill_report(const sc::BoundReport& b, sc_bound_report* out) {
  out->t = b.t;
  out->numerator = b.numerator;
  out->denominator = b.denominator;
  out->c_t = b.c_t;
  out->raw_bound = b.raw_bound;
  out->integer_bound = b.integer_bound;
  out->n_mu = b.n_mu;
  out->degenerate = b.degenerate ? 1 : 0;
}

} // namespace

extern "C" {

const char* sc_last_error(void) { return g_last_error.c_str(); }

void sc_string_free(char* s) { delete[] s; }

sc_status sc_kernel_create(const char* descriptor_json, sc_kernel** out) {
  return guarded([&] {
    if (!descriptor_json || !out) sc::fail(sc::errc::usage, "sc_kernel_create: null argument");
    auto desc = nlohmann::json::parse(descriptor_json, nullptr, false);
    if (desc.is_discarded()) sc::fail(sc::errc::usage, "sc_kernel_create: invalid JSON");
    *out = new sc_kernel{sc::kernel_from_descriptor(desc)};
  });
}

void sc_kernel_destroy(sc_kernel* k) { delete k; }

int sc_kernel_dim(const sc_kernel* k) { return k ? k->spec.dim : 0; }

sc_status sc_kernel_eval(const sc_kernel* k, const double* xi, const double* eta, double* out_re,
                         double* out_im) {
  return guarded([&] {
    if (!k || !xi || !eta) sc::fail(sc::errc::usage, "sc_kernel_eval: null argument");
    sc::cplx v = sc::eval_kernel(k->spec, point_from(xi, k->spec.dim), point_from(eta, k->spec.dim));
    if (out_re) *out_re = v.real();
    if (out_im) *out_im = v.imag();
  });
}

sc_status sc_kernel_kappa(const sc_kernel* k, const double* xi, const double* eta, double* out) {
  return guarded([&] {
    if (!k || !xi || !eta || !out) sc::fail(sc::errc::usage, "sc_kernel_kappa: null argument");
    *out = sc::kappa(k->spec, point_from(xi, k->spec.dim), point_from(eta, k->spec.dim));
  });
}

sc_status sc_catalog_json(char** out_json) {
  return guarded([&] {
    if (!out_json) sc::fail(sc::errc::usage, "sc_catalog_json: null argument");
    *out_json = dup_string(sc::dump_json_17(sc::catalog_json()));
  });
}

sc_status sc_measure_symmetrize(const double* xi, const double* eta, const double* w, size_t n,
                                int dim, sc_measure** out) {
  return guarded([&] {
    if (!xi || !eta || !w || !out || dim < 1)
      sc::fail(sc::errc::usage, "sc_measure_symmetrize: null argument or bad dim");
    std::vector<std::pair<std::pair<sc::Point, sc::Point>, double>> pairs;
    pairs.reserve(n);
    for (size_t i = 0; i < n; ++i)
      pairs.push_back({{point_from(xi + i * static_cast<size_t>(dim), dim),
                        point_from(eta + i * static_cast<size_t>(dim), dim)},
                       w[i]});
    *out = new sc_measure{sc::make_symmetric(pairs)};
  });
}

sc_status sc_measure_shift(const double* points, const double* w, size_t n, int dim,
                           const double* theta, sc_measure** out) {
  return guarded([&] {
    if (!points || !w || !theta || !out || dim < 1)
      sc::fail(sc::errc::usage, "sc_measure_shift: null argument or bad dim");
    *out = new sc_measure{
        sc::shift_measure(atomic_from(points, w, n, dim), point_from(theta, dim))};
  });
}

sc_status sc_measure_chord(double lambda, double r, int d, int n, sc_measure** out) {
  return guarded([&] {
    if (!out) sc::fail(sc::errc::usage, "sc_measure_chord: null output");
    *out = new sc_measure{sc::chord_measure(lambda, r, d, n)};
  });
}

sc_status sc_measure_from_json(const char* json, sc_measure** out) {
  return guarded([&] {
    if (!json || !out) sc::fail(sc::errc::usage, "sc_measure_from_json: null argument");
    auto j = nlohmann::json::parse(json, nullptr, false);
    if (j.is_discarded()) sc::fail(sc::errc::usage, "sc_measure_from_json: invalid JSON");
    *out = new sc_measure{sc::measure_from_json(j)};
  });
}

sc_status sc_measure_to_json(const sc_measure* mu, char** out_json) {
  return guarded([&] {
    if (!mu || !out_json) sc::fail(sc::errc::usage, "sc_measure_to_json: null argument");
    *out_json = dup_string(sc::dump_json_17(sc::measure_to_json(mu->mu)));
  });
}

size_t sc_measure_atom_count(const sc_measure* mu) { return mu ? mu->mu.atoms.size() : 0; }

double sc_measure_mass(const sc_measure* mu) { return mu ? mu->mu.mass() : 0.0; }

void sc_measure_destroy(sc_measure* mu) { delete mu; }

sc_status sc_quadrature_create(const char* descriptor_json, sc_quadrature** out) {
  return guarded([&] {
    if (!descriptor_json || !out) sc::fail(sc::errc::usage, "sc_quadrature_create: null argument");
    auto desc = nlohmann::json::parse(descriptor_json, nullptr, false);
    if (desc.is_discarded() || !desc.contains("kind"))
      sc::fail(sc::errc::usage, "sc_quadrature_create: expected JSON with a 'kind' field");
    *out = new sc_quadrature{sc::make_quadrature(desc["kind"].get<std::string>(), desc)};
  });
}

size_t sc_quadrature_size(const sc_quadrature* q) {
  return q ? static_cast<size_t>(q->q.size()) : 0;
}

void sc_quadrature_destroy(sc_quadrature* q) { delete q; }

sc_status sc_check_c2(const sc_kernel* k, const sc_measure* mu, double t, int* out) {
  return guarded([&] {
    if (!k || !mu || !out) sc::fail(sc::errc::usage, "sc_check_c2: null argument");
    *out = sc::check_c2(mu->mu, k->spec, t) ? 1 : 0;
  });
}

sc_status sc_theorem_bound(const sc_kernel* k, const sc_measure* mu, double t,
                           sc_bound_report* out) {
  return guarded([&] {
    if (!k || !mu || !out) sc::fail(sc::errc::usage, "sc_theorem_bound: null argument");
    fill_report(sc::theorem_bound(k->spec, mu->mu, t), out);
  });
}

sc_status sc_trace_hs_bound(const sc_kernel* k, const sc_quadrature* q, double* out) {
  return guarded([&] {
    if (!k || !q || !out) sc::fail(sc::errc::usage, "sc_trace_hs_bound: null argument");
    *out = sc::trace_hs_bound(k->spec, q->q);
  });
}

sc_status sc_convolution_bound_point(const sc_kernel* k, const double* theta, double t,
                                     const double* points, const double* w, size_t n,
                                     double* out) {
  return guarded([&] {
    if (!k || !theta || !points || !w || !out)
      sc::fail(sc::errc::usage, "sc_convolution_bound_point: null argument");
    if (!k->spec.profile)
      sc::fail(sc::errc::usage, "sc_convolution_bound_point: kernel is not a difference kernel");
    int dim = k->spec.profile->dim;
    *out = sc::convolution_bound_point(*k->spec.profile, point_from(theta, dim), t,
                                       atomic_from(points, w, n, dim));
  });
}

sc_status sc_convolution_bound_sup(const sc_kernel* k, double t, double search_radius,
                                   double tail_radius, int grid_n, double* out_bound,
                                   int* out_infinite) {
  return guarded([&] {
    if (!k || !out_bound) sc::fail(sc::errc::usage, "sc_convolution_bound_sup: null argument");
    if (!k->spec.profile)
      sc::fail(sc::errc::usage, "sc_convolution_bound_sup: kernel is not a difference kernel");
    sc::ConvolutionSupBound b =
        sc::convolution_bound_sup(*k->spec.profile, t, search_radius, tail_radius, grid_n);
    *out_bound = b.bound;
    if (out_infinite) *out_infinite = b.infinite ? 1 : 0;
  });
}

sc_status sc_fs_constant(const double* sides, int d, double lambda, double r, int n_dirs,
                         double* out) {
  return guarded([&] {
    if (!sides || !out) sc::fail(sc::errc::usage, "sc_fs_constant: null argument");
    *out = sc::fs_constant(sc::make_box(std::vector<double>(sides, sides + d)), lambda, r, n_dirs);
  });
}

long long sc_dn_gap_report(double n_K, long long dim_ker, long long n_D, int c3_asserted) {
  return sc::dn_gap_report(n_K, dim_ker, n_D, c3_asserted != 0);
}

sc_status sc_oracle_count(const sc_kernel* k, const sc_quadrature* q, double t, double guard,
                          long long* out_count, int* out_warning) {
  return guarded([&] {
    if (!k || !q || !out_count) sc::fail(sc::errc::usage, "sc_oracle_count: null argument");
    sc::SpectralResult res = sc::count_below(k->spec, q->q, t, guard);
    *out_count = res.count_below_t;
    if (out_warning) *out_warning = res.boundary_warning ? 1 : 0;
  });
}

sc_status sc_oracle_eigenvalues(const sc_kernel* k, const sc_quadrature* q, double* out) {
  return guarded([&] {
    if (!k || !q || !out) sc::fail(sc::errc::usage, "sc_oracle_eigenvalues: null argument");
    std::vector<double> evs = sc::eigenvalues_hermitian(sc::nystrom_matrix(k->spec, q->q));
    std::memcpy(out, evs.data(), evs.size() * sizeof(double));
  });
}

sc_status sc_chi_hat_box(const double* sides, int d, const double* theta, double* out_re,
                         double* out_im) {
  return guarded([&] {
    if (!sides || !theta) sc::fail(sc::errc::usage, "sc_chi_hat_box: null argument");
    sc::cplx v = sc::chi_hat_box(sc::make_box(std::vector<double>(sides, sides + d)),
                                 point_from(theta, d));
    if (out_re) *out_re = v.real();
    if (out_im) *out_im = v.imag();
  });
}

sc_status sc_boundary_layer_volume(const double* sides, int d, double lambda, double* out) {
  return guarded([&] {
    if (!sides || !out) sc::fail(sc::errc::usage, "sc_boundary_layer_volume: null argument");
    *out = sc::boundary_layer_volume(sc::make_box(std::vector<double>(sides, sides + d)), lambda);
  });
}

sc_status sc_dn_lower_bound(const double* sides, int d, double lambda, double r, int n_sphere,
                            long long n_dirichlet, char** out_json) {
  return guarded([&] {
    if (!sides || !out_json) sc::fail(sc::errc::usage, "sc_dn_lower_bound: null argument");
    sc::DnReport rep = sc::dn_lower_bound(sc::make_box(std::vector<double>(sides, sides + d)),
                                          lambda, r, n_sphere, n_dirichlet);
    nlohmann::json j;
    j["box"] = rep.box;
    j["lambda"] = rep.lambda;
    j["r"] = rep.r;
    j["c_t"] = rep.degenerate ? nlohmann::json("inf") : nlohmann::json(rep.c_t);
    j["raw_bound"] = rep.degenerate ? nlohmann::json("inf") : nlohmann::json(rep.raw_bound);
    j["fs_bound"] = rep.fs_bound;
    j["nystrom_count"] = rep.nystrom_count;
    j["dn_lower"] = rep.dn_lower;
    *out_json = dup_string(sc::dump_json_17(j));
  });
}

sc_status sc_optimize_greedy(const sc_kernel* k, double t, int n_grid, int max_atoms,
                             sc_measure** out_mu, double* out_c) {
  return guarded([&] {
    if (!k || !out_mu) sc::fail(sc::errc::usage, "sc_optimize_greedy: null argument");
    sc::GreedyResult g = sc::greedy_atoms(k->spec, t, sc::grid_pool(k->spec, n_grid), max_atoms);
    *out_mu = new sc_measure{std::move(g.measure)};
    if (out_c) *out_c = g.c;
  });
}

sc_status sc_run_config(const char* config_path, const char* output_dir, long long seed_override,
                        int* out_exit_code) {
  return guarded([&] {
    if (!config_path || !out_exit_code) sc::fail(sc::errc::usage, "sc_run_config: null argument");
    sc::RunOutcome outcome =
        sc::run_config_file(config_path, output_dir ? output_dir : "", seed_override);
    *out_exit_code = outcome.exit_code;
    if (!outcome.message.empty()) g_last_error = outcome.message;
  });
}

} // extern "C"
