// Exercises the shared-library surface: opaque handles, error codes, JSON
// round-trips, and the config runner entry point.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "spectral_census.h"

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

} // namespace

TEST_CASE("kernel handles: create, eval, kappa, errors") {
  sc_kernel* k = nullptr;
  REQUIRE(sc_kernel_create("{\"name\":\"constant\",\"c\":-1.0}", &k) == SC_OK);
  REQUIRE(k != nullptr);
  CHECK(sc_kernel_dim(k) == 1);
  double xi = 0.3, eta = 0.9, re = 0.0, im = 1.0;
  CHECK(sc_kernel_eval(k, &xi, &eta, &re, &im) == SC_OK);
  CHECK(re == -1.0);
  CHECK(im == 0.0);
  double kap = 0.0;
  CHECK(sc_kernel_kappa(k, &xi, &eta, &kap) == SC_OK);
  CHECK(kap == doctest::Approx(-2.0).epsilon(1e-15));
  sc_kernel_destroy(k);

  sc_kernel* bad = nullptr;
  CHECK(sc_kernel_create("{\"name\":\"warp-drive\"}", &bad) == SC_ERR_USAGE);
  CHECK(bad == nullptr);
  CHECK(std::strlen(sc_last_error()) > 0);
  CHECK(sc_kernel_create("not json", &bad) == SC_ERR_USAGE);
}

TEST_CASE("measure handles and the bound report") {
  // symmetrized single pair under the constant kernel: c = 4, bound 3/4
  sc_kernel* k = nullptr;
  REQUIRE(sc_kernel_create("{\"name\":\"constant\",\"c\":-1.0}", &k) == SC_OK);
  double xi[] = {0.25};
  double eta[] = {0.75};
  double w[] = {1.0};
  sc_measure* mu = nullptr;
  REQUIRE(sc_measure_symmetrize(xi, eta, w, 1, 1, &mu) == SC_OK);
  CHECK(sc_measure_atom_count(mu) == 2);
  CHECK(sc_measure_mass(mu) == doctest::Approx(1.0).epsilon(1e-15));

  int admissible = 0;
  CHECK(sc_check_c2(k, mu, 0.0, &admissible) == SC_OK);
  CHECK(admissible == 1);

  sc_bound_report rep;
  REQUIRE(sc_theorem_bound(k, mu, 0.0, &rep) == SC_OK);
  CHECK(rep.c_t == doctest::Approx(4.0).epsilon(1e-13));
  CHECK(rep.raw_bound == doctest::Approx(0.75).epsilon(1e-13));
  CHECK(rep.integer_bound == 1);
  CHECK(rep.degenerate == 0);

  // JSON round-trip preserves atoms bit-exactly
  char* json = nullptr;
  REQUIRE(sc_measure_to_json(mu, &json) == SC_OK);
  sc_measure* back = nullptr;
  REQUIRE(sc_measure_from_json(json, &back) == SC_OK);
  CHECK(sc_measure_atom_count(back) == 2);
  CHECK(sc_measure_mass(back) == sc_measure_mass(mu));
  sc_string_free(json);
  sc_measure_destroy(back);
  sc_measure_destroy(mu);

  // inadmissible t: error code and message
  sc_measure* mu2 = nullptr;
  REQUIRE(sc_measure_symmetrize(xi, eta, w, 1, 1, &mu2) == SC_OK);
  CHECK(sc_theorem_bound(k, mu2, 0.5, &rep) == SC_ERR_USAGE);
  sc_measure_destroy(mu2);
  sc_kernel_destroy(k);
}

TEST_CASE("shift and chord measure constructors") {
  double pts[] = {0.0};
  double w[] = {1.0};
  double theta[] = {1.0};
  sc_measure* shifted = nullptr;
  REQUIRE(sc_measure_shift(pts, w, 1, 1, theta, &shifted) == SC_OK);
  CHECK(sc_measure_atom_count(shifted) == 2);
  CHECK(sc_measure_mass(shifted) == doctest::Approx(2.0).epsilon(1e-15));
  sc_measure_destroy(shifted);

  double zero[] = {0.0};
  sc_measure* bad = nullptr;
  CHECK(sc_measure_shift(pts, w, 1, 1, zero, &bad) == SC_ERR_USAGE);

  sc_measure* chord = nullptr;
  REQUIRE(sc_measure_chord(1.0, 1.0, 2, 16, &chord) == SC_OK);
  CHECK(sc_measure_mass(chord) == doctest::Approx(1.0).epsilon(1e-13));
  sc_measure_destroy(chord);
  CHECK(sc_measure_chord(1.0, 3.0, 2, 16, &chord) == SC_ERR_USAGE);
}

TEST_CASE("oracle counting through the C surface") {
  sc_kernel* k = nullptr;
  REQUIRE(sc_kernel_create("{\"name\":\"constant\",\"c\":-1.0}", &k) == SC_OK);
  sc_quadrature* q = nullptr;
  REQUIRE(sc_quadrature_create("{\"kind\":\"gauss-legendre-interval\",\"a\":0,\"b\":1,\"n\":16}",
                               &q) == SC_OK);
  REQUIRE(sc_quadrature_size(q) == 16);
  long long count = -1;
  int warning = 1;
  REQUIRE(sc_oracle_count(k, q, -0.5, -1.0, &count, &warning) == SC_OK);
  CHECK(count == 1);
  CHECK(warning == 0);

  std::vector<double> evs(16, 0.0);
  REQUIRE(sc_oracle_eigenvalues(k, q, evs.data()) == SC_OK);
  CHECK(evs.front() == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(std::fabs(evs.back()) < 1e-12);

  double hs = 0.0;
  CHECK(sc_trace_hs_bound(k, q, &hs) == SC_OK);
  CHECK(hs == doctest::Approx(1.0).epsilon(1e-13));
  sc_quadrature_destroy(q);
  sc_kernel_destroy(k);
}

TEST_CASE("dn helpers") {
  double sides[] = {1.0, 1.0};
  double theta[] = {2.0 * M_PI, 0.0};
  double re = 1.0, im = 1.0;
  REQUIRE(sc_chi_hat_box(sides, 2, theta, &re, &im) == SC_OK);
  CHECK(std::hypot(re, im) < 1e-15);
  double layer = 0.0;
  REQUIRE(sc_boundary_layer_volume(sides, 2, 4.0, &layer) == SC_OK);
  CHECK(layer == doctest::Approx(0.75).epsilon(1e-15));
  double fs = 0.0;
  REQUIRE(sc_fs_constant(sides, 2, 8.0, 2.0, 256, &fs) == SC_OK);
  CHECK(fs > 0.0);
  CHECK(sc_dn_gap_report(3.2, 1, 2, 1) == 7);

  char* json = nullptr;
  REQUIRE(sc_dn_lower_bound(sides, 2, 4.0, 1.0, 48, 0, &json) == SC_OK);
  CHECK(std::string(json).find("nystrom_count") != std::string::npos);
  sc_string_free(json);
}

TEST_CASE("convolution bounds through the C surface") {
  sc_kernel* mh = nullptr;
  REQUIRE(sc_kernel_create("{\"name\":\"mexican-hat\",\"d\":1}", &mh) == SC_OK);
  double bound = 0.0;
  int infinite = 0;
  REQUIRE(sc_convolution_bound_sup(mh, 0.0, 20.0, 60.0, 4001, &bound, &infinite) == SC_OK);
  CHECK(infinite == 1);

  double theta[] = {0.0};
  double pts[] = {0.0};
  double w[] = {1.0};
  REQUIRE(sc_convolution_bound_point(mh, theta, 0.0, pts, w, 1, &bound) == SC_OK);
  CHECK(bound == doctest::Approx(0.75).epsilon(1e-12));
  sc_kernel_destroy(mh);

  sc_kernel* constant = nullptr;
  REQUIRE(sc_kernel_create("{\"name\":\"constant\"}", &constant) == SC_OK);
  CHECK(sc_convolution_bound_sup(constant, 0.0, 20.0, 60.0, 101, &bound, &infinite) ==
        SC_ERR_USAGE);
  sc_kernel_destroy(constant);
}

TEST_CASE("greedy optimizer handle") {
  sc_kernel* mh = nullptr;
  REQUIRE(sc_kernel_create("{\"name\":\"mexican-hat\",\"d\":1}", &mh) == SC_OK);
  sc_measure* mu = nullptr;
  double c = 0.0;
  REQUIRE(sc_optimize_greedy(mh, 0.0, 12, 8, &mu, &c) == SC_OK);
  CHECK(c > 4.0); // beats any single atom of this kernel
  CHECK(sc_measure_atom_count(mu) > 0);
  sc_measure_destroy(mu);
  sc_kernel_destroy(mh);
}

TEST_CASE("config runner through the C surface") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "sc_capi_run";
  fs::remove_all(dir);
  fs::create_directories(dir);
  fs::path config = dir / "config.json";
  {
    std::ofstream f(config);
    f << "{\"command\":\"bound\",\"kernel\":{\"name\":\"constant\",\"c\":-1.0},"
         "\"measure\":[{\"xi\":[0.2],\"eta\":[0.8],\"w\":0.5},"
         "{\"xi\":[0.8],\"eta\":[0.2],\"w\":0.5}],\"t\":0.0,\"seed\":4}";
  }
  int exit_code = -1;
  REQUIRE(sc_run_config(config.string().c_str(), (dir / "out").string().c_str(), -1,
                        &exit_code) == SC_OK);
  CHECK(exit_code == 0);
  std::string report = slurp(dir / "out" / "report.json");
  CHECK(report.find("\"integer_bound\": 1") != std::string::npos);

  CHECK(sc_run_config((dir / "missing.json").string().c_str(), nullptr, -1, &exit_code) == SC_OK);
  CHECK(exit_code == 1);
  CHECK(std::strlen(sc_last_error()) > 0);
}
