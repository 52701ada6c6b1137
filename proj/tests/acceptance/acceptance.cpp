// Acceptance run: one PASS/FAIL line per criterion. Every comparison is exact
// equality of rational data; there is no numerical tolerance anywhere.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "symflat/cli.hpp"
#include "symflat/cohomology.hpp"
#include "symflat/cone.hpp"
#include "symflat/connection.hpp"
#include "symflat/dsl.hpp"
#include "symflat/random.hpp"
#include "symflat/tty.hpp"
#include "symflat/twist.hpp"

using namespace symflat;

namespace {

constexpr int kTolerance = 0;

// Criterion 1
constexpr int kStasheffScalarTuples = 200;
constexpr int kStasheffMatrixTuples = 50;
constexpr int kStasheffMaxDeg = 3;
// Criterion 2
constexpr int kSquareZeroElements = 100;
// Criterion 3
constexpr int kFlatnessConnections = 120;
// Criteria 4-6, 10
constexpr int kTruncation = 5;
constexpr int kTruncationCheck = 6;
const std::vector<int> kMargins = {2, 3};
constexpr int kGaugeTruncation = 4;
constexpr int kGaugesPerConnection = 2;
// Criterion 7
constexpr int kChainTrials = 100;
// Criterion 8
constexpr int kClosedSamplesPerPosition = 10;
// Criterion 11
constexpr int kRoundTripForms = 200;

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& body) {
  auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (!o.pass) ++failures;
  std::printf("criterion %2d  %s  %s: %s (tol=%d, %.1fs)\n", id, o.pass ? "PASS" : "FAIL", title, o.detail.c_str(),
              kTolerance, secs);
  std::fflush(stdout);
}

std::string join(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

struct Phi0 {
  std::vector<Rational> entries;
  int ker;
  int coker;
  const char* name;
};

const std::vector<Phi0> kTable = {
    {{0, 0, 0, 0}, 2, 2, "0"},
    {{1, 0, 0, 0}, 1, 1, "diag(1,0)"},
    {{1, 0, 0, 2}, 0, 0, "diag(1,2)"},
    {{0, 1, 0, 0}, 1, 1, "[[0,1],[0,0]]"},
};

const std::vector<Phi0> kInvertible = {
    {{1, 0, 0, 2}, 0, 0, "diag(1,2)"},
    {{1, 1, 0, 1}, 0, 0, "[[1,1],[0,1]]"},
    {{0, 1, 1, 0}, 0, 0, "[[0,1],[1,0]]"},
    {{2, 1, 1, 1}, 0, 0, "[[2,1],[1,1]]"},
};

Connection canonical(int n, const Phi0& p) { return generate_flat(n, 2, p.entries, identity_gauge(n, 2)); }

std::vector<int> expected_dims(int n, const Phi0& p) {
  std::vector<int> d(static_cast<std::size_t>(2 * n + 2), 0);
  d[0] = p.ker;
  d[1] = p.coker;
  return d;
}

// Random invertible constant matrix: a product of unit triangular factors and
// a nonzero diagonal.
Gauge random_constant_gauge(Rng& rng, int n, int r) {
  std::vector<Rational> lower(static_cast<std::size_t>(r * r), 0), upper = lower;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      auto k = static_cast<std::size_t>(i * r + j);
      if (i == j) {
        lower[k] = 1;
        upper[k] = rng.uniform(1, 3) * (rng.chance(50) ? 1 : -1);
      } else if (i > j) {
        lower[k] = rng.uniform(-2, 2);
      } else {
        upper[k] = rng.uniform(-2, 2);
      }
    }
  return compose(constant_gauge(n, r, lower), constant_gauge(n, r, upper));
}

std::vector<Rational> random_phi0(Rng& rng, int r) {
  std::vector<Rational> phi;
  for (int i = 0; i < r * r; ++i) phi.push_back(rng.uniform(-2, 2));
  return phi;
}

// Flat connections over n ∈ {1,2}, r ∈ {1,2,3} in identity, constant,
// unipotent and mixed frames.
std::vector<Connection> flat_family(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Connection> out;
  for (int n = 1; n <= 2; ++n)
    for (int r = 1; r <= 3; ++r) {
      auto phi = random_phi0(rng, r);
      out.push_back(generate_flat(n, r, phi, identity_gauge(n, r)));
      out.push_back(generate_flat(n, r, random_phi0(rng, r), random_constant_gauge(rng, n, r)));
      out.push_back(generate_flat(n, r, random_phi0(rng, r), random_unipotent_gauge(rng, n, r, 1)));
      out.push_back(generate_flat(n, r, random_phi0(rng, r),
                                  compose(random_constant_gauge(rng, n, r), random_unipotent_gauge(rng, n, r, 1)),
                                  LambdaChoice::symmetric));
    }
  return out;
}

Outcome criterion_stasheff() {
  Rng rng(101);
  int tuples = 0, bad = 0;
  std::string where;
  auto run = [&](int n, int rank, FiberKind kind, int count) {
    for (int k = 1; k <= 4; ++k)
      for (int t = 0; t < count; ++t) {
        std::vector<PrimElement> in;
        for (int i = 0; i < k; ++i)
          in.push_back(random_prim_element(rng, n, rank, rng.uniform(0, 2 * n + 1), kStasheffMaxDeg, kind));
        ++tuples;
        if (!check_stasheff(in).is_zero()) {
          ++bad;
          if (where.empty()) where = " first failure n=" + std::to_string(n) + " k=" + std::to_string(k);
        }
      }
  };
  for (int n = 1; n <= 3; ++n) {
    run(n, 1, FiberKind::scalar, kStasheffScalarTuples);
    run(n, 2, FiberKind::matrix, kStasheffMatrixTuples);
  }
  return {bad == 0, std::to_string(tuples) + " tuples, k=1..4, n=1..3, " + std::to_string(kStasheffScalarTuples) +
                        " scalar + " + std::to_string(kStasheffMatrixTuples) + " matrix r=2 per (n,k), " +
                        std::to_string(bad) + " nonzero residuals" + where};
}

Outcome criterion_square_zero() {
  auto family = flat_family(202);
  int bad = 0, elements = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto rep = check_square_zero(family[i], kSquareZeroElements, 2000 + i);
    elements += rep.trials;
    if (!rep.flat || rep.witness || rep.trials < kSquareZeroElements) ++bad;
  }
  const std::vector<std::string> nonflat = {
      R"({"n": 1, "rank": 1, "A": [["x1^2*dy1"]]})",
      R"({"n": 2, "rank": 2, "A": [["x2*dy1", "dx2"], ["0", "x1*dy2"]]})",
  };
  int witnesses = 0;
  for (const auto& doc : nonflat) {
    auto rep = check_square_zero(cli::parse_connection(doc), kSquareZeroElements, 77);
    if (!rep.flat && rep.witness && !rep.witness->residual.is_zero()) ++witnesses;
  }
  const bool pass = bad == 0 && family.size() >= 20 && witnesses == static_cast<int>(nonflat.size());
  return {pass, std::to_string(family.size()) + " flat connections (n=1,2; r=1,2,3), " + std::to_string(elements) +
                    " elements, " + std::to_string(bad) + " with nonzero residual; " + std::to_string(witnesses) +
                    "/" + std::to_string(nonflat.size()) + " non-flat connections with witness"};
}

Outcome criterion_flatness_equivalence() {
  Rng rng(303);
  int agree = 0, flat = 0, nonflat = 0, n1_flat = 0, n1_nonflat = 0, closed_form_mismatch = 0;
  for (int i = 0; i < kFlatnessConnections; ++i) {
    const int n = 1 + i % 3;
    const int r = 1 + (i / 3) % 2;
    Connection c = i % 2 == 0 ? random_connection(rng, n, r, 2)
                              : generate_flat(n, r, random_phi0(rng, r), random_unipotent_gauge(rng, n, r, 1));
    FlatnessReport f = analyze_flatness(c);
    PrimElement m = m1_prime_of_A(c);
    const bool lhs = m.is_zero();
    const bool rhs = f.F0.is_zero() && f.dAPhi.is_zero();
    if (lhs == rhs) ++agree;
    if (!(m == m1_prime_of_A_closed_form(c))) ++closed_form_mismatch;
    (rhs ? flat : nonflat) += 1;
    if (n == 1) (rhs ? n1_flat : n1_nonflat) += 1;
  }
  const bool pass = agree == kFlatnessConnections && closed_form_mismatch == 0 && flat > 0 && nonflat > 0 &&
                    n1_flat > 0 && n1_nonflat > 0;
  return {pass, std::to_string(agree) + "/" + std::to_string(kFlatnessConnections) + " agree (" +
                    std::to_string(flat) + " flat, " + std::to_string(nonflat) + " non-flat; n=1: " +
                    std::to_string(n1_flat) + " flat, " + std::to_string(n1_nonflat) + " non-flat), " +
                    std::to_string(closed_form_mismatch) + " closed-form mismatches"};
}

struct TableRow {
  int n;
  const Phi0* phi;
  std::vector<int> prim;
  std::vector<int> prim_check;
  std::vector<int> cone;
  bool stabilized;
  double prim_secs;
};

std::vector<TableRow> table_rows;

Outcome criterion_dimension_table() {
  std::string detail;
  bool pass = true;
  double slowest = 0;
  for (int n = 1; n <= 2; ++n)
    for (const auto& p : kTable) {
      Connection c = canonical(n, p);
      auto t0 = Clock::now();
      auto prim = cohomology_dims(c, ComplexKind::primitive, kTruncation, kMargins);
      double secs = std::chrono::duration<double>(Clock::now() - t0).count();
      auto check = cohomology_dims(c, ComplexKind::primitive, kTruncationCheck, kMargins);
      auto cone = cohomology_dims(c, ComplexKind::cone, kTruncation, kMargins);
      TableRow row{n, &p, prim.dims(), check.dims(), cone.dims(),
                   prim.all_stabilized() && check.all_stabilized() && cone.all_stabilized(), secs};
      slowest = std::max(slowest, secs);
      const bool ok = row.stabilized && row.prim == expected_dims(n, p) && row.prim_check == row.prim;
      if (!ok) {
        pass = false;
        detail += " n=" + std::to_string(n) + " Phi0=" + p.name + " got " + join(row.prim) + "/" +
                  join(row.prim_check) + ";";
      }
      table_rows.push_back(std::move(row));
    }
  std::ostringstream os;
  os << table_rows.size() << " configurations, D=" << kTruncation << " and " << kTruncationCheck
     << ", margins {2,3}, PH^0_+=ker, PH^1_+=coker, rest 0, slowest D=5 run " << slowest << "s" << detail;
  return {pass, os.str()};
}

Outcome criterion_invertible() {
  int configs = 0, bad = 0;
  for (int n = 1; n <= 2; ++n)
    for (const auto& p : kInvertible) {
      Connection c = canonical(n, p);
      auto prim = cohomology_dims(c, ComplexKind::primitive, kTruncation, kMargins);
      auto cone = cohomology_dims(c, ComplexKind::cone, kTruncation, kMargins);
      const std::vector<int> zeros(static_cast<std::size_t>(2 * n + 2), 0);
      ++configs;
      if (prim.dims() != zeros || cone.dims() != zeros || !prim.all_stabilized() || !cone.all_stabilized()) ++bad;
    }
  return {bad == 0, std::to_string(configs) + " invertible configurations (diagonal and non-diagonal, n=1,2), " +
                        std::to_string(bad) + " with a nonzero PH or H_C dimension"};
}

Outcome criterion_isomorphism() {
  int bad = 0;
  for (const auto& row : table_rows)
    if (row.prim != row.cone) ++bad;
  return {bad == 0 && !table_rows.empty(), std::to_string(table_rows.size()) + " configurations, " +
                                               std::to_string(bad) + " with PH dims != H_C dims"};
}

std::vector<Connection> chain_family() {
  Rng rng(707);
  std::vector<Connection> out;
  for (int n = 1; n <= 2; ++n) {
    for (const auto& p : kTable) out.push_back(canonical(n, p));
    out.push_back(generate_flat(n, 2, kInvertible[1].entries, random_unipotent_gauge(rng, n, 2, 1)));
    out.push_back(generate_flat(n, 1, {Rational(1, 2)}, identity_gauge(n, 1)));
    out.push_back(generate_flat(n, 3, random_phi0(rng, 3), random_constant_gauge(rng, n, 3)));
  }
  return out;
}

Outcome criterion_chain_identities() {
  auto family = chain_family();
  int bad = 0;
  int min_trials = 1 << 30;
  std::string where;
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto rep = check_chain_identities(family[i], kChainTrials, 7000 + i);
    for (const auto& id : rep.identities) {
      min_trials = std::min(min_trials, id.trials);
      if (id.failures != 0) {
        ++bad;
        if (where.empty()) where = " first failure " + id.name + " on connection " + std::to_string(i);
      }
    }
  }
  // Gradings cycle 0..2n+1, so every run with ≥ 2n+2 trials hits j = n and n+1.
  const bool covers_boundary = kChainTrials >= 2 * 2 + 2;
  return {bad == 0 && min_trials >= 100 && covers_boundary,
          std::to_string(family.size()) + " flat connections x 5 identities, >=" + std::to_string(min_trials) +
              " elements each, all gradings incl. j=n,n+1, " + std::to_string(bad) + " failing" + where};
}

Outcome criterion_closedness() {
  int samples = 0, bad = 0;
  std::string where;
  std::uint64_t seed = 800;
  for (int n = 1; n <= 2; ++n) {
    std::vector<Phi0> all = kTable;
    all.insert(all.end(), kInvertible.begin(), kInvertible.end());
    for (const auto& p : all) {
      auto rep = closedlem_check(canonical(n, p), kClosedSamplesPerPosition, ++seed);
      samples += rep.samples;
      if (!rep.ok()) {
        ++bad;
        if (where.empty() && rep.counterexample) where = " first: " + *rep.counterexample;
      }
    }
  }
  return {bad == 0 && samples > 0, std::to_string(samples) + " kernel-sampled elements on 16 canonical connections, " +
                                       std::to_string(bad) + " connections with a failure" + where};
}

Outcome criterion_yang_mills() {
  std::vector<Connection> all = flat_family(202);
  auto more = chain_family();
  all.insert(all.end(), more.begin(), more.end());
  Rng rng(909);
  for (int r = 1; r <= 2; ++r)
    all.push_back(generate_flat(3, r, random_phi0(rng, r), random_unipotent_gauge(rng, 3, r, 1)));
  int bad = 0;
  for (const auto& c : all)
    if (!analyze_flatness(c).is_symplectically_flat || !yang_mills_residual(c).is_zero()) ++bad;
  return {bad == 0, std::to_string(all.size()) + " flat connections (n=1..3), " + std::to_string(bad) +
                        " with nonzero d_A(Phi w^{n-1})"};
}

Outcome criterion_gauge_invariance() {
  Rng rng(1010);
  int checked = 0, bad = 0;
  std::string where;
  for (int n = 1; n <= 2; ++n)
    for (const auto& p : kTable) {
      const auto expected = expected_dims(n, p);
      for (int g = 0; g < kGaugesPerConnection; ++g) {
        Connection gauged = generate_flat(n, 2, p.entries, random_unipotent_gauge(rng, n, 2, 1));
        auto rep = cohomology_dims(gauged, ComplexKind::primitive, kGaugeTruncation, kMargins);
        ++checked;
        if (rep.dims() != expected || !rep.all_stabilized()) {
          ++bad;
          if (where.empty()) where = " first: n=" + std::to_string(n) + " Phi0=" + p.name + " got " + join(rep.dims());
        }
      }
    }
  return {bad == 0, std::to_string(checked) + " unipotent (degree <= 1) gauges of the canonical frames at D=" +
                        std::to_string(kGaugeTruncation) + ", " + std::to_string(bad) + " changed dimensions" + where};
}

struct CliRun {
  int code;
  std::string out;
};

CliRun cli_run(std::vector<std::string> args) {
  args.insert(args.begin(), "symflat");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

Outcome criterion_cli() {
  Rng rng(1111);
  int round_trips = 0, round_trip_bad = 0;
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i < kRoundTripForms; ++i) {
      const int degree = rng.uniform(0, 2 * n);
      Form f = random_form(rng, n, degree, RandomShape{3, 3, 60});
      ++round_trips;
      if (!(parse_form(to_string(f), n, degree) == f)) ++round_trip_bad;
    }

  const std::string fixtures = SYMFLAT_FIXTURE_DIR;
  const std::string flat = fixtures + "/flat_rank2.json";
  const std::string nonflat = fixtures + "/nonflat_rank1.json";
  const std::vector<std::vector<std::string>> seeded = {
      {"ainfty-check", "--n", "2", "--trials", "20", "--seed", "5", "--rank", "2"},
      {"twist-square", "--connection", nonflat, "--trials", "20", "--seed", "5"},
      {"cone-verify", "--connection", flat, "--trials", "20", "--seed", "5"},
      {"cohomology", "--connection", flat, "--truncation", "3"},
  };
  int nondeterministic = 0;
  for (const auto& args : seeded) {
    auto a = cli_run(args), b = cli_run(args);
    if (a.out != b.out || a.code != b.code || a.out.empty()) ++nondeterministic;
  }

  const bool exit_ok = cli_run({"twist-square", "--connection", flat, "--trials", "20"}).code == cli::ExitCode::ok &&
                       cli_run({"twist-square", "--connection", nonflat, "--trials", "20"}).code ==
                           cli::ExitCode::check_failed &&
                       cli_run({"cohomology", "--connection", flat, "--margins", "x"}).code == cli::ExitCode::usage_error;

  return {round_trip_bad == 0 && nondeterministic == 0 && exit_ok,
          std::to_string(round_trips - round_trip_bad) + "/" + std::to_string(round_trips) + " DSL round trips, " +
              std::to_string(seeded.size() - nondeterministic) + "/" + std::to_string(seeded.size()) +
              " seeded reports byte-identical, exit codes 0/2/1 " + (exit_ok ? "honored" : "violated")};
}

} // namespace

int main() {
  report(1, "A-infinity relations", criterion_stasheff);
  report(2, "twisted differential squares to zero", criterion_square_zero);
  report(3, "flatness equivalence", criterion_flatness_equivalence);
  report(4, "dimension table", criterion_dimension_table);
  report(5, "invertible Phi0 kills cohomology", criterion_invertible);
  report(6, "PH = H_C position by position", criterion_isomorphism);
  report(7, "cone chain-map and homotopy identities", criterion_chain_identities);
  report(8, "exactness witnesses and closedness identities", criterion_closedness);
  report(9, "Yang-Mills residual", criterion_yang_mills);
  report(10, "gauge invariance of cohomology", criterion_gauge_invariance);
  report(11, "CLI round trip, determinism, exit codes", criterion_cli);
  std::printf("%d/11 criteria passed\n", 11 - failures);
  return failures == 0 ? 0 : 1;
}
