#include "symflat/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "symflat/cohomology.hpp"
#include "symflat/cone.hpp"
#include "symflat/dsl.hpp"
#include "symflat/lefschetz.hpp"
#include "symflat/tty.hpp"
#include "symflat/twist.hpp"

namespace symflat::cli {

using Json = nlohmann::ordered_json;

namespace {

Json valued_json(const ValuedForm& v) {
  if (v.kind() == FiberKind::scalar) return to_string(v.entry(0));
  Json out = Json::array();
  if (v.kind() == FiberKind::vector) {
    for (int i = 0; i < v.rank(); ++i) out.push_back(to_string(v.entry(i)));
    return out;
  }
  for (int i = 0; i < v.rank(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < v.rank(); ++j) row.push_back(to_string(v.entry(i, j)));
    out.push_back(row);
  }
  return out;
}

std::string position_label(const PrimElement& e) {
  return "P^" + std::to_string(e.primitive_degree()) + (e.side() == Side::plus ? "_+" : "_-");
}

Json prim_json(const PrimElement& e) {
  return Json{{"position", position_label(e)}, {"grading", e.grading()}, {"payload", valued_json(e.payload())}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) {
    Rational q(j.get<std::string>());
    q.canonicalize();
    return q;
  }
  throw std::invalid_argument("connection: expected an integer or a rational string");
}

const Json& square(const Json& doc, const char* key, int r) {
  const Json& m = doc.at(key);
  if (!m.is_array() || static_cast<int>(m.size()) != r)
    throw std::invalid_argument(std::string("connection: \"") + key + "\" must have " + std::to_string(r) + " rows");
  for (const auto& row : m)
    if (!row.is_array() || static_cast<int>(row.size()) != r)
      throw std::invalid_argument(std::string("connection: \"") + key + "\" rows must have " + std::to_string(r) +
                                  " entries");
  return m;
}

} // namespace

Connection parse_connection(const std::string& json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("connection: ") + e.what());
  }
  const int n = doc.at("n").get<int>();
  const int r = doc.at("rank").get<int>();
  if (n < 1 || n > kMaxChartDim) throw std::invalid_argument("connection: n out of range");
  if (r < 1) throw std::invalid_argument("connection: rank must be positive");
  if (doc.contains("A")) {
    const Json& a = square(doc, "A", r);
    MatrixForm A(FiberKind::matrix, r, n, 1);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) A.entry(i, j) = parse_form(a[i][j].get<std::string>(), n, 1);
    return Connection(A);
  }
  const Json& p = square(doc, "Phi0", r);
  std::vector<Rational> phi0;
  for (const auto& row : p)
    for (const auto& x : row) phi0.push_back(rational_from_json(x));
  LambdaChoice lambda = LambdaChoice::standard;
  if (doc.contains("lambda")) {
    const auto name = doc.at("lambda").get<std::string>();
    if (name == "symmetric") {
      lambda = LambdaChoice::symmetric;
    } else if (name != "standard") {
      throw std::invalid_argument("connection: lambda must be \"standard\" or \"symmetric\"");
    }
  }
  Gauge g = identity_gauge(n, r);
  if (doc.contains("gauge")) {
    const Json& gj = square(doc, "gauge", r);
    MatrixForm N(FiberKind::matrix, r, n, 0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) N.entry(i, j) = parse_form(gj[i][j].get<std::string>(), n, 0);
    g = unipotent_gauge(N);
  }
  return generate_flat(n, r, phi0, g, lambda);
}

Connection load_connection(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open connection file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_connection(buf.str());
}

namespace {

Report emit(const Json& doc, int code) { return {code, doc.dump(2)}; }

} // namespace

Report decompose_report(int n, const std::string& src) {
  Form f = parse_form(src, n);
  auto comps = decompose(f);
  Json parts = Json::array();
  bool consistent = reassemble(comps) == f;
  for (std::size_t r = 0; r < comps.parts.size(); ++r) {
    const Form& p = comps.parts[r];
    consistent = consistent && is_primitive(p);
    parts.push_back(Json{{"r", static_cast<int>(r)}, {"degree", p.degree()}, {"form", to_string(p)}});
  }
  Json doc{{"n", n}, {"degree", f.degree()}, {"form", to_string(f)}, {"components", parts}, {"reassembles", consistent}};
  return emit(doc, consistent ? ExitCode::ok : check_failed);
}

Report flatness_report(const Connection& c, bool require_flat) {
  FlatnessReport rep = analyze_flatness(c);
  const bool m1_zero = m1_prime_of_A(c).is_zero();
  Json doc{{"n", c.chart_dim()},
           {"rank", c.rank()},
           {"A", valued_json(c.A())},
           {"F", valued_json(rep.F)},
           {"F0", valued_json(rep.F0)},
           {"Phi", valued_json(rep.Phi)},
           {"dAPhi", valued_json(rep.dAPhi)},
           {"is_symplectically_flat", rep.is_symplectically_flat},
           {"bianchi_consistent", rep.bianchi_consistent},
           {"m1_prime_of_A_vanishes", m1_zero}};
  if (rep.F0.is_zero()) doc["yang_mills_residual"] = valued_json(yang_mills_residual(c));
  bool passed = rep.bianchi_consistent && m1_zero == rep.is_symplectically_flat;
  if (require_flat && !rep.is_symplectically_flat) {
    passed = false;
    doc["witness"] = rep.F0.is_zero() ? Json{{"dAPhi", valued_json(rep.dAPhi)}} : Json{{"F0", valued_json(rep.F0)}};
  }
  return emit(doc, passed ? ExitCode::ok : check_failed);
}

Report ainfty_report(int n, int trials, std::uint64_t seed, int max_deg, int rank) {
  if (n < 1 || n > kMaxChartDim) throw std::invalid_argument("n must be between 1 and " + std::to_string(kMaxChartDim));
  if (rank < 1) throw std::invalid_argument("rank must be positive");
  if (trials < 0 || max_deg < 0) throw std::invalid_argument("trials and max_deg must be non-negative");
  Rng rng(seed);
  const FiberKind kind = rank == 1 ? FiberKind::scalar : FiberKind::matrix;
  Json relations = Json::array();
  bool all = true;
  for (int k = 1; k <= 4; ++k) {
    int failures = 0;
    Json counterexample = nullptr;
    for (int t = 0; t < trials; ++t) {
      std::vector<PrimElement> in;
      for (int i = 0; i < k; ++i)
        in.push_back(random_prim_element(rng, n, rank, rng.uniform(0, 2 * n + 1), max_deg, kind));
      PrimElement res = check_stasheff(in);
      if (res.is_zero()) continue;
      ++failures;
      if (counterexample.is_null()) {
        Json inputs = Json::array();
        for (const auto& e : in) inputs.push_back(prim_json(e));
        counterexample = Json{{"inputs", inputs}, {"residual", prim_json(res)}};
      }
    }
    all = all && failures == 0;
    relations.push_back(Json{{"k", k}, {"trials", trials}, {"failures", failures}, {"counterexample", counterexample}});
  }
  Json doc{{"n", n},          {"rank", rank},     {"fiber", to_string(kind)}, {"seed", seed},
           {"max_deg", max_deg}, {"relations", relations}, {"all_hold", all}};
  return emit(doc, all ? ExitCode::ok : check_failed);
}

Report twist_square_report(const Connection& c, int trials, std::uint64_t seed, int max_deg) {
  SquareZeroReport rep = check_square_zero(c, trials, seed, max_deg);
  Json doc{{"seed", seed},
           {"flat", rep.flat},
           {"trials", rep.trials},
           {"residual_failures", rep.residual_failures}};
  if (rep.witness)
    doc["witness"] = Json{{"input", prim_json(rep.witness->input)}, {"residual", prim_json(rep.witness->residual)}};
  return emit(doc, rep.witness ? check_failed : ExitCode::ok);
}

Report cohomology_report(const Connection& c, const std::string& complex, int truncation,
                         const std::vector<int>& margins) {
  ComplexKind kind;
  if (complex == "prim") {
    kind = ComplexKind::primitive;
  } else if (complex == "cone") {
    kind = ComplexKind::cone;
  } else {
    throw std::invalid_argument("complex must be prim or cone");
  }
  FlatnessReport flat = analyze_flatness(c);
  if (!flat.is_symplectically_flat) {
    Json doc{{"error", "connection is not symplectically flat"},
             {"witness", flat.F0.is_zero() ? Json{{"dAPhi", valued_json(flat.dAPhi)}} : Json{{"F0", valued_json(flat.F0)}}}};
    return emit(doc, check_failed);
  }
  CohomologyReport rep = cohomology_dims(c, kind, truncation, margins);
  Json positions = Json::array();
  for (const auto& p : rep.positions)
    positions.push_back(Json{{"position", p.label},
                             {"grading", p.grading},
                             {"dim", p.dim},
                             {"dims_by_margin", p.dims_by_margin},
                             {"stabilized", p.stabilized},
                             {"witnesses", p.witnesses}});
  Json doc{{"complex", complex}, {"truncation", truncation}, {"margins", rep.margins},
           {"dims", rep.dims()}, {"all_stabilized", rep.all_stabilized()}, {"positions", positions}};
  return emit(doc, rep.all_stabilized() ? ExitCode::ok : check_failed);
}

Report cone_verify_report(const Connection& c, int trials, std::uint64_t seed, int max_deg) {
  ChainIdentityReport rep = check_chain_identities(c, trials, seed, max_deg);
  Json ids = Json::array();
  for (const auto& id : rep.identities) {
    Json j{{"name", id.name}, {"trials", id.trials}, {"failures", id.failures}, {"passed", id.failures == 0}};
    j["counterexample"] = id.counterexample ? Json(*id.counterexample) : Json(nullptr);
    ids.push_back(j);
  }
  Json doc{{"seed", seed}, {"trials", trials}, {"identities", ids}, {"all_pass", rep.all_pass()}};
  return emit(doc, rep.all_pass() ? ExitCode::ok : check_failed);
}

namespace {

std::vector<int> parse_margins(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(item, &used);
      if (used != item.size() || v < 0) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--margins", "expected comma-separated non-negative integers");
    }
  }
  if (out.empty()) throw CLI::ValidationError("--margins", "expected at least one margin");
  return out;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact symbolic checks for symplectically flat connections and primitive cohomology", "symflat"};
  app.require_subcommand(1);

  int n = 1, trials = 100, max_deg = 2, rank = 1, truncation = 5;
  std::uint64_t seed = 1;
  std::string form, connection_path, complex = "prim", margins = "2,3";
  bool require_flat = false;

  auto* decompose_cmd = app.add_subcommand("decompose", "Lefschetz decomposition of a form");
  decompose_cmd->add_option("--n", n, "Chart dimension")->required();
  decompose_cmd->add_option("--form", form, "Form in the DSL")->required();

  auto* flatness_cmd = app.add_subcommand("flatness", "Curvature, Phi and symplectic flatness of a connection");
  flatness_cmd->add_option("--connection", connection_path, "Connection JSON file")->required();
  flatness_cmd->add_flag("--require-flat", require_flat, "Exit 2 unless the connection is symplectically flat");

  auto* ainfty_cmd = app.add_subcommand("ainfty-check", "Stasheff relations k = 1..4 on random tuples");
  ainfty_cmd->add_option("--n", n, "Chart dimension")->required();
  ainfty_cmd->add_option("--trials", trials, "Tuples per relation")->check(CLI::NonNegativeNumber);
  ainfty_cmd->add_option("--seed", seed, "Random seed");
  ainfty_cmd->add_option("--max-deg", max_deg, "Coefficient degree bound")->check(CLI::NonNegativeNumber);
  ainfty_cmd->add_option("--rank", rank, "Fiber rank (1 = scalar, otherwise matrix)");

  auto* twist_cmd = app.add_subcommand("twist-square", "Checks that the twisted differential squares to zero");
  twist_cmd->add_option("--connection", connection_path, "Connection JSON file")->required();
  twist_cmd->add_option("--trials", trials, "Random elements")->check(CLI::NonNegativeNumber);
  twist_cmd->add_option("--seed", seed, "Random seed");
  twist_cmd->add_option("--max-deg", max_deg, "Coefficient degree bound")->check(CLI::NonNegativeNumber);

  auto* coh_cmd = app.add_subcommand("cohomology", "Truncated twisted primitive or cone cohomology");
  coh_cmd->add_option("--connection", connection_path, "Connection JSON file")->required();
  coh_cmd->add_option("--complex", complex, "prim or cone");
  coh_cmd->add_option("--truncation", truncation, "Coefficient degree bound D")->check(CLI::NonNegativeNumber);
  coh_cmd->add_option("--margins", margins, "Stabilization margins, comma separated");

  auto* cone_cmd = app.add_subcommand("cone-verify", "Chain-map and homotopy identities of the cone complex");
  cone_cmd->add_option("--connection", connection_path, "Connection JSON file")->required();
  cone_cmd->add_option("--trials", trials, "Random elements per identity")->check(CLI::NonNegativeNumber);
  cone_cmd->add_option("--seed", seed, "Random seed");
  cone_cmd->add_option("--max-deg", max_deg, "Coefficient degree bound")->check(CLI::NonNegativeNumber);

  auto fail = [&](const Json& doc) {
    err << doc.at("error").get<std::string>() << '\n';
    out << doc.dump(2) << '\n';
    return static_cast<int>(usage_error);
  };
  try {
    app.parse(argc, argv);
    Report rep;
    if (decompose_cmd->parsed()) {
      rep = decompose_report(n, form);
    } else if (ainfty_cmd->parsed()) {
      rep = ainfty_report(n, trials, seed, max_deg, rank);
    } else {
      Connection c = load_connection(connection_path);
      if (flatness_cmd->parsed()) {
        rep = flatness_report(c, require_flat);
      } else if (twist_cmd->parsed()) {
        rep = twist_square_report(c, trials, seed, max_deg);
      } else if (coh_cmd->parsed()) {
        rep = cohomology_report(c, complex, truncation, parse_margins(margins));
      } else {
        rep = cone_verify_report(c, trials, seed, max_deg);
      }
    }
    out << rep.json << '\n';
    return rep.code;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ExitCode::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ExitCode::ok;
  } catch (const CLI::Error& e) {
    return fail(Json{{"error", e.what()}});
  } catch (const ParseError& e) {
    return fail(Json{{"error", e.what()}, {"line", e.line()}, {"column", e.column()}});
  } catch (const std::invalid_argument& e) {
    return fail(Json{{"error", e.what()}});
  } catch (const nlohmann::json::exception& e) {
    return fail(Json{{"error", std::string("connection: ") + e.what()}});
  }
}

} // namespace symflat::cli
