#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "surfmmp/dualgraph.hpp"
#include "surfmmp/error.hpp"
#include "surfmmp/scene.hpp"
#include "surfmmp/specs.hpp"
#include "surfmmp/verify.hpp"

using namespace surfmmp;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitVerification = 3;

Json rat(const Rational& r) { return to_string(r); }

Json rats(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rat(x));
  return a;
}

Json cls(const DivisorClass& d) { return rats(d.coords); }

Json combination(const CurveCombination& c) {
  Json o = Json::object();
  for (const auto& [name, coeff] : c) o[name] = rat(coeff);
  return o;
}

Json point(const PointSpec& p) {
  Json o = Json::object();
  for (const auto& [name, m] : p.incidences) o[name] = m;
  return o;
}

Json decomposition(const SurfaceModel& model, const ZariskiDecomp& zd) {
  Json cert = Json::object();
  Json curves = Json::array();
  for (auto i : zd.certificate.curve_indices) curves.push_back(model.curves().at(i).name);
  cert["curves"] = curves;
  cert["minor_signs"] = zd.certificate.minor_signs;
  cert["valid"] = zd.certificate.valid();
  return Json{{"positive", cls(zd.positive)},
              {"negative", combination(zd.negative)},
              {"certificate", cert},
              {"nef_scope", zd.nef_scope}};
}

Json basis(const SurfaceModel& model) { return model.lattice().basis_names(); }

Json trace_json(const MMPTrace& trace) {
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    steps.push_back(Json{{"curve", s.curve},
                         {"self_intersection", rat(s.self_intersection)},
                         {"anticanonical_degree", rat(s.anticanonical_degree)},
                         {"canonical_degree", rat(s.canonical_degree)},
                         {"discrepancy", rat(s.discrepancy)},
                         {"exceptional_coefficient", rat(s.exceptional_coefficient)},
                         {"rank_after", s.after.surface().rank()}});
  }
  Json total = Json::object();
  for (const auto& [name, a] : trace.total_discrepancies) total[name] = rat(a);
  return Json{{"initial_rank", trace.initial.surface().rank()},
              {"steps", steps},
              {"final_rank", trace.final_pair.surface().rank()},
              {"final_boundary", combination(trace.final_pair.boundary())},
              {"total_discrepancies", total},
              {"final_klt", trace.final_klt},
              {"final_model_nef", trace.final_model_nef}};
}

Json verdict_json(const DualGraph& g, const GraphVerdict& v) {
  Json j{{"weights", g.weights()}};
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back(Json::array({a, b}));
  j["edges"] = edges;
  j["b"] = rats(v.b);
  j["klt"] = v.klt;
  j["canonical"] = v.canonical;
  j["redundant_free"] = v.redundant_free;
  j["max_edge_sum"] = rat(v.max_edge_sum);
  j["matched_family"] = v.matched_family ? Json(*v.matched_family) : Json(nullptr);
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SurfaceError(ErrorKind::UnknownName, "cannot read '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact numerical toolkit for anticanonical MMPs on surface pairs"};
  app.require_subcommand(1);

  std::string scene_source, divisor, point_spec, chain_spec, curve, boundary_spec, graph_file, weights_spec;
  std::string example, scene_name;
  int max_vertices = 0, min_weight = 0;
  std::size_t depth = 2;
  int status = 0;

  auto* zariski = app.add_subcommand("zariski", "Zariski decomposition of a divisor (default -(K + Delta))");
  zariski->add_option("scene", scene_source, "built-in scene name or scene file")->required();
  zariski->add_option("--divisor", divisor, "linear expression in K, Delta, curves and basis names");

  auto* mmp = app.add_subcommand("mmp", "Run the anticanonical MMP");
  mmp->add_option("scene", scene_source)->required();
  mmp->add_option("--depth", depth, "chain depth for the sigma/lct estimate")->capture_default_str();

  auto* redundant = app.add_subcommand("redundant", "Test a point for redundancy");
  redundant->add_option("scene", scene_source)->required();
  redundant->add_option("--point", point_spec, "incidences, e.g. C:1,E:1")->required();

  auto* discrepancy = app.add_subcommand("discrepancy", "A, sigma and abar of a divisor over the surface");
  discrepancy->add_option("scene", scene_source)->required();
  auto* chain_opt = discrepancy->add_option("--chain", chain_spec, "points separated by ';', exceptionals F1, F2, ...");
  auto* curve_opt = discrepancy->add_option("--curve", curve, "a tracked curve on the surface itself");
  chain_opt->excludes(curve_opt);
  discrepancy->add_option("--boundary", boundary_spec, "sub-boundary, e.g. C:1,E:1 (default: the scene boundary)");

  auto* classify_cmd = app.add_subcommand("classify-graph", "Classify a resolution dual graph");
  auto* w_opt = classify_cmd->add_option("--chain", weights_spec, "chain weights, e.g. -2,-4");
  auto* g_opt = classify_cmd->add_option("--graph", graph_file, "JSON file {weights, edges}");
  w_opt->excludes(g_opt);

  auto* theorem = app.add_subcommand("verify-theorem-1.4", "Exhaustive desk-scale check of the dual graph list");
  theorem->add_option("--max-vertices", max_vertices)->required()->check(CLI::Range(1, 12));
  theorem->add_option("--min-weight", min_weight)->required()->check(CLI::Range(-8, -2));

  auto* verify = app.add_subcommand("verify-example", "Reproduce a worked example");
  verify->add_option("example", example)->required()->check(CLI::IsMember(example_ids()));

  auto* scenes = app.add_subcommand("scenes", "List built-in scenes");
  auto* export_scene = app.add_subcommand("export-scene", "Print a scene in the file format");
  export_scene->add_option("scene", scene_name)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*zariski) {
      const PairModel pair = load_scene(scene_source);
      const std::string expr = divisor.empty() ? "-K - Delta" : divisor;
      const DivisorClass d = parse_divisor(pair, expr);
      const SurfaceModel& s = pair.surface();
      emit(Json{{"scene", scene_source},
                {"basis", basis(s)},
                {"divisor", expr},
                {"class", cls(d)},
                {"decomposition", decomposition(s, zariski_decompose(s, d))}});
    } else if (*mmp) {
      const PairModel pair = load_scene(scene_source);
      const MMPTrace trace = run_anticanonical_mmp(pair);
      const PkltCertificate cert = pklt_certificate(pair);
      const FactorizationReport fact = check_mmp_redundant_factorization(trace);
      Json fsteps = Json::array();
      for (const auto& s : fact.steps) {
        fsteps.push_back(Json{{"curve", s.curve},
                              {"verdict", s.verdict},
                              {"point", point(s.point)},
                              {"mult_negative", rat(s.detail.mult_negative)},
                              {"mult_boundary", rat(s.detail.mult_boundary)}});
      }
      const LctSigmaEstimate est = lct_sigma_estimate(pair, depth);
      auto opt = [](const std::optional<Rational>& r) { return r ? rat(*r) : Json("infinity"); };
      emit(Json{{"scene", scene_source},
                {"decomposition", decomposition(pair.surface(), pair.decomposition())},
                {"trace", trace_json(trace)},
                {"klt", trace.final_klt},
                {"pklt_certificate",
                 Json{{"certified", cert.certified},
                      {"max_negative_coefficient", rat(cert.max_negative_coefficient)},
                      {"reason", cert.reason}}},
                {"factorization", Json{{"ok", fact.ok}, {"steps", fsteps}}},
                {"lct_sigma_estimate",
                 Json{{"depth", depth},
                      {"chains_examined", est.chains_examined},
                      {"min_ratio", opt(est.min_ratio)},
                      {"epsilon", opt(est.epsilon)},
                      {"certified_lower_bound", opt(est.certified_lower_bound)},
                      {"gap_violations", est.gap_violations},
                      {"kind", "estimate over enumerated chains"}}}});
    } else if (*redundant) {
      const PairModel pair = load_scene(scene_source);
      const PointSpec p = parse_point(point_spec);
      const RedundancyReport r = is_redundant_point(pair, p);
      Json j{{"scene", scene_source},
             {"point", point(p)},
             {"redundant", r.redundant},
             {"mult_negative", rat(r.mult_negative)},
             {"mult_boundary", rat(r.mult_boundary)}};
      if (r.redundant) {
        const RedundantBlowUp up = redundant_blow_up(pair, p, "E_p");
        j["transported"] = decomposition(up.pair.surface(), up.transported);
        j["matches_recomputed"] = same_decomposition(up.transported, up.pair.decomposition());
      }
      emit(j);
    } else if (*discrepancy) {
      const PairModel pair = load_scene(scene_source);
      const SurfaceModel& s = pair.surface();
      const CurveCombination b = boundary_spec.empty() ? pair.boundary() : parse_combination(boundary_spec);
      for (const auto& [name, coeff] : b) s.curve(name);
      DivisorClass anti = -(s.canonical() + s.class_of(b));
      Json j{{"scene", scene_source}, {"boundary", combination(b)}};
      Rational a, sig;
      if (!curve.empty()) {
        s.curve(curve);
        const auto it = b.find(curve);
        a = 1 - (it == b.end() ? Rational(0) : it->second);
        sig = sigma(s, anti, curve);
        j["curve"] = curve;
      } else {
        if (chain_spec.empty()) throw SurfaceError(ErrorKind::Parse, "give --chain or --curve");
        const Chain chain = parse_chain(chain_spec);
        a = log_discrepancy_chain(s, b, chain);
        sig = sigma(s, anti, chain);
        Json pts = Json::array();
        for (const auto& p : chain) pts.push_back(point(p));
        j["chain"] = pts;
        j["divisor"] = chain_exceptional_name(chain.size());
      }
      j["log_discrepancy"] = rat(a);
      j["sigma"] = rat(sig);
      j["potential_log_discrepancy"] = rat(a - sig);
      emit(j);
    } else if (*classify_cmd) {
      if (weights_spec.empty() == graph_file.empty()) {
        throw SurfaceError(ErrorKind::Parse, "give exactly one of --chain or --graph");
      }
      const DualGraph g =
          graph_file.empty() ? DualGraph::chain(parse_weights(weights_spec)) : parse_graph(read_file(graph_file));
      emit(verdict_json(g, classify(g)));
    } else if (*theorem) {
      const EnumerationReport r = enumerate_and_verify(max_vertices, min_weight);
      emit(Json{{"max_vertices", r.max_vertices},
                {"min_weight", r.min_weight},
                {"visited", r.visited},
                {"canonical", r.canonical},
                {"redundant_free_noncanonical", r.redundant_free_noncanonical},
                {"has_redundant_minimal", r.has_redundant_minimal},
                {"excluded_minimal", r.excluded_minimal},
                {"monotonicity_checks", r.monotonicity_checks},
                {"monotonicity_violations", r.monotonicity_violations},
                {"found", r.found},
                {"expected", r.expected},
                {"missing", r.missing},
                {"unexpected", r.unexpected},
                {"ok", r.ok}});
      if (!r.ok) status = kExitVerification;
    } else if (*verify) {
      const ExampleReport r = verify_example(example);
      Json checks = Json::array();
      for (const auto& c : r.checks) {
        checks.push_back(Json{{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
      }
      emit(Json{{"example", r.example}, {"checks", checks}, {"pass", r.pass()}});
      if (!r.pass()) status = kExitVerification;
    } else if (*scenes) {
      emit(Json(builtin_scene_names()));
    } else if (*export_scene) {
      std::cout << serialize_scene(read_scene(scene_name));
    }
  } catch (const SurfaceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return status;
}
