#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "oracles.hpp"
#include "random_models.hpp"
#include "run_command.hpp"
#include "surfmmp/dualgraph.hpp"
#include "surfmmp/error.hpp"
#include "surfmmp/scene.hpp"

using namespace surfmmp;
using namespace surfmmp::testing;

namespace {

// All comparisons are exact rational equalities; these are the only tunables.
constexpr int kPropositionInstances = 100;
constexpr int kZariskiInstances = 200;
constexpr std::size_t kZariskiMaxRank = 8;
constexpr int kRedundantBlowUps = 50;
constexpr std::size_t kChainDepth = 3;
constexpr std::size_t kFullSigmaDepth = 2;  // deeper chains use the order of the pulled-back N
constexpr int kEnumerationVertices = 10;
constexpr int kEnumerationMinWeight = -8;
constexpr std::uint64_t kSeed = 0x5eed;

const std::string kCli = SURFMMP_CLI;

class Failure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure(what);
}

template <class T>
void expect_eq(const T& expected, const T& actual, const std::string& what) {
  if (expected == actual) return;
  std::ostringstream out;
  if constexpr (std::is_same_v<T, Rational>) {
    out << what << ": expected " << to_string(expected) << ", got " << to_string(actual);
  } else {
    out << what << ": mismatch";
  }
  throw Failure(out.str());
}

CurveCombination e8_marks() {
  const int marks[] = {1, 2, 3, 4, 5, 6, 4, 3, 2};
  CurveCombination d;
  for (int i = 0; i < 9; ++i) d["C" + std::to_string(i + 1)] = marks[i];
  return d;
}

std::string criterion1() {
  const PairModel x = load_scene("example-4.3");
  const SurfaceModel& s = x.surface();
  const ZariskiDecomp& zd = x.decomposition();
  expect(zd.positive == s.class_of({{"C", Rational(1, 2)}, {"E", 1}}), "P = C/2 + E");
  expect(zd.negative == CurveCombination{{"C", Rational(1, 2)}}, "N = C/2");
  expect_eq(Rational(-2), s.intersect(-s.canonical(), s.curve("C").cls), "-K.C");
  const ContractionResult g = contract(s, {"C"});
  expect_eq(Rational(-1, 2), g.discrepancies.at("C"), "discrepancy of C");
  expect(g.is_klt, "klt after contracting C");
  const Chain f = {PointSpec{{{"C", 1}, {"E", 1}}}, PointSpec{{{"C", 1}, {"E", 1}, {"F1", 1}}}};
  expect_eq(Rational(3), log_discrepancy(x, f), "A_X(F)");
  expect_eq(Rational(4), order_along_chain(s, {{"C", 1}, {"E", 1}}, f), "ord_F(C + E)");
  expect_eq(Rational(-1), log_discrepancy_chain(s, {{"C", 1}, {"E", 1}}, f), "A_{X,C+E}(F)");
  const MMPTrace t = run_anticanonical_mmp(x);
  expect(t.steps.size() == 1 && t.steps[0].curve == "C", "MMP contracts exactly C");
  return "N = {C: 1/2}, a_C = -1/2, A(F) = 3, ord_F = 4, A_{X,C+E}(F) = -1, one MMP step";
}

std::string criterion2() {
  const PairModel x = load_scene("example-4.2");
  const SurfaceModel& s = x.surface();
  const CurveCombination fd = pullback_combination(s, e8_marks());
  expect_eq(Rational(11), fd.at("E"), "E-coefficient of f*D");
  expect_eq(Rational(-1), s.intersect(-s.canonical(), s.curve("C6").cls), "-K.C'_r");
  expect_eq(Rational(-1), s.intersect(-s.canonical(), s.curve("C5").cls), "-K.C'_s");
  CurveCombination n;
  for (const auto& [c, a] : e8_marks()) n[c] = a / 11;
  expect(x.decomposition().negative == n, "N = sum a_i C'_i / 11");
  expect(x.decomposition().positive == Rational(10, 11) * s.class_of(fd), "P = (10/11) f*D");
  const MMPTrace t = run_anticanonical_mmp(x);
  expect(t.steps.size() == 9, "MMP contracts 9 curves");
  expect(t.final_klt, "final model klt");
  const PkltCertificate cert = pklt_certificate(x);
  expect(cert.certified, "pklt certificate: " + cert.reason);
  return "c = 11, -K.C' = -1, N = a_i/11, 9 contractions (rank " + std::to_string(s.rank()) + " -> " +
         std::to_string(t.final_pair.surface().rank()) + "), klt, pklt certified";
}

std::string criterion3() {
  const SurfaceModel x = build_surface(*builtin_scene("example-4.1"));
  std::vector<std::string> lines;
  for (int i = 1; i <= 9; ++i) lines.push_back("L" + std::to_string(i));
  DivisorClass sum = x.zero_class();
  for (const auto& a : lines) {
    // the class H - sum of the four points on the line
    DivisorClass expected = x.zero_class();
    expected.coords[0] = 1;
    for (int p : kDualHesseLines[std::stoi(a.substr(1)) - 1]) expected.coords[p] = -1;
    expect(x.curve(a).cls == expected, a + " = H - sum E_j over its points");
    expect_eq(Rational(-3), x.intersect(a, a), a + "^2");
    for (const auto& b : lines) {
      if (a < b) expect_eq(Rational(0), x.intersect(a, b), a + "." + b);
    }
    sum += x.curve(a).cls;
  }
  expect((sum + Rational(3) * x.canonical()).is_zero(), "sum L + 3K = 0");
  const ContractionResult g = contract(x, lines);
  for (const auto& a : lines) expect_eq(Rational(-1, 3), g.discrepancies.at(a), "discrepancy " + a);
  expect(g.quotient.rank() == 4, "quotient rank 4");
  expect(g.pullback(g.descend(Rational(-3) * x.canonical())).is_zero(), "g*(-3K_Y) = 0");
  return "nine (-3)-curves, pairwise 0, sum = -3K, discrepancies -1/3, rank 4, g*(-3K_Y) = 0";
}

std::set<std::string> expected_families(int max_vertices, int min_weight) {
  std::set<std::string> out;
  auto add = [&](std::vector<int> w) {
    if (static_cast<int>(w.size()) > max_vertices) return;
    if (*std::min_element(w.begin(), w.end()) < min_weight) return;
    out.insert(canonical_form(DualGraph::chain(w)));
  };
  for (int n = 3; n <= -min_weight; ++n) add({-n});
  for (int alpha = 1; alpha < max_vertices; ++alpha) {
    std::vector<int> w(alpha, -2);
    w.push_back(-3);
    add(w);
  }
  add({-2, -2, -3, -2});
  add({-2, -3, -2});
  add({-2, -4});
  return out;
}

std::string criterion4() {
  const auto r = run_command(kCli + " verify-theorem-1.4 --max-vertices " + std::to_string(kEnumerationVertices) +
                             " --min-weight " + std::to_string(kEnumerationMinWeight));
  expect(r.status == 0, "exit code " + std::to_string(r.status));
  const auto j = nlohmann::json::parse(r.out);
  const auto found = j["found"].get<std::set<std::string>>();
  expect(found == expected_families(kEnumerationVertices, kEnumerationMinWeight),
         "redundant-free non-canonical set differs from the listed families");
  expect(j["monotonicity_violations"].empty(), "monotonicity violations reported");
  for (const auto& w : std::vector<std::vector<int>>{{-3, -3}, {-2, -5}}) {
    expect(!classify(DualGraph::chain(w)).redundant_free, "[" + std::to_string(w[0]) + "," + std::to_string(w[1]) + "] is redundant-free");
  }
  return std::to_string(found.size()) + " redundant-free non-canonical graphs, all listed; " +
         std::to_string(j["canonical"].get<int>()) + " canonical; [-3,-3], [-2,-5] redundant";
}

std::string criterion5() {
  Rng rng(kSeed + 5);
  int instances = 0, redundant = 0, not_pseudoeffective = 0;
  while (instances < kPropositionInstances) {
    const auto pair = random_pair(rng, 7);
    if (!pair) continue;
    for (const auto& p : candidate_points(pair->surface())) {
      const bool r = is_redundant_point(*pair, p).redundant;
      const CurveCombination t = transported_negative_part(*pair, p, "G");
      const bool effective = std::all_of(t.begin(), t.end(), [](const auto& kv) { return kv.second >= 0; });
      const SurfaceModel up = blow_up(pair->surface(), p, "G");
      const DivisorClass d = -(up.canonical() + up.class_of(pair->boundary()));
      ZariskiDecomp candidate;
      candidate.positive = pullback(up, pair->decomposition().positive);
      candidate.negative = t;
      for (auto it = candidate.negative.begin(); it != candidate.negative.end();) {
        it = it->second == 0 ? candidate.negative.erase(it) : std::next(it);
      }
      std::optional<ZariskiDecomp> recomputed;
      try {
        recomputed = zariski_decompose(up, d);
      } catch (const SurfaceError& e) {
        expect(e.kind() == ErrorKind::NoZariskiDecomposition, e.what());
        ++not_pseudoeffective;
      }
      const bool valid = decomposition_violations(up, d, candidate).empty() && recomputed &&
                         same_decomposition(candidate, *recomputed);
      expect(r == effective && r == valid, "equivalence fails at instance " + std::to_string(instances));
      if (r) {
        const RedundantBlowUp via = redundant_blow_up(*pair, p, "G");
        expect(same_decomposition(via.transported, via.pair.decomposition()), "transported decomposition differs");
      }
      ++instances;
      redundant += r;
    }
  }
  expect(redundant > 0 && redundant < instances, "instances do not cover both cases");
  return std::to_string(instances) + " instances (" + std::to_string(redundant) + " redundant, " + std::to_string(not_pseudoeffective) +
         " with no decomposition upstairs), 0 failures";
}

std::string criterion6() {
  Rng rng(kSeed + 6);
  int nonempty = 0;
  std::size_t max_rank = 0;
  for (int trial = 0; trial < kZariskiInstances; ++trial) {
    const SurfaceModel x = random_surface(rng, kZariskiMaxRank);
    max_rank = std::max(max_rank, x.rank());
    const DivisorClass d = random_effective(rng, x);
    const auto oracle = zariski_oracle(x, d);
    expect(oracle.size() == 1, "oracle found " + std::to_string(oracle.size()) + " decompositions");
    const ZariskiDecomp zd = zariski_decompose(x, d);
    expect(zd.negative == oracle.front(), "decomposition differs from oracle at trial " + std::to_string(trial));
    nonempty += !zd.negative.empty();
  }
  return std::to_string(kZariskiInstances) + " lattices (rank <= " + std::to_string(max_rank) + ", " +
         std::to_string(nonempty) + " with N != 0), 0 failures";
}

// abar on X against abar on the MMP output evaluated through the crepant sub-boundary.
std::size_t check_mmp_abar(const PairModel& x) {
  const MMPTrace t = run_anticanonical_mmp(x);
  expect(check_mmp_redundant_factorization(t).ok, "factorization check");
  const CurveCombination b = crepant_boundary_of_output(t);
  const SurfaceModel& s = x.surface();
  const CurveCombination n_y = zariski_decompose(s, -(s.canonical() + s.class_of(b))).negative;
  std::size_t chains = 0;
  for (const auto& c : s.curves()) {
    const auto it = b.find(c.name);
    const Rational on_y = 1 - (it == b.end() ? Rational(0) : it->second) -
                          (n_y.count(c.name) ? n_y.at(c.name) : Rational(0));
    expect_eq(potential_log_discrepancy(x, c.name), on_y, "abar(" + c.name + ")");
  }
  for_each_chain(s, kChainDepth, [&](const Chain& chain, const SurfaceModel&) {
    ++chains;
    const Rational on_x = abar_by_transport(x.boundary(), x.decomposition().negative, chain);
    expect_eq(on_x, abar_by_transport(b, n_y, chain), "abar on X vs Y");
    if (chain.size() <= 1) {
      expect_eq(on_x, potential_log_discrepancy(x, chain), "abar with full sigma");
      expect_eq(on_x, potential_log_discrepancy(s, b, chain), "abar on Y with full sigma");
    }
  });
  return chains;
}

std::string criterion7() {
  std::size_t chains = check_mmp_abar(load_scene("example-4.2")) + check_mmp_abar(load_scene("example-4.3"));
  Rng rng(kSeed + 7);
  int blowups = 0;
  while (blowups < kRedundantBlowUps) {
    const auto pair = random_pair(rng, 4);
    if (!pair) continue;
    const auto points = candidate_points(pair->surface());
    std::vector<PointSpec> redundant;
    for (const auto& p : points) {
      if (is_redundant_point(*pair, p).redundant) redundant.push_back(p);
    }
    if (redundant.empty()) continue;
    const PointSpec p = redundant[rng() % redundant.size()];
    ++blowups;
    const PairModel up = redundant_blow_up(*pair, p, "G").pair;
    for (const auto& c : up.surface().curves()) {
      const Rational below = c.name == "G" ? potential_log_discrepancy(*pair, Chain{p})
                                           : potential_log_discrepancy(*pair, c.name);
      expect_eq(below, potential_log_discrepancy(up, c.name), "abar(" + c.name + ") across the blow-up");
    }
    for_each_chain(up.surface(), kChainDepth, [&](const Chain& chain, const SurfaceModel&) {
      ++chains;
      const Rational above = abar_by_transport(up.boundary(), up.decomposition().negative, chain);
      const Chain lowered = prefix_chain(p, "G", chain);
      expect_eq(above, abar_by_transport(pair->boundary(), pair->decomposition().negative, lowered),
                "abar across the blow-up");
      if (chain.size() <= 1) expect_eq(above, potential_log_discrepancy(*pair, lowered), "abar with full sigma");
    });
    expect(check_mmp_redundant_factorization(run_anticanonical_mmp(up)).ok, "factorization on the blow-up");
    expect(check_mmp_redundant_factorization(run_anticanonical_mmp(*pair)).ok, "factorization downstairs");
  }
  return "E8 and cuspidal scenes plus " + std::to_string(blowups) + " redundant blow-ups, " + std::to_string(chains) +
         " chains of depth <= " + std::to_string(kChainDepth) + ", 0 failures";
}

std::string criterion8() {
  std::ostringstream out;
  for (const char* name : {"example-4.2", "example-4.3"}) {
    const PairModel x = load_scene(name);
    const LctSigmaEstimate est = lct_sigma_estimate(x, kChainDepth);
    expect(est.epsilon && est.min_ratio, std::string(name) + ": no positive sigma");
    const Rational eps = *est.epsilon;
    std::size_t chains = 0;
    for_each_chain(x.surface(), kChainDepth, [&](const Chain& chain, const SurfaceModel& top) {
      ++chains;
      const Rational a = log_discrepancy_chain(x.surface(), x.boundary(), chain);
      const Rational s = chain.size() <= kFullSigmaDepth
                             ? zariski_decompose(top, pullback(top, x.anticanonical()))
                                   .coefficient(chain_exceptional_name(chain.size()))
                             : chain_transport(x.decomposition().negative, chain, 0);
      expect(a - s >= eps * s, std::string(name) + ": gap fails on a chain");
    });
    expect(est.gap_violations == 0, "estimate reports gap violations");
    expect(*est.min_ratio >= 1 + eps, "min ratio below 1 + eps");
    out << name << ": eps = " << to_string(eps) << ", min A/sigma = " << to_string(*est.min_ratio) << " over "
        << chains << " chains; ";
  }
  return out.str();
}

std::string criterion9() {
  for (const auto& name : builtin_scene_names()) {
    const std::string text = serialize_scene(*builtin_scene(name));
    expect(serialize_scene(parse_scene(text)) == text, name + " does not round-trip");
  }
  Rng rng(kSeed + 9);
  int restored = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const SurfaceModel s = random_surface(rng, 7);
    const auto points = candidate_points(s);
    const SurfaceModel x = blow_up(s, points[rng() % points.size()], "Z");
    const ContractionResult g = contract(x, {"Z"});
    expect(g.quotient.lattice().gram() == s.lattice().gram(), "Gram matrix not restored");
    expect(g.quotient.canonical() == s.canonical(), "canonical class not restored");
    ++restored;
  }
  for (const char* args : {"mmp example-4.2", "zariski example-4.3", "verify-example 4.1", "export-scene example-4.1",
                           "classify-graph --chain -2,-2,-3,-2"}) {
    const auto a = run_command(kCli + " " + args);
    const auto b = run_command(kCli + " " + args);
    expect(a.status == 0 && a.out == b.out && !a.out.empty(), std::string("non-deterministic: ") + args);
  }
  return std::to_string(builtin_scene_names().size()) + " scenes round-trip, " + std::to_string(restored) +
         " blow-up/contract restorations, 5 reports byte-identical";
}

}  // namespace

int main() {
  const std::vector<std::function<std::string()>> criteria = {criterion1, criterion2, criterion3,
                                                              criterion4, criterion5, criterion6,
                                                              criterion7, criterion8, criterion9};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    std::string verdict, detail;
    try {
      detail = criteria[i]();
      verdict = "PASS";
    } catch (const std::exception& e) {
      detail = e.what();
      verdict = "FAIL";
      ++failures;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream time;
    time.precision(2);
    time << std::fixed << secs;
    std::cout << verdict << " criterion " << i + 1 << ": " << detail << " [" << time.str() << " s]" << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
