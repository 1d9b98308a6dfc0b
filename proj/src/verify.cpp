#include "surfmmp/verify.hpp"

#include <algorithm>
#include <array>
#include <sstream>

#include "surfmmp/error.hpp"
#include "surfmmp/scene.hpp"

namespace surfmmp {

namespace {

std::string class_string(const DivisorClass& d) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < d.size(); ++i) out << (i ? ", " : "") << to_string(d.coords[i]);
  out << ")";
  return out.str();
}

std::string combination_string(const CurveCombination& c) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& [name, coeff] : c) {
    out << (first ? "" : ", ") << name << ": " << to_string(coeff);
    first = false;
  }
  out << "}";
  return out.str();
}

class Checklist {
 public:
  explicit Checklist(std::string example) { report_.example = std::move(example); }

  void equal(std::string name, const Rational& expected, const Rational& actual) {
    add(std::move(name), to_string(expected), to_string(actual), expected == actual);
  }
  void equal(std::string name, const DivisorClass& expected, const DivisorClass& actual) {
    add(std::move(name), class_string(expected), class_string(actual), expected == actual);
  }
  void equal(std::string name, const CurveCombination& expected, const CurveCombination& actual) {
    add(std::move(name), combination_string(expected), combination_string(actual), expected == actual);
  }
  void equal(std::string name, std::size_t expected, std::size_t actual) {
    add(std::move(name), std::to_string(expected), std::to_string(actual), expected == actual);
  }
  void holds(std::string name, bool value) { add(std::move(name), "true", value ? "true" : "false", value); }

  // Runs a computation that may throw; a throw is a failed check.
  template <class F>
  void guarded(const std::string& name, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      add(name, "no error", std::string("error: ") + e.what(), false);
    }
  }

  ExampleReport take() { return std::move(report_); }

 private:
  void add(std::string name, std::string expected, std::string actual, bool pass) {
    report_.checks.push_back({std::move(name), std::move(expected), std::move(actual), pass});
  }
  ExampleReport report_;
};

std::string curve_name(const char* prefix, std::size_t i) { return prefix + std::to_string(i); }

ExampleReport example_41() {
  Checklist c("4.1");
  c.guarded("example 4.1", [&] {
    const SurfaceModel x = build_surface(*builtin_scene("example-4.1"));
    std::vector<std::string> lines;
    for (std::size_t i = 1; i <= 9; ++i) lines.push_back(curve_name("L", i));

    for (const auto& a : lines) c.equal(a + "^2", Rational(-3), x.intersect(a, a));
    for (std::size_t i = 0; i < lines.size(); ++i) {
      for (std::size_t j = i + 1; j < lines.size(); ++j) {
        c.equal(lines[i] + "." + lines[j], Rational(0), x.intersect(lines[i], lines[j]));
      }
    }
    DivisorClass sum = x.zero_class();
    for (const auto& a : lines) sum += x.curve(a).cls;
    c.equal("sum L + 3K", x.zero_class(), sum + Rational(3) * x.canonical());

    const ContractionResult g = contract(x, lines);
    for (const auto& a : lines) c.equal("discrepancy " + a, Rational(-1, 3), g.discrepancies.at(a));
    c.holds("quotient klt", g.is_klt);
    c.equal("quotient rank", std::size_t{4}, g.quotient.rank());
    const DivisorClass minus_three_k = Rational(-3) * x.canonical();
    c.equal("g*(-3K_Y)", x.zero_class(), g.pullback(g.descend(minus_three_k)));
  });
  return c.take();
}

ExampleReport example_42() {
  Checklist c("4.2");
  c.guarded("example 4.2", [&] {
    const Scene scene = *builtin_scene("example-4.2");
    const std::array<int, 9> marks = {1, 2, 3, 4, 5, 6, 4, 3, 2};
    CurveCombination d;
    for (std::size_t i = 0; i < marks.size(); ++i) d[curve_name("C", i + 1)] = marks[i];

    Scene base = scene;
    base.blowups.clear();
    const PairModel s = build_pair(base);
    c.equal("-K_S as sum a_i C_i", s.anticanonical(), s.surface().class_of(d));
    c.holds("-K_S nef (N = 0)", s.decomposition().negative_is_zero());
    const PointSpec p = scene.blowups.at(0).point;
    c.holds("p not redundant on (S, 0)", !is_redundant_point(s, p).redundant);

    const PairModel x = build_pair(scene);
    const SurfaceModel& xs = x.surface();
    const CurveCombination fd = pullback_combination(xs, d);
    c.equal("c = a_r + a_s", Rational(11), fd.at("E"));
    const DivisorClass minus_k = -xs.canonical();
    c.equal("-K_X.C'_r", Rational(-1), xs.intersect(minus_k, xs.curve("C6").cls));
    c.equal("-K_X.C'_s", Rational(-1), xs.intersect(minus_k, xs.curve("C5").cls));

    const ZariskiDecomp& zd = x.decomposition();
    c.equal("P = (10/11) f*D", Rational(10, 11) * xs.class_of(fd), zd.positive);
    CurveCombination expected_n;
    for (std::size_t i = 0; i < marks.size(); ++i) expected_n[curve_name("C", i + 1)] = Rational(marks[i], 11);
    c.equal("N = (1/11) sum a_i C'_i", expected_n, zd.negative);

    const MMPTrace trace = run_anticanonical_mmp(x);
    c.equal("MMP steps", std::size_t{9}, trace.steps.size());
    c.holds("final klt", trace.final_klt);
    c.holds("final -K model-nef", trace.final_model_nef);
    const PkltCertificate cert = pklt_certificate(x);
    c.holds("pklt certificate", cert.certified);
    c.equal("max N coefficient", Rational(6, 11), cert.max_negative_coefficient);
  });
  return c.take();
}

ExampleReport example_43() {
  Checklist c("4.3");
  c.guarded("example 4.3", [&] {
    const PairModel x = build_pair(*builtin_scene("example-4.3"));
    const SurfaceModel& xs = x.surface();
    c.equal("C^2", Rational(-4), xs.intersect("C", "C"));
    c.equal("C.E", Rational(2), xs.intersect("C", "E"));
    c.equal("f*D", CurveCombination{{"C", 1}, {"E", 2}}, pullback_combination(xs, {{"C", 1}}));
    const DivisorClass minus_k = -xs.canonical();
    c.equal("-K_X = C + E", xs.class_of({{"C", 1}, {"E", 1}}), minus_k);
    c.equal("-K_X.C", Rational(-2), xs.intersect(minus_k, xs.curve("C").cls));

    const ZariskiDecomp& zd = x.decomposition();
    c.equal("P = C/2 + E", xs.class_of({{"C", Rational(1, 2)}, {"E", 1}}), zd.positive);
    c.equal("N = C/2", CurveCombination{{"C", Rational(1, 2)}}, zd.negative);
    c.equal("sigma_C(-K_X)", Rational(1, 2), sigma(xs, minus_k, "C"));

    const ContractionResult g = contract(xs, {"C"});
    c.equal("discrepancy of C", Rational(-1, 2), g.discrepancies.at("C"));
    c.holds("Y klt", g.is_klt);

    const Chain f = {PointSpec{{{"C", 1}, {"E", 1}}}, PointSpec{{{"C", 1}, {"E", 1}, {"F1", 1}}}};
    c.equal("A_X(F)", Rational(3), log_discrepancy(x, f));
    c.equal("ord_F(C + E)", Rational(4), order_along_chain(xs, {{"C", 1}, {"E", 1}}, f));
    c.equal("A_{X,C+E}(F)", Rational(-1), log_discrepancy_chain(xs, {{"C", 1}, {"E", 1}}, f));

    const MMPTrace trace = run_anticanonical_mmp(x);
    c.equal("MMP steps", std::size_t{1}, trace.steps.size());
    c.holds("MMP contracts C", trace.contracted() == std::vector<std::string>{"C"});
    c.holds("final klt", trace.final_klt);
    c.holds("pklt certificate", pklt_certificate(x).certified);
    c.equal("abar(C)", Rational(1, 2), potential_log_discrepancy(x, "C"));
  });
  return c.take();
}

}  // namespace

bool ExampleReport::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

std::vector<std::string> example_ids() { return {"4.1", "4.2", "4.3"}; }

ExampleReport verify_example(std::string_view id) {
  if (id == "4.1") return example_41();
  if (id == "4.2") return example_42();
  if (id == "4.3") return example_43();
  throw SurfaceError(ErrorKind::UnknownName, "unknown example '" + std::string(id) + "'");
}

}  // namespace surfmmp
