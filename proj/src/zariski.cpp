#include "surfmmp/zariski.hpp"

#include <algorithm>

#include "surfmmp/error.hpp"

namespace surfmmp {

Rational ZariskiDecomp::coefficient(std::string_view curve) const {
  auto it = negative.find(std::string(curve));
  return it == negative.end() ? Rational(0) : it->second;
}

namespace {

NegDefCertificate certify_support(const SurfaceModel& model, const CurveCombination& negative) {
  std::vector<DivisorClass> classes;
  std::vector<std::size_t> indices;
  for (const auto& c : model.curves()) {
    if (negative.count(c.name)) {
      classes.push_back(c.cls);
      indices.push_back(*model.curve_index(c.name));
    }
  }
  return is_negative_definite(model.lattice(), classes, indices).certificate;
}

std::string scope_of(const SurfaceModel& model) {
  return "model-nef: checked against " + std::to_string(model.curves().size()) + " tracked curves; " +
         std::to_string(model.nef_axioms().size()) + " nef axioms declared";
}

}  // namespace

ZariskiDecomp zariski_decompose(const SurfaceModel& model, const DivisorClass& divisor) {
  if (divisor.size() != model.rank()) throw SurfaceError(ErrorKind::DimensionMismatch, "divisor length");
  const auto& curves = model.curves();
  std::vector<bool> in_support(curves.size(), false);
  std::vector<std::size_t> support;
  std::vector<Rational> x;
  DivisorClass positive = divisor;

  while (true) {
    std::vector<std::size_t> violators;
    for (std::size_t i = 0; i < curves.size(); ++i) {
      if (!in_support[i] && model.intersect(positive, curves[i].cls) < 0) violators.push_back(i);
    }
    if (violators.empty()) break;
    for (std::size_t i : violators) in_support[i] = true;
    support.clear();
    for (std::size_t i = 0; i < curves.size(); ++i) {
      if (in_support[i]) support.push_back(i);
    }

    std::vector<DivisorClass> classes;
    std::vector<Rational> targets;
    for (std::size_t i : support) {
      classes.push_back(curves[i].cls);
      targets.push_back(model.intersect(divisor, curves[i].cls));
    }
    if (!is_negative_definite(model.lattice(), classes, support).negative_definite) {
      throw SurfaceError(ErrorKind::NoZariskiDecomposition,
                         "support is not negative definite (non-pseudoeffective input or missing curves)");
    }
    x = solve_on_support(model.lattice(), classes, targets);
    positive = divisor;
    for (std::size_t k = 0; k < support.size(); ++k) positive -= x[k] * classes[k];
  }

  ZariskiDecomp zd;
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (x[k] < 0) {
      throw SurfaceError(ErrorKind::NoZariskiDecomposition,
                         "negative part has coefficient " + to_string(x[k]) + " on " + curves[support[k]].name);
    }
    if (x[k] > 0) zd.negative[curves[support[k]].name] = x[k];
  }
  zd.positive = std::move(positive);
  zd.certificate = certify_support(model, zd.negative);
  zd.nef_scope = scope_of(model);
  return zd;
}

std::vector<std::string> decomposition_violations(const SurfaceModel& model, const DivisorClass& divisor,
                                                  const ZariskiDecomp& zd) {
  std::vector<std::string> out;
  for (const auto& [name, coeff] : zd.negative) {
    if (!model.curve_index(name)) {
      out.push_back("negative part names unknown curve " + name);
      return out;
    }
    if (coeff < 0) out.push_back("negative coefficient on " + name);
  }
  if (zd.positive + model.class_of(zd.negative) != divisor) out.push_back("P + N differs from D");
  for (const auto& c : model.curves()) {
    const Rational pc = model.intersect(zd.positive, c.cls);
    if (pc < 0) out.push_back("P.C < 0 for " + c.name);
    if (zd.coefficient(c.name) != 0 && pc != 0) out.push_back("P.C != 0 on support curve " + c.name);
  }
  if (!certify_support(model, zd.negative).valid()) out.push_back("support of N is not negative definite");
  return out;
}

bool same_decomposition(const ZariskiDecomp& a, const ZariskiDecomp& b) {
  auto strip = [](const CurveCombination& c) {
    CurveCombination out;
    for (const auto& [k, v] : c) {
      if (v != 0) out[k] = v;
    }
    return out;
  };
  return a.positive == b.positive && strip(a.negative) == strip(b.negative);
}

Rational sigma(const SurfaceModel& model, const DivisorClass& divisor, const Chain& chain) {
  if (chain.empty()) throw SurfaceError(ErrorKind::InvariantViolation, "sigma along an empty chain needs a curve");
  const SurfaceModel top = blow_up_chain(model, chain);
  return zariski_decompose(top, pullback(top, divisor)).coefficient(chain_exceptional_name(chain.size()));
}

Rational sigma(const SurfaceModel& model, const DivisorClass& divisor, std::string_view curve) {
  model.curve(curve);
  return zariski_decompose(model, divisor).coefficient(curve);
}

ZariskiDecomp transport_redundant(const SurfaceModel& child, const ZariskiDecomp& down, const PointSpec& p,
                                  const Rational& boundary_mult) {
  if (child.history().empty() || child.history().back().point != p) {
    throw SurfaceError(ErrorKind::InvariantViolation, "child model is not the blow-up at the given point");
  }
  const std::string& e = child.history().back().exceptional_name;
  CurveCombination negative = pullback_combination(child, down.negative);
  negative[e] += boundary_mult - 1;
  if (negative[e] < 0) {
    throw SurfaceError(ErrorKind::NotRedundant,
                       "transported negative part has coefficient " + to_string(negative[e]) + " on " + e);
  }
  if (negative[e] == 0) negative.erase(e);

  ZariskiDecomp up;
  up.positive = pullback(child, down.positive);
  up.negative = std::move(negative);
  up.certificate = certify_support(child, up.negative);
  up.nef_scope = "transported from the blown-down model";
  return up;
}

}  // namespace surfmmp
