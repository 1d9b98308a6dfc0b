#include "surfmmp/birational.hpp"

#include <algorithm>
#include <set>

#include "surfmmp/error.hpp"

namespace surfmmp {

int PointSpec::multiplicity(std::string_view curve) const {
  auto it = incidences.find(std::string(curve));
  return it == incidences.end() ? 0 : it->second;
}

SurfaceModel::SurfaceModel(IntersectionLattice lattice, DivisorClass canonical, std::vector<TrackedCurve> curves,
                           std::vector<DivisorClass> nef_axioms, std::vector<BlowUpRecord> history, bool smooth)
    : lattice_(std::move(lattice)),
      canonical_(std::move(canonical)),
      curves_(std::move(curves)),
      nef_axioms_(std::move(nef_axioms)),
      history_(std::move(history)),
      smooth_(smooth) {
  const std::size_t n = lattice_.rank();
  if (canonical_.size() != n) throw SurfaceError(ErrorKind::DimensionMismatch, "canonical class length");
  std::set<std::string> seen;
  for (const auto& c : curves_) {
    if (c.cls.size() != n) throw SurfaceError(ErrorKind::DimensionMismatch, "class of curve " + c.name);
    if (c.cls.is_zero()) throw SurfaceError(ErrorKind::InvariantViolation, "curve " + c.name + " has zero class");
    if (!seen.insert(c.name).second) throw SurfaceError(ErrorKind::InvariantViolation, "duplicate curve " + c.name);
    if (smooth_) {
      const Rational genus = arithmetic_genus(c.name);
      if (!is_integer(genus) || genus < 0) {
        throw SurfaceError(ErrorKind::InvariantViolation,
                           "adjunction: curve " + c.name + " has arithmetic genus " + to_string(genus));
      }
    }
  }
  for (std::size_t i = 0; i < nef_axioms_.size(); ++i) {
    if (nef_axioms_[i].size() != n) throw SurfaceError(ErrorKind::DimensionMismatch, "nef axiom length");
    for (const auto& c : curves_) {
      if (intersect(nef_axioms_[i], c.cls) < 0) {
        throw SurfaceError(ErrorKind::InvariantViolation,
                           "nef axiom " + std::to_string(i) + " is negative on curve " + c.name);
      }
    }
  }
}

std::optional<std::size_t> SurfaceModel::curve_index(std::string_view name) const {
  for (std::size_t i = 0; i < curves_.size(); ++i) {
    if (curves_[i].name == name) return i;
  }
  return std::nullopt;
}

const TrackedCurve& SurfaceModel::curve(std::string_view name) const {
  auto idx = curve_index(name);
  if (!idx) throw SurfaceError(ErrorKind::UnknownName, "no tracked curve named '" + std::string(name) + "'");
  return curves_[*idx];
}

DivisorClass SurfaceModel::class_of(const CurveCombination& combination) const {
  DivisorClass d = zero_class();
  for (const auto& [name, coeff] : combination) {
    if (coeff != 0) d += coeff * curve(name).cls;
  }
  return d;
}

Rational SurfaceModel::arithmetic_genus(std::string_view name) const {
  const auto& c = curve(name).cls;
  return (intersect(c, c) + intersect(canonical_, c)) / 2 + 1;
}

SurfaceModel blow_up(const SurfaceModel& model, const PointSpec& p, const std::string& name) {
  if (model.curve_index(name) || model.lattice().basis_index(name)) {
    throw SurfaceError(ErrorKind::InvariantViolation, "name '" + name + "' is already in use");
  }
  for (const auto& [curve, mult] : p.incidences) {
    model.curve(curve);
    if (mult < 1) {
      throw SurfaceError(ErrorKind::InconsistentIncidence, "multiplicity of " + curve + " must be positive");
    }
    if (model.smooth()) {
      const Rational genus = model.arithmetic_genus(curve) - Rational(mult * (mult - 1)) / 2;
      if (genus < 0) {
        throw SurfaceError(ErrorKind::InconsistentIncidence,
                           "curve " + curve + " cannot have a point of multiplicity " + std::to_string(mult));
      }
    }
  }
  for (auto a = p.incidences.begin(); a != p.incidences.end(); ++a) {
    for (auto b = std::next(a); b != p.incidences.end(); ++b) {
      if (model.intersect(a->first, b->first) < a->second * b->second) {
        throw SurfaceError(ErrorKind::InconsistentIncidence,
                           "curves " + a->first + " and " + b->first + " do not meet with multiplicity " +
                               std::to_string(a->second * b->second) + " at the point");
      }
    }
  }

  const std::size_t n = model.rank();
  RatMatrix gram(n + 1, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) gram(i, j) = model.lattice().gram()(i, j);
  }
  gram(n, n) = -1;
  auto names = model.lattice().basis_names();
  names.push_back(name);

  auto extend = [n](const DivisorClass& d, const Rational& last) {
    DivisorClass e(n + 1);
    std::copy(d.coords.begin(), d.coords.end(), e.coords.begin());
    e.coords[n] = last;
    return e;
  };

  std::vector<TrackedCurve> curves;
  curves.reserve(model.curves().size() + 1);
  for (const auto& c : model.curves()) {
    curves.push_back({c.name, extend(c.cls, -p.multiplicity(c.name)), c.exceptional_of});
  }
  curves.push_back({name, DivisorClass::basis_vector(n + 1, n), model.history().size()});

  std::vector<DivisorClass> nef;
  for (const auto& a : model.nef_axioms()) nef.push_back(extend(a, 0));

  Rational crepant_mult = 0;
  for (const auto& [curve, mult] : p.incidences) {
    const auto& c = model.curve(curve);
    if (c.exceptional_of) crepant_mult += mult * (1 - model.history()[*c.exceptional_of].log_discrepancy_over_root);
  }
  auto history = model.history();
  history.push_back({p, name, 2 - crepant_mult});

  return SurfaceModel(IntersectionLattice(std::move(names), std::move(gram)), extend(model.canonical(), 1),
                      std::move(curves), std::move(nef), std::move(history), model.smooth());
}

DivisorClass pullback(const SurfaceModel& child, const DivisorClass& parent_class) {
  if (parent_class.size() > child.rank()) {
    throw SurfaceError(ErrorKind::DimensionMismatch, "class does not live on an ancestor of this model");
  }
  DivisorClass d(child.rank());
  std::copy(parent_class.coords.begin(), parent_class.coords.end(), d.coords.begin());
  return d;
}

CurveCombination pullback_combination(const SurfaceModel& child, const CurveCombination& parent) {
  if (child.history().empty()) throw SurfaceError(ErrorKind::InvariantViolation, "model has no blow-up history");
  const auto& last = child.history().back();
  CurveCombination result = parent;
  result[last.exceptional_name] = multiplicity_at(parent, last.point);
  return result;
}

DivisorClass ContractionResult::descend(const DivisorClass& parent_class) const {
  if (parent_class.size() != descent.cols()) throw SurfaceError(ErrorKind::DimensionMismatch, "descend");
  DivisorClass y(descent.rows());
  for (std::size_t i = 0; i < descent.rows(); ++i) {
    for (std::size_t j = 0; j < descent.cols(); ++j) y.coords[i] += descent(i, j) * parent_class.coords[j];
  }
  return y;
}

DivisorClass ContractionResult::pullback(const DivisorClass& quotient_class) const {
  if (quotient_class.size() != embedding.cols()) throw SurfaceError(ErrorKind::DimensionMismatch, "pullback");
  DivisorClass x(embedding.rows());
  for (std::size_t i = 0; i < embedding.rows(); ++i) {
    for (std::size_t j = 0; j < embedding.cols(); ++j) x.coords[i] += embedding(i, j) * quotient_class.coords[j];
  }
  return x;
}

std::map<std::string, Rational> contraction_coefficients(const SurfaceModel& model,
                                                         const std::vector<std::string>& curves,
                                                         const DivisorClass& log_canonical) {
  std::vector<DivisorClass> classes;
  std::vector<Rational> targets;
  for (const auto& name : curves) {
    classes.push_back(model.curve(name).cls);
    targets.push_back(model.intersect(log_canonical, classes.back()));
  }
  const auto x = solve_on_support(model.lattice(), classes, targets);
  std::map<std::string, Rational> result;
  for (std::size_t i = 0; i < curves.size(); ++i) result[curves[i]] = x[i];
  return result;
}

ContractionResult contract(const SurfaceModel& model, const std::vector<std::string>& curves) {
  std::vector<DivisorClass> classes;
  std::vector<std::size_t> indices;
  for (const auto& name : curves) {
    classes.push_back(model.curve(name).cls);
    indices.push_back(*model.curve_index(name));
  }
  if (std::set<std::string>(curves.begin(), curves.end()).size() != curves.size()) {
    throw SurfaceError(ErrorKind::NotContractible, "repeated curve in contraction set");
  }
  if (!is_negative_definite(model.lattice(), classes, indices).negative_definite) {
    throw SurfaceError(ErrorKind::NotContractible, "Gram matrix of the curves is not negative definite");
  }

  ContractionResult result;
  result.discrepancies = contraction_coefficients(model, curves, model.canonical());
  result.is_klt = std::all_of(result.discrepancies.begin(), result.discrepancies.end(),
                              [](const auto& kv) { return kv.second > -1; });
  result.is_terminal = std::all_of(result.discrepancies.begin(), result.discrepancies.end(),
                                   [](const auto& kv) { return kv.second > 0; });

  const std::size_t n = model.rank();
  const RatMatrix support_gram = gram_of(model.lattice(), classes);
  auto project = [&](const DivisorClass& v) {
    std::vector<Rational> targets;
    for (const auto& c : classes) targets.push_back(model.intersect(v, c));
    const auto x = solve_linear(support_gram, targets);
    DivisorClass p = v;
    for (std::size_t i = 0; i < classes.size(); ++i) p -= x[i] * classes[i];
    return p;
  };

  // Greedy basis of the orthogonal complement from projections of parent basis vectors.
  std::vector<DivisorClass> projections;
  std::vector<std::size_t> chosen;
  for (std::size_t k = 0; k < n; ++k) {
    projections.push_back(project(DivisorClass::basis_vector(n, k)));
    RatMatrix m(n, chosen.size() + 1);
    for (std::size_t c = 0; c < chosen.size(); ++c) {
      for (std::size_t i = 0; i < n; ++i) m(i, c) = projections[chosen[c]].coords[i];
    }
    for (std::size_t i = 0; i < n; ++i) m(i, chosen.size()) = projections[k].coords[i];
    if (matrix_rank(m) == chosen.size() + 1) chosen.push_back(k);
  }

  const std::size_t q = chosen.size();
  result.embedding = RatMatrix(n, q);
  for (std::size_t c = 0; c < q; ++c) {
    for (std::size_t i = 0; i < n; ++i) result.embedding(i, c) = projections[chosen[c]].coords[i];
  }
  result.descent = RatMatrix(q, n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto y = solve_full_column_rank(result.embedding, projections[k].coords);
    for (std::size_t i = 0; i < q; ++i) result.descent(i, k) = y[i];
  }

  RatMatrix quotient_gram = result.embedding.transpose() * model.lattice().gram() * result.embedding;
  std::vector<std::string> names;
  for (std::size_t c : chosen) names.push_back(model.lattice().basis_names()[c]);

  std::vector<TrackedCurve> kept;
  const std::set<std::string> contracted(curves.begin(), curves.end());
  for (const auto& c : model.curves()) {
    if (!contracted.count(c.name)) kept.push_back({c.name, result.descend(c.cls), c.exceptional_of});
  }
  std::vector<DivisorClass> nef;
  for (const auto& a : model.nef_axioms()) nef.push_back(result.descend(a));

  bool smooth = model.smooth();
  for (std::size_t i = 0; i < classes.size() && smooth; ++i) {
    smooth = support_gram(i, i) == -1 && model.intersect(model.canonical(), classes[i]) == -1;
    for (std::size_t j = i + 1; j < classes.size() && smooth; ++j) smooth = support_gram(i, j) == 0;
  }

  result.quotient = SurfaceModel(IntersectionLattice(std::move(names), std::move(quotient_gram)),
                                 result.descend(model.canonical()), std::move(kept), std::move(nef),
                                 model.history(), smooth);
  return result;
}

std::string chain_exceptional_name(std::size_t k) { return "F" + std::to_string(k); }

SurfaceModel blow_up_chain(const SurfaceModel& model, const Chain& chain) {
  SurfaceModel current = model;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    current = blow_up(current, chain[k], chain_exceptional_name(k + 1));
  }
  return current;
}

Rational multiplicity_at(const CurveCombination& combination, const PointSpec& p) {
  Rational total = 0;
  for (const auto& [curve, mult] : p.incidences) {
    auto it = combination.find(curve);
    if (it != combination.end()) total += mult * it->second;
  }
  return total;
}

namespace {

// Validates each step against the model (incidence consistency) while transporting.
template <typename Step>
Rational transport_along_chain(const SurfaceModel& model, CurveCombination combination, const Chain& chain,
                               Step step) {
  if (chain.empty()) throw SurfaceError(ErrorKind::InvariantViolation, "empty chain");
  for (const auto& [name, coeff] : combination) model.curve(name);
  SurfaceModel current = model;
  Rational last = 0;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const std::string name = chain_exceptional_name(k + 1);
    current = blow_up(current, chain[k], name);
    last = step(multiplicity_at(combination, chain[k]));
    combination[name] = last;
  }
  return last;
}

}  // namespace

Rational order_along_chain(const SurfaceModel& model, const CurveCombination& divisor, const Chain& chain) {
  return transport_along_chain(model, divisor, chain, [](const Rational& mult) { return mult; });
}

Rational log_discrepancy_chain(const SurfaceModel& model, const CurveCombination& boundary, const Chain& chain) {
  const Rational coefficient =
      transport_along_chain(model, boundary, chain, [](const Rational& mult) { return Rational(mult - 1); });
  return 1 - coefficient;
}

}  // namespace surfmmp
