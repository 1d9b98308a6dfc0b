#include "surfmmp/pairs.hpp"

#include <algorithm>

#include "surfmmp/error.hpp"

namespace surfmmp {

PairModel::PairModel(SurfaceModel surface, CurveCombination boundary)
    : surface_(std::move(surface)), boundary_(std::move(boundary)) {
  for (auto it = boundary_.begin(); it != boundary_.end();) {
    surface_.curve(it->first);
    if (it->second < 0 || it->second > 1) {
      throw SurfaceError(ErrorKind::InvariantViolation,
                         "boundary coefficient of " + it->first + " is outside [0, 1]: " + to_string(it->second));
    }
    it = it->second == 0 ? boundary_.erase(it) : std::next(it);
  }
  zd_ = zariski_decompose(surface_, anticanonical());
}

Rational PairModel::boundary_coefficient(std::string_view curve) const {
  auto it = boundary_.find(std::string(curve));
  return it == boundary_.end() ? Rational(0) : it->second;
}

DivisorClass PairModel::log_canonical() const { return surface_.canonical() + surface_.class_of(boundary_); }

DivisorClass PairModel::anticanonical() const { return -log_canonical(); }

PairModel pair_on_blow_up(const PairModel& pair, const PointSpec& p, const std::string& name) {
  return PairModel(blow_up(pair.surface(), p, name), pair.boundary());
}

namespace {

// Coefficient of the last chain exceptional after transporting `combination` with
// new = mult_p(current) + shift at every step. No incidence validation.
Rational transport(CurveCombination combination, const Chain& chain, const Rational& shift) {
  Rational last = 0;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    last = multiplicity_at(combination, chain[k]) + shift;
    combination[chain_exceptional_name(k + 1)] = last;
  }
  return last;
}

Rational coefficient_in(const CurveCombination& c, std::string_view name) {
  auto it = c.find(std::string(name));
  return it == c.end() ? Rational(0) : it->second;
}

DivisorClass anticanonical_of(const SurfaceModel& surface, const CurveCombination& boundary) {
  return -(surface.canonical() + surface.class_of(boundary));
}

}  // namespace

Rational potential_log_discrepancy(const SurfaceModel& surface, const CurveCombination& boundary,
                                   const Chain& chain) {
  const Rational a = log_discrepancy_chain(surface, boundary, chain);
  return a - sigma(surface, anticanonical_of(surface, boundary), chain);
}

Rational potential_log_discrepancy(const SurfaceModel& surface, const CurveCombination& boundary,
                                   std::string_view curve) {
  const Rational a = 1 - coefficient_in(boundary, curve);
  return a - sigma(surface, anticanonical_of(surface, boundary), curve);
}

Rational log_discrepancy(const PairModel& pair, const Chain& chain) {
  return log_discrepancy_chain(pair.surface(), pair.boundary(), chain);
}

Rational log_discrepancy(const PairModel& pair, std::string_view curve) {
  pair.surface().curve(curve);
  return 1 - pair.boundary_coefficient(curve);
}

Rational potential_log_discrepancy(const PairModel& pair, const Chain& chain) {
  const Rational a = log_discrepancy(pair, chain);
  if (pair.decomposition().negative_is_zero()) return a;
  return a - sigma(pair.surface(), pair.anticanonical(), chain);
}

Rational potential_log_discrepancy(const PairModel& pair, std::string_view curve) {
  return log_discrepancy(pair, curve) - pair.decomposition().coefficient(curve);
}

RedundancyReport is_redundant_point(const PairModel& pair, const PointSpec& p) {
  for (const auto& [curve, mult] : p.incidences) pair.surface().curve(curve);
  RedundancyReport r;
  r.mult_negative = multiplicity_at(pair.decomposition().negative, p);
  r.mult_boundary = multiplicity_at(pair.boundary(), p);
  r.redundant = r.mult_negative + r.mult_boundary >= 1;
  return r;
}

CurveCombination transported_negative_part(const PairModel& pair, const PointSpec& p,
                                           const std::string& exceptional) {
  CurveCombination n = pair.decomposition().negative;
  n[exceptional] = multiplicity_at(n, p) + multiplicity_at(pair.boundary(), p) - 1;
  return n;
}

RedundantBlowUp redundant_blow_up(const PairModel& pair, const PointSpec& p, const std::string& name) {
  const auto report = is_redundant_point(pair, p);
  if (!report.redundant) {
    throw SurfaceError(ErrorKind::NotRedundant, "mult_p(N + Delta) = " +
                                                    to_string(report.mult_negative + report.mult_boundary) + " < 1");
  }
  SurfaceModel child = blow_up(pair.surface(), p, name);
  ZariskiDecomp transported = transport_redundant(child, pair.decomposition(), p, report.mult_boundary);
  return {PairModel(std::move(child), pair.boundary()), std::move(transported)};
}

std::vector<std::string> MMPTrace::contracted() const {
  std::vector<std::string> names;
  for (const auto& s : steps) names.push_back(s.curve);
  return names;
}

MMPTrace run_anticanonical_mmp(const PairModel& pair) {
  MMPTrace trace{pair, {}, pair, true, true, {}};
  const std::size_t max_steps = pair.surface().rank();
  while (!trace.final_pair.decomposition().negative_is_zero()) {
    if (trace.steps.size() >= max_steps) {
      throw SurfaceError(ErrorKind::InvariantViolation, "MMP exceeded the rank bound");
    }
    const PairModel& current = trace.final_pair;
    const SurfaceModel& s = current.surface();
    const DivisorClass d = current.anticanonical();

    std::optional<std::size_t> pick;
    Rational best;
    for (std::size_t i = 0; i < s.curves().size(); ++i) {
      const auto& c = s.curves()[i];
      if (current.decomposition().coefficient(c.name) == 0) continue;
      const Rational degree = s.intersect(d, c.cls);
      if (!pick || degree < best) {
        pick = i;
        best = degree;
      }
    }
    if (!pick || best >= 0) {
      throw SurfaceError(ErrorKind::InvariantViolation, "nonzero negative part without a negative curve");
    }
    const TrackedCurve& c = s.curves()[*pick];
    const ContractionResult contraction = contract(s, {c.name});

    CurveCombination boundary = current.boundary();
    boundary.erase(c.name);
    const Rational self = s.intersect(c.cls, c.cls);
    MMPStep step{c.name,
                 self,
                 best,
                 s.intersect(s.canonical(), c.cls),
                 contraction.discrepancies.at(c.name),
                 best / self,
                 current.decomposition(),
                 PairModel(contraction.quotient, std::move(boundary))};
    trace.steps.push_back(std::move(step));
    trace.final_pair = trace.steps.back().after;
  }

  trace.final_model_nef = trace.final_pair.decomposition().negative_is_zero();
  const auto names = trace.contracted();
  if (!names.empty()) {
    trace.total_discrepancies = contraction_coefficients(pair.surface(), names, pair.log_canonical());
  }
  trace.final_klt = std::all_of(trace.total_discrepancies.begin(), trace.total_discrepancies.end(),
                                [](const auto& kv) { return kv.second > -1; }) &&
                    std::all_of(trace.final_pair.boundary().begin(), trace.final_pair.boundary().end(),
                                [](const auto& kv) { return kv.second < 1; });
  return trace;
}

CurveCombination crepant_boundary_of_output(const MMPTrace& trace) {
  CurveCombination b = trace.initial.boundary();
  for (const auto& [curve, a] : trace.total_discrepancies) b[curve] -= a;
  for (auto it = b.begin(); it != b.end();) it = it->second == 0 ? b.erase(it) : std::next(it);
  return b;
}

PkltCertificate pklt_certificate(const PairModel& pair) {
  PkltCertificate cert{false, 0, "", run_anticanonical_mmp(pair)};
  const MMPTrace& trace = cert.witness;
  auto scan = [&](const ZariskiDecomp& zd) {
    for (const auto& [curve, coeff] : zd.negative) cert.max_negative_coefficient = std::max(cert.max_negative_coefficient, coeff);
  };
  for (const auto& s : trace.steps) scan(s.before);
  scan(trace.final_pair.decomposition());

  if (!trace.final_model_nef) {
    cert.reason = "MMP did not reach a model-nef anticanonical class";
  } else if (!trace.final_klt) {
    cert.reason = "output pair is not klt";
  } else if (cert.max_negative_coefficient >= 1) {
    cert.reason = "negative part has a coefficient >= 1";
  } else {
    cert.certified = true;
    cert.reason = "klt output with model-nef anticanonical class and all N-coefficients < 1";
  }
  return cert;
}

std::vector<PointSpec> candidate_points(const SurfaceModel& model) {
  std::vector<PointSpec> points;
  const auto& curves = model.curves();
  for (const auto& c : curves) points.push_back(PointSpec{{{c.name, 1}}});
  for (std::size_t i = 0; i < curves.size(); ++i) {
    for (std::size_t j = i + 1; j < curves.size(); ++j) {
      if (model.intersect(curves[i].cls, curves[j].cls) >= 1) {
        points.push_back(PointSpec{{{curves[i].name, 1}, {curves[j].name, 1}}});
      }
    }
  }
  return points;
}

namespace {

void walk(const SurfaceModel& model, std::size_t max_depth, Chain& chain,
          const std::function<void(const Chain&, const SurfaceModel&)>& visit) {
  if (chain.size() >= max_depth) return;
  for (const auto& p : candidate_points(model)) {
    chain.push_back(p);
    const SurfaceModel child = blow_up(model, p, chain_exceptional_name(chain.size()));
    visit(chain, child);
    walk(child, max_depth, chain, visit);
    chain.pop_back();
  }
}

}  // namespace

void for_each_chain(const SurfaceModel& model, std::size_t max_depth,
                    const std::function<void(const Chain&, const SurfaceModel&)>& visit) {
  Chain chain;
  walk(model, max_depth, chain, visit);
}

LctSigmaEstimate lct_sigma_estimate(const PairModel& pair, std::size_t max_depth) {
  LctSigmaEstimate est;
  const auto& negative = pair.decomposition().negative;
  const auto& boundary = pair.boundary();

  auto consider_ratio = [&](const Rational& a, const Rational& s) -> bool {
    const Rational ratio = a / s;
    if (!est.min_ratio || ratio < *est.min_ratio) {
      est.min_ratio = ratio;
      return true;
    }
    return false;
  };

  for (const auto& c : pair.surface().curves()) {
    const Rational s = coefficient_in(negative, c.name);
    if (s <= 0) continue;
    const Rational a = 1 - coefficient_in(boundary, c.name);
    const Rational gap = (a - s) / s;
    if (!est.epsilon || gap < *est.epsilon) est.epsilon = gap;
    if (consider_ratio(a, s)) est.argmin_curve = c.name;
  }
  if (est.epsilon) est.certified_lower_bound = 1 + *est.epsilon;
  if (negative.empty()) return est;

  for_each_chain(pair.surface(), max_depth, [&](const Chain& chain, const SurfaceModel&) {
    ++est.chains_examined;
    // Pullbacks of a Zariski decomposition under point blow-ups stay Zariski decompositions,
    // so sigma along the chain is the order of the pulled-back negative part.
    const Rational s = transport(negative, chain, 0);
    if (s <= 0) return;
    const Rational a = 1 - transport(boundary, chain, -1);
    if (est.epsilon && a - s < *est.epsilon * s) ++est.gap_violations;
    if (consider_ratio(a, s)) {
      est.argmin = chain;
      est.argmin_curve.clear();
    }
  });
  return est;
}

FactorizationReport check_mmp_redundant_factorization(const MMPTrace& trace) {
  FactorizationReport report;
  const PairModel* before = &trace.initial;
  for (const auto& step : trace.steps) {
    FactorizationStep fs;
    fs.curve = step.curve;
    const SurfaceModel& s = before->surface();
    const bool smooth_blow_down = s.smooth() && step.self_intersection == -1 && step.canonical_degree == -1;
    if (!smooth_blow_down) {
      fs.verdict = "resolution-identical";
    } else {
      const auto& e = s.curve(step.curve).cls;
      for (const auto& c : s.curves()) {
        if (c.name == step.curve) continue;
        const Rational m = s.intersect(c.cls, e);
        if (m > 0) fs.point.incidences[c.name] = static_cast<int>(m.get_num().get_si());
      }
      fs.detail = is_redundant_point(step.after, fs.point);
      fs.verdict = fs.detail.redundant ? "redundant" : "not-redundant";
      report.ok = report.ok && fs.detail.redundant;
    }
    report.steps.push_back(std::move(fs));
    before = &step.after;
  }
  return report;
}

}  // namespace surfmmp
