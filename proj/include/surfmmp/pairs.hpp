#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "surfmmp/zariski.hpp"

namespace surfmmp {

// (X, Delta) with Delta supported on tracked curves, coefficients in [0, 1].
// Construction decomposes -(K + Delta) and throws if that fails.
class PairModel {
 public:
  PairModel(SurfaceModel surface, CurveCombination boundary);

  const SurfaceModel& surface() const { return surface_; }
  const CurveCombination& boundary() const { return boundary_; }
  Rational boundary_coefficient(std::string_view curve) const;

  DivisorClass log_canonical() const;   // K + Delta
  DivisorClass anticanonical() const;   // -(K + Delta)
  const ZariskiDecomp& decomposition() const { return zd_; }

 private:
  SurfaceModel surface_;
  CurveCombination boundary_;
  ZariskiDecomp zd_;
};

// Strict-transform boundary on a blow-up of the pair's surface (exceptionals get 0).
PairModel pair_on_blow_up(const PairModel& pair, const PointSpec& p, const std::string& name);

// A_{X,B}(E) - sigma_E(-(K + B)) for a sub-boundary B (any signs), E the last
// exceptional of the chain. Works for pairs and for crepant pullbacks of MMP outputs.
Rational potential_log_discrepancy(const SurfaceModel& surface, const CurveCombination& boundary,
                                   const Chain& chain);
Rational potential_log_discrepancy(const SurfaceModel& surface, const CurveCombination& boundary,
                                   std::string_view curve);

Rational log_discrepancy(const PairModel& pair, const Chain& chain);
Rational log_discrepancy(const PairModel& pair, std::string_view curve);
Rational potential_log_discrepancy(const PairModel& pair, const Chain& chain);
Rational potential_log_discrepancy(const PairModel& pair, std::string_view curve);

struct RedundancyReport {
  bool redundant = false;
  Rational mult_negative;  // mult_p N
  Rational mult_boundary;  // mult_p Delta
};

RedundancyReport is_redundant_point(const PairModel& pair, const PointSpec& p);

// f*N + (mult_p Delta - 1) E as a combination on the blow-up; may have a negative E coefficient.
CurveCombination transported_negative_part(const PairModel& pair, const PointSpec& p, const std::string& exceptional);

struct RedundantBlowUp {
  PairModel pair;
  ZariskiDecomp transported;
};

// Throws NotRedundant when p is not a redundant point.
RedundantBlowUp redundant_blow_up(const PairModel& pair, const PointSpec& p, const std::string& name);

struct MMPStep {
  std::string curve;
  Rational self_intersection;     // C^2 at the step
  Rational anticanonical_degree;  // -(K + Delta).C at the step, < 0
  Rational canonical_degree;      // K.C at the step
  Rational discrepancy;           // a in K = g*K' + a C
  Rational exceptional_coefficient;  // c in D = g*(g_* D) + c C for D = -(K + Delta)
  ZariskiDecomp before;
  PairModel after;
};

struct MMPTrace {
  PairModel initial;
  std::vector<MMPStep> steps;
  PairModel final_pair;
  bool final_klt = true;
  bool final_model_nef = true;
  // Over the initial model: K + Delta = g*(K' + Delta') + sum a_C C.
  std::map<std::string, Rational> total_discrepancies;

  std::vector<std::string> contracted() const;
};

// Contracts one curve of Supp N per step: most negative -(K + Delta).C, lowest index on ties.
MMPTrace run_anticanonical_mmp(const PairModel& pair);

// Sub-boundary B on the initial model with K + B = g*(K' + Delta'), so that divisors over the
// MMP output can be evaluated on the initial model.
CurveCombination crepant_boundary_of_output(const MMPTrace& trace);

struct PkltCertificate {
  bool certified = false;
  Rational max_negative_coefficient;
  std::string reason;
  MMPTrace witness;
};

PkltCertificate pklt_certificate(const PairModel& pair);

// Candidate points for divisor enumeration: {C:1} for every tracked curve, then {C:1, C':1}
// for every pair with C.C' >= 1, in curve order.
std::vector<PointSpec> candidate_points(const SurfaceModel& model);

// Depth-first walk over every chain of length 1..max_depth built from candidate points.
// The visitor sees the chain and the blown-up model.
void for_each_chain(const SurfaceModel& model, std::size_t max_depth,
                    const std::function<void(const Chain&, const SurfaceModel&)>& visit);

struct LctSigmaEstimate {
  std::optional<Rational> min_ratio;              // nullopt = +infinity
  std::optional<Rational> epsilon;                // nullopt = +infinity (no sigma > 0)
  std::optional<Rational> certified_lower_bound;  // 1 + epsilon
  std::size_t chains_examined = 0;
  std::size_t gap_violations = 0;  // chains with A - sigma < epsilon * sigma
  Chain argmin;
  std::string argmin_curve;  // set when the minimum is attained on a tracked curve
};

// Ratio A/sigma over tracked curves and enumerated chains of depth <= max_depth.
// epsilon = min over tracked C with sigma_C > 0 of (A(C) - sigma_C) / sigma_C.
LctSigmaEstimate lct_sigma_estimate(const PairModel& pair, std::size_t max_depth);

struct FactorizationStep {
  std::string curve;
  std::string verdict;  // "redundant", "not-redundant", "resolution-identical"
  PointSpec point;      // image point downstairs, for (-1)-curve steps
  RedundancyReport detail;
};

struct FactorizationReport {
  bool ok = true;
  std::vector<FactorizationStep> steps;
};

FactorizationReport check_mmp_redundant_factorization(const MMPTrace& trace);

}  // namespace surfmmp
