#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "surfmmp/lattice.hpp"

namespace surfmmp {

// Formal R-combination of tracked curves, keyed by curve name.
using CurveCombination = std::map<std::string, Rational>;

struct TrackedCurve {
  std::string name;
  DivisorClass cls;
  std::optional<std::size_t> exceptional_of;  // index into the blow-up history
};

// A point given by its local multiplicities on tracked curves; empty means off every curve.
struct PointSpec {
  std::map<std::string, int> incidences;

  int multiplicity(std::string_view curve) const;
  friend bool operator==(const PointSpec&, const PointSpec&) = default;
};

struct BlowUpRecord {
  PointSpec point;
  std::string exceptional_name;
  Rational log_discrepancy_over_root;  // A of the exceptional over the root surface, boundary 0
};

// Numerical model of a projective surface: intersection lattice, canonical class,
// tracked prime curves and classes declared nef by construction.
class SurfaceModel {
 public:
  SurfaceModel() = default;

  // Validates adjunction integrality (smooth models only) and nefness of the axioms
  // against every tracked curve. Throws InvariantViolation.
  SurfaceModel(IntersectionLattice lattice, DivisorClass canonical, std::vector<TrackedCurve> curves,
               std::vector<DivisorClass> nef_axioms, std::vector<BlowUpRecord> history = {}, bool smooth = true);

  const IntersectionLattice& lattice() const { return lattice_; }
  std::size_t rank() const { return lattice_.rank(); }
  const DivisorClass& canonical() const { return canonical_; }
  const std::vector<TrackedCurve>& curves() const { return curves_; }
  const std::vector<DivisorClass>& nef_axioms() const { return nef_axioms_; }
  const std::vector<BlowUpRecord>& history() const { return history_; }
  // False once a contraction has produced (possibly) singular points.
  bool smooth() const { return smooth_; }

  std::optional<std::size_t> curve_index(std::string_view name) const;
  const TrackedCurve& curve(std::string_view name) const;  // throws UnknownName

  Rational intersect(const DivisorClass& a, const DivisorClass& b) const {
    return surfmmp::intersect(lattice_, a, b);
  }
  Rational intersect(std::string_view a, std::string_view b) const {
    return intersect(curve(a).cls, curve(b).cls);
  }

  DivisorClass class_of(const CurveCombination& combination) const;
  DivisorClass zero_class() const { return DivisorClass(rank()); }

  // Arithmetic genus (C^2 + K.C)/2 + 1 of a tracked curve.
  Rational arithmetic_genus(std::string_view name) const;

 private:
  IntersectionLattice lattice_;
  DivisorClass canonical_;
  std::vector<TrackedCurve> curves_;
  std::vector<DivisorClass> nef_axioms_;
  std::vector<BlowUpRecord> history_;
  bool smooth_ = true;
};

// Blow-up at a point. Child basis is (pulled-back parent basis, E); strict transforms are
// f*C - m_C(p) E and K_child = f*K + E. Throws InconsistentIncidence or UnknownName.
SurfaceModel blow_up(const SurfaceModel& model, const PointSpec& p, const std::string& name);

// Pullback of a class from any ancestor reached by blow-ups only (zero padding).
DivisorClass pullback(const SurfaceModel& child, const DivisorClass& parent_class);

// Pullback of a curve combination through the child's last blow-up:
// f*C = C' + m_C(p) E.
CurveCombination pullback_combination(const SurfaceModel& child, const CurveCombination& parent);

struct ContractionResult {
  SurfaceModel quotient;
  std::map<std::string, Rational> discrepancies;  // K_X = g*K_Y + sum a_i C_i
  bool is_klt = false;
  bool is_terminal = false;
  RatMatrix embedding;  // parent_rank x quotient_rank; column k is g* of quotient basis k
  RatMatrix descent;    // quotient_rank x parent_rank; y = descent * x

  DivisorClass descend(const DivisorClass& parent_class) const;
  DivisorClass pullback(const DivisorClass& quotient_class) const;
};

// Contracts a negative definite set of tracked curves. Throws NotContractible.
ContractionResult contract(const SurfaceModel& model, const std::vector<std::string>& curves);

// Coefficients a with (L - sum a_i C_i).C_j = 0 for the named curves.
std::map<std::string, Rational> contraction_coefficients(const SurfaceModel& model,
                                                         const std::vector<std::string>& curves,
                                                         const DivisorClass& log_canonical);

// A chain of blow-ups: the k-th exceptional (1-based) is named "F<k>".
using Chain = std::vector<PointSpec>;
std::string chain_exceptional_name(std::size_t k);
SurfaceModel blow_up_chain(const SurfaceModel& model, const Chain& chain);

// ord_E of the pullback of an effective curve combination, E = last exceptional of the chain.
Rational order_along_chain(const SurfaceModel& model, const CurveCombination& divisor, const Chain& chain);

// A_{X,boundary}(E) for E the last exceptional divisor of the chain, by crepant boundary
// transport: each new exceptional enters with coefficient mult_p(B) - 1.
Rational log_discrepancy_chain(const SurfaceModel& model, const CurveCombination& boundary, const Chain& chain);

// mult_p of a combination at a point: sum of m_C(p) * coefficient(C).
Rational multiplicity_at(const CurveCombination& combination, const PointSpec& p);

}  // namespace surfmmp
