#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "surfmmp/birational.hpp"

namespace surfmmp {

// D = P + N with N = sum sigma_C C over tracked curves. P is certified only against the
// tracked curves of the model ("model-nef"); nef_scope records what was checked.
struct ZariskiDecomp {
  DivisorClass positive;
  CurveCombination negative;  // strictly positive coefficients only
  NegDefCertificate certificate;
  std::string nef_scope;

  Rational coefficient(std::string_view curve) const;
  bool negative_is_zero() const { return negative.empty(); }
};

// Fujita-style iteration: add every tracked curve C with (D - N).C < 0 to the support,
// re-solve N on the support, repeat until stable.
// Throws NoZariskiDecomposition when a support fails negative definiteness or N < 0.
ZariskiDecomp zariski_decompose(const SurfaceModel& model, const DivisorClass& divisor);

// Empty list when all decomposition invariants hold on the model.
std::vector<std::string> decomposition_violations(const SurfaceModel& model, const DivisorClass& divisor,
                                                  const ZariskiDecomp& zd);

// Same P and same N after dropping zero coefficients.
bool same_decomposition(const ZariskiDecomp& a, const ZariskiDecomp& b);

// sigma_E(D) for E the last exceptional of a non-empty chain.
Rational sigma(const SurfaceModel& model, const DivisorClass& divisor, const Chain& chain);
// sigma_C(D) for a tracked curve C of the model itself.
Rational sigma(const SurfaceModel& model, const DivisorClass& divisor, std::string_view curve);

// Upstairs decomposition after blowing up p, without re-solving:
// P~ = f*P, N~ = f*N + (boundary_mult - 1) E, E the last exceptional of `child`.
// Throws NotRedundant when the E coefficient is negative.
ZariskiDecomp transport_redundant(const SurfaceModel& child, const ZariskiDecomp& down, const PointSpec& p,
                                  const Rational& boundary_mult);

}  // namespace surfmmp
