#include <doctest.h>

#include <algorithm>

#include "oracles.hpp"
#include "surfmmp/dualgraph.hpp"
#include "surfmmp/error.hpp"
#include "surfmmp/zariski.hpp"

using namespace surfmmp;
using namespace surfmmp::testing;

namespace {

std::vector<Rational> q(std::initializer_list<std::pair<long, long>> v) {
  std::vector<Rational> out;
  for (auto [n, d] : v) out.push_back(Rational(n) / d);
  return out;
}

// b from K.E_j = -2 - w_j through the independent solver.
std::vector<Rational> b_oracle(const DualGraph& g) {
  std::vector<Rational> rhs;
  for (int w : g.weights()) rhs.emplace_back(2 + w);
  return *oracle_solve(g.gram(), rhs);
}

}  // namespace

TEST_CASE("coefficients of listed chains") {
  CHECK(resolve_coefficients(DualGraph::chain({-2, -4})) == q({{2, 7}, {4, 7}}));
  CHECK(resolve_coefficients(DualGraph::chain({-2, -3, -2})) == q({{1, 4}, {1, 2}, {1, 4}}));
  CHECK(resolve_coefficients(DualGraph::chain({-2, -2, -3, -2})) == q({{2, 11}, {4, 11}, {6, 11}, {3, 11}}));
  CHECK(resolve_coefficients(DualGraph::chain({-3, -3})) == q({{1, 2}, {1, 2}}));
  for (int n = 3; n <= 12; ++n) CHECK(resolve_coefficients(DualGraph::chain({-n})) == q({{n - 2, n}}));
  for (int alpha = 1; alpha <= 8; ++alpha) {
    std::vector<int> w(alpha, -2);
    w.push_back(-3);
    const auto b = resolve_coefficients(DualGraph::chain(w));
    for (int k = 1; k <= alpha + 1; ++k) CHECK(b[k - 1] == Rational(k) / (2 * alpha + 3));
  }
}

TEST_CASE("redundant points from edge sums") {
  CHECK_FALSE(has_redundant_point(DualGraph::chain({-2, -4})));
  CHECK(has_redundant_point(DualGraph::chain({-3, -3})));
  CHECK(has_redundant_point(DualGraph::chain({-2, -5})));
  CHECK(classify(DualGraph::chain({-2, -5})).max_edge_sum == 1);
  CHECK_FALSE(has_redundant_point(DualGraph::chain({-2, -2, -2})));
}

TEST_CASE("classification") {
  const auto v = classify(DualGraph::chain({-2, -2, -3, -2}));
  CHECK(v.matched_family == "-2 -2 -3 -2");
  CHECK(v.max_edge_sum == Rational(10, 11));
  CHECK(v.redundant_free);
  CHECK(v.klt);
  CHECK_FALSE(v.canonical);

  const auto single = classify(DualGraph::chain({-7}));
  CHECK(single.matched_family == "-n (n>=3)");
  CHECK(single.max_edge_sum == 0);

  CHECK(classify(DualGraph::chain({-2, -2, -2})).matched_family == "canonical");
  CHECK(classify(DualGraph::chain({-2, -2, -3})).matched_family == "(-2)^a -3, a=2");
  CHECK_FALSE(classify(DualGraph::chain({-3, -3})).matched_family);

  // D4 and E8 are canonical
  const DualGraph d4({-2, -2, -2, -2}, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(classify(d4).canonical);
  CHECK(classify(d4).matched_family == "canonical");
  const DualGraph e8({-2, -2, -2, -2, -2, -2, -2, -2}, {{0, 1}, {0, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 6}, {6, 7}});
  CHECK(classify(e8).canonical);
}

TEST_CASE("orientation invariance") {
  const std::vector<std::vector<int>> chains = {{-2, -4}, {-2, -2, -3, -2}, {-3, -2, -5}, {-2, -3, -3}, {-4, -2, -2}};
  for (const auto& w : chains) {
    const std::vector<int> r(w.rbegin(), w.rend());
    const auto a = classify(DualGraph::chain(w));
    const auto b = classify(DualGraph::chain(r));
    std::vector<Rational> br(b.b.rbegin(), b.b.rend());
    CHECK(a.b == br);
    CHECK(a.matched_family == b.matched_family);
    CHECK(a.redundant_free == b.redundant_free);
    CHECK(normalized_chain(w) == normalized_chain(r));
    CHECK(canonical_form(DualGraph::chain(w)) == canonical_form(DualGraph::chain(r)));
  }
}

TEST_CASE("canonical form identifies relabelled trees") {
  const DualGraph a({-3, -2, -2, -2}, {{0, 1}, {0, 2}, {0, 3}});
  const DualGraph b({-2, -2, -3, -2}, {{2, 0}, {2, 1}, {3, 2}});
  CHECK(canonical_form(a) == canonical_form(b));
  const DualGraph c({-2, -3, -2, -2}, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(canonical_form(a) != canonical_form(c));
}

TEST_CASE("invalid graphs are refused") {
  CHECK_THROWS_AS(DualGraph::chain({-1, -2}), SurfaceError);
  CHECK_THROWS_AS(DualGraph({-2, -2}, {}), SurfaceError);
  CHECK_THROWS_AS(DualGraph({-2, -2}, {{0, 1}, {1, 0}}), SurfaceError);
  CHECK_THROWS_AS(DualGraph({-2, -2, -2}, {{0, 1}, {1, 2}, {2, 0}}), SurfaceError);  // not negative definite
  CHECK_FALSE(is_valid_dual_graph({-2, -2, -2, -2, -2}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}));  // affine D4
  CHECK(is_valid_dual_graph({-3, -2, -2, -2, -2}, {{0, 1}, {0, 2}, {0, 3}, {0, 4}}));
}

TEST_CASE("graph coefficients agree with the Zariski decomposition of the germ") {
  const std::vector<DualGraph> graphs = {
      DualGraph::chain({-2, -4}), DualGraph::chain({-2, -2, -3, -2}), DualGraph::chain({-3, -5, -2}),
      DualGraph({-3, -2, -2, -2}, {{0, 1}, {0, 2}, {0, 3}}), DualGraph::chain({-6})};
  for (const auto& g : graphs) {
    // basis = the exceptional curves; K is determined by adjunction, -K is nef relative to them after
    // subtracting N, and the declared nef class is g*(-K_S) = -K - N.
    const std::size_t n = g.size();
    std::vector<std::string> names;
    std::vector<TrackedCurve> curves;
    for (std::size_t i = 0; i < n; ++i) {
      names.push_back("E" + std::to_string(i + 1));
      curves.push_back({names.back(), DivisorClass::basis_vector(n, i), std::nullopt});
    }
    const IntersectionLattice lattice(names, g.gram());
    std::vector<Rational> k_dot(n);
    for (std::size_t i = 0; i < n; ++i) k_dot[i] = -2 - g.weights()[i];
    const DivisorClass k(*oracle_solve(g.gram(), k_dot));
    const SurfaceModel germ(lattice, k, curves, {}, {}, false);
    const ZariskiDecomp zd = zariski_decompose(germ, -k);
    const auto b = resolve_coefficients(g);
    CHECK(b == b_oracle(g));
    for (std::size_t i = 0; i < n; ++i) CHECK(zd.coefficient(names[i]) == b[i]);
    CHECK(zd.positive.is_zero());
  }
}

TEST_CASE("lowering a weight never lowers a coefficient") {
  const std::vector<std::vector<int>> chains = {{-2, -3}, {-2, -2, -3, -2}, {-3, -2, -2}, {-2, -4, -2}};
  for (const auto& w : chains) {
    const auto base = resolve_coefficients(DualGraph::chain(w));
    for (std::size_t v = 0; v < w.size(); ++v) {
      auto lower = w;
      --lower[v];
      const auto b = resolve_coefficients(DualGraph::chain(lower));
      for (std::size_t i = 0; i < w.size(); ++i) CHECK(b[i] >= base[i]);
    }
  }
}

TEST_CASE("enumeration at small bounds") {
  SUBCASE("(4, -4)") {
    const auto r = enumerate_and_verify(4, -4);
    CHECK(r.ok);
    CHECK(r.missing.empty());
    CHECK(r.unexpected.empty());
    const std::vector<std::string> expected = {"chain[-2,-3,-2,-2]", "chain[-2,-3,-2]", "chain[-3,-2,-2,-2]",
                                               "chain[-3,-2,-2]",    "chain[-3,-2]",    "chain[-3]",
                                               "chain[-4,-2]",       "chain[-4]"};
    auto found = r.found;
    std::sort(found.begin(), found.end());
    CHECK(found == expected);
    CHECK(r.monotonicity_violations.empty());
    CHECK(r.canonical == 5);  // A1, A2, A3, A4, D4
  }
  SUBCASE("(1, -8)") {
    const auto r = enumerate_and_verify(1, -8);
    CHECK(r.ok);
    CHECK(r.redundant_free_noncanonical == 6);
    CHECK(r.canonical == 1);
  }
  CHECK_THROWS_AS(enumerate_and_verify(0, -3), SurfaceError);
}

TEST_CASE("listed families within bounds") {
  const auto f = listed_families(3, -4);
  CHECK(std::find(f.begin(), f.end(), normalized_chain({-2, -4})) != f.end());
  CHECK(std::find(f.begin(), f.end(), normalized_chain({-2, -2, -3, -2})) == f.end());
  CHECK(std::find(f.begin(), f.end(), std::vector<int>{-5}) == f.end());
}
