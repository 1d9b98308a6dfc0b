#include <array>
#include <map>
#include <string>

#include "surfmmp/scene.hpp"

namespace surfmmp {

namespace {

std::vector<Rational> ints(std::initializer_list<int> values) {
  std::vector<Rational> v;
  for (int x : values) v.emplace_back(x);
  return v;
}

std::vector<std::vector<Rational>> diagonal(const std::vector<int>& d) {
  std::vector<std::vector<Rational>> g(d.size(), std::vector<Rational>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) g[i][i] = d[i];
  return g;
}

Scene projective_plane(std::string meta) {
  Scene s;
  s.meta = std::move(meta);
  s.basis = {"H"};
  s.gram = {ints({1})};
  s.canonical = ints({-3});
  return s;
}

PointSpec point(std::initializer_list<std::pair<const std::string, int>> incidences) { return PointSpec{incidences}; }

Scene trivial() {
  Scene s = projective_plane("P^2 with one tracked line; -K = 3H is nef, so the negative part is empty.");
  s.curves = {{"L", ints({1})}};
  s.nef_axioms = {{0, ints({1})}};
  return s;
}

Scene line_boundary() {
  Scene s = projective_plane("P^2 with a line L of boundary coefficient 1; -(K + L) = 2H is nef.");
  s.curves = {{"L", ints({1})}};
  s.boundary = {{"L", 1}};
  s.nef_axioms = {{0, ints({1})}};
  return s;
}

Scene two_lines_blown_up() {
  Scene s = projective_plane(
      "P^2 with boundary L1 + L2 blown up at their intersection; -(K + Delta) = f*H + E, and the MMP "
      "contracts E back to a redundant point.");
  s.curves = {{"L1", ints({1})}, {"L2", ints({1})}};
  s.blowups = {{"E", point({{"L1", 1}, {"L2", 1}})}};
  s.boundary = {{"L1", 1}, {"L2", 1}};
  s.nef_axioms = {{0, ints({1})}};
  return s;
}

}  // namespace

// Dual Hesse configuration. Points 1..9 are [1, z^i, z^j] (index 3i + j + 1) for a primitive
// cube root of unity z; points 10, 11, 12 are [1,0,0], [0,1,0], [0,0,1].
// Lines 1..3: y = z^i x; lines 4..6: z = z^j x; lines 7..9: z = z^k y.
const std::array<std::array<int, 4>, 9> kDualHesseLines = {{
    {1, 2, 3, 12},
    {4, 5, 6, 12},
    {7, 8, 9, 12},
    {1, 4, 7, 11},
    {2, 5, 8, 11},
    {3, 6, 9, 11},
    {1, 5, 9, 10},
    {2, 6, 7, 10},
    {3, 4, 8, 10},
}};

namespace {

Scene example_41() {
  Scene s = projective_plane(
      "Blow-up of P^2 at the 12 points of the dual Hesse configuration; the strict transforms L1..L9 of "
      "the nine 4-point lines are disjoint (-3)-curves summing to -3K.");
  for (int i = 1; i <= 9; ++i) s.curves.push_back({"L" + std::to_string(i), ints({1})});
  for (int p = 1; p <= 12; ++p) {
    PointSpec spec;
    for (std::size_t line = 0; line < kDualHesseLines.size(); ++line) {
      for (int q : kDualHesseLines[line]) {
        if (q == p) spec.incidences["L" + std::to_string(line + 1)] = 1;
      }
    }
    s.blowups.push_back({"E" + std::to_string(p), spec});
  }
  s.nef_axioms = {{0, ints({1})}};
  return s;
}

Scene example_42() {
  Scene s;
  s.meta =
      "Rational surface S = P^2 blown up at 9 (infinitely near) points carrying an affine E8 configuration "
      "C1..C9 of (-2)-curves with marks (1,2,3,4,5,6,4,3,2) and -K_S = sum a_i C_i nef; X blows up "
      "C6 cap C5 (marks 6 and 5).";
  s.basis = {"H", "E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8", "E9"};
  s.gram = diagonal({1, -1, -1, -1, -1, -1, -1, -1, -1, -1});
  s.canonical = ints({-3, 1, 1, 1, 1, 1, 1, 1, 1, 1});
  auto root = [](int i) {  // E_i - E_{i+1}
    std::vector<Rational> v(10);
    v[i] = 1;
    v[i + 1] = -1;
    return v;
  };
  s.curves = {
      {"C1", root(8)}, {"C2", root(7)}, {"C3", root(6)}, {"C4", root(5)},
      {"C5", root(4)}, {"C6", root(3)}, {"C7", root(2)}, {"C8", ints({1, -1, -1, -1, 0, 0, 0, 0, 0, 0})},
      {"C9", root(1)},
  };
  s.blowups = {{"E", point({{"C6", 1}, {"C5", 1}})}};
  s.nef_axioms = {{0, ints({3, -1, -1, -1, -1, -1, -1, -1, -1, -1})}};
  return s;
}

Scene example_43() {
  Scene s = projective_plane(
      "Halphen-type surface S = P^2 blown up at 9 points of a cuspidal cubic (tracked as C, with -K_S = C "
      "nef); X blows up the cusp, where C has multiplicity 2.");
  s.curves = {{"C", ints({3})}};
  for (int i = 1; i <= 9; ++i) s.blowups.push_back({"E" + std::to_string(i), point({{"C", 1}})});
  s.blowups.push_back({"E", point({{"C", 2}})});
  s.nef_axioms = {{0, ints({1})}, {9, ints({3, -1, -1, -1, -1, -1, -1, -1, -1, -1})}};
  return s;
}

const std::map<std::string, Scene (*)()>& registry() {
  static const std::map<std::string, Scene (*)()> scenes = {
      {"example-4.1", &example_41},     {"example-4.2", &example_42},
      {"example-4.3", &example_43},     {"example-trivial", &trivial},
      {"p2-line-boundary", &line_boundary}, {"p2-two-lines-blown-up", &two_lines_blown_up},
  };
  return scenes;
}

}  // namespace

std::vector<std::string> builtin_scene_names() {
  std::vector<std::string> names;
  for (const auto& [name, make] : registry()) names.push_back(name);
  return names;
}

std::optional<Scene> builtin_scene(std::string_view name) {
  auto it = registry().find(std::string(name));
  if (it == registry().end()) return std::nullopt;
  return it->second();
}

}  // namespace surfmmp
