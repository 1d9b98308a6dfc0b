#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "surfmmp/pairs.hpp"

namespace surfmmp {

inline constexpr std::string_view kSceneFormat = "surface-scene/1";

struct SceneCurve {
  std::string name;
  std::vector<Rational> cls;
  friend bool operator==(const SceneCurve&, const SceneCurve&) = default;
};

struct SceneBlowUp {
  std::string name;
  PointSpec point;
  friend bool operator==(const SceneBlowUp&, const SceneBlowUp&) = default;
};

// A class declared nef on the model after `stage` blow-ups; pulled back afterwards.
struct SceneNefAxiom {
  std::size_t stage = 0;
  std::vector<Rational> cls;
  friend bool operator==(const SceneNefAxiom&, const SceneNefAxiom&) = default;
};

// On-disk description of a pair: a base lattice, a replayed list of blow-ups,
// a boundary on the final tracked curves and nef axioms.
struct Scene {
  std::string meta;
  std::vector<std::string> basis;
  std::vector<std::vector<Rational>> gram;
  std::vector<Rational> canonical;
  std::vector<SceneCurve> curves;
  std::vector<SceneBlowUp> blowups;
  CurveCombination boundary;
  std::vector<SceneNefAxiom> nef_axioms;
  friend bool operator==(const Scene&, const Scene&) = default;
};

// Throws SurfaceError(Parse) with the byte position or JSON path of the problem;
// unknown fields are rejected.
Scene parse_scene(std::string_view text);
std::string serialize_scene(const Scene& scene);

// Replays the blow-ups and validates every model invariant.
SurfaceModel build_surface(const Scene& scene);
PairModel build_pair(const Scene& scene);

// `source` is either a built-in scene name or a file path.
Scene read_scene(const std::string& source);
PairModel load_scene(const std::string& source);

std::vector<std::string> builtin_scene_names();
// Points (1-based) on each line of the dual Hesse configuration used by "example-4.1".
extern const std::array<std::array<int, 4>, 9> kDualHesseLines;

std::optional<Scene> builtin_scene(std::string_view name);

}  // namespace surfmmp
