#include "surfmmp/scene.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "surfmmp/error.hpp"

namespace surfmmp {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw SurfaceError(ErrorKind::Parse, "at " + path + ": " + what);
}

void expect_fields(const Json& j, const std::string& path, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) schema_error(path, "expected an object");
  std::set<std::string> allowed;
  for (const char* k : required) {
    allowed.insert(k);
    if (!j.contains(k)) schema_error(path, std::string("missing field '") + k + "'");
  }
  for (const char* k : optional) allowed.insert(k);
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) schema_error(path, "unknown field '" + key + "'");
  }
}

std::string get_string(const Json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "expected a string");
  return j.get<std::string>();
}

Rational get_rational(const Json& j, const std::string& path) {
  if (!j.is_string()) schema_error(path, "rationals are written as \"p/q\" strings");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const SurfaceError& e) {
    schema_error(path, e.what());
  }
}

long long get_integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  return j.get<long long>();
}

std::vector<Rational> get_vector(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array");
  std::vector<Rational> v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(get_rational(j[i], path + "/" + std::to_string(i)));
  return v;
}

Json vector_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

Json point_json(const PointSpec& p) {
  Json a = Json::array();
  for (const auto& [curve, mult] : p.incidences) a.push_back(Json{{"curve", curve}, {"mult", mult}});
  return a;
}

PointSpec get_point(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of incidences");
  PointSpec p;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string ip = path + "/" + std::to_string(i);
    expect_fields(j[i], ip, {"curve", "mult"});
    const auto mult = get_integer(j[i]["mult"], ip + "/mult");
    if (mult < 1) schema_error(ip + "/mult", "multiplicity must be a positive integer");
    if (!p.incidences.emplace(get_string(j[i]["curve"], ip + "/curve"), static_cast<int>(mult)).second) {
      schema_error(ip, "curve listed twice at one point");
    }
  }
  return p;
}

}  // namespace

Scene parse_scene(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SurfaceError(ErrorKind::Parse, "byte " + std::to_string(e.byte) + ": " + e.what());
  }
  expect_fields(root, "/", {"format", "base"}, {"meta", "blowups", "boundary", "nef_axioms"});
  if (get_string(root["format"], "/format") != kSceneFormat) {
    schema_error("/format", "unsupported format, expected '" + std::string(kSceneFormat) + "'");
  }

  Scene scene;
  if (root.contains("meta")) scene.meta = get_string(root["meta"], "/meta");

  const Json& base = root["base"];
  expect_fields(base, "/base", {"rank", "basis", "gram", "canonical", "curves"});
  const auto rank = get_integer(base["rank"], "/base/rank");
  if (rank < 1) schema_error("/base/rank", "rank must be positive");
  const auto n = static_cast<std::size_t>(rank);
  if (!base["basis"].is_array() || base["basis"].size() != n) schema_error("/base/basis", "expected rank names");
  for (std::size_t i = 0; i < n; ++i) scene.basis.push_back(get_string(base["basis"][i], "/base/basis"));
  if (!base["gram"].is_array() || base["gram"].size() != n) schema_error("/base/gram", "expected rank rows");
  for (std::size_t i = 0; i < n; ++i) {
    const std::string rp = "/base/gram/" + std::to_string(i);
    scene.gram.push_back(get_vector(base["gram"][i], rp));
    if (scene.gram.back().size() != n) schema_error(rp, "expected rank entries");
  }
  scene.canonical = get_vector(base["canonical"], "/base/canonical");
  if (scene.canonical.size() != n) schema_error("/base/canonical", "expected rank entries");
  if (!base["curves"].is_array()) schema_error("/base/curves", "expected an array");
  for (std::size_t i = 0; i < base["curves"].size(); ++i) {
    const std::string cp = "/base/curves/" + std::to_string(i);
    const Json& c = base["curves"][i];
    expect_fields(c, cp, {"name", "class"});
    scene.curves.push_back({get_string(c["name"], cp + "/name"), get_vector(c["class"], cp + "/class")});
    if (scene.curves.back().cls.size() != n) schema_error(cp + "/class", "expected rank entries");
  }

  if (root.contains("blowups")) {
    const Json& b = root["blowups"];
    if (!b.is_array()) schema_error("/blowups", "expected an array");
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::string bp = "/blowups/" + std::to_string(i);
      expect_fields(b[i], bp, {"name", "point"});
      scene.blowups.push_back({get_string(b[i]["name"], bp + "/name"), get_point(b[i]["point"], bp + "/point")});
    }
  }
  if (root.contains("boundary")) {
    const Json& b = root["boundary"];
    if (!b.is_array()) schema_error("/boundary", "expected an array");
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::string bp = "/boundary/" + std::to_string(i);
      expect_fields(b[i], bp, {"curve", "coeff"});
      const auto name = get_string(b[i]["curve"], bp + "/curve");
      if (!scene.boundary.emplace(name, get_rational(b[i]["coeff"], bp + "/coeff")).second) {
        schema_error(bp, "curve listed twice in the boundary");
      }
    }
  }
  if (root.contains("nef_axioms")) {
    const Json& a = root["nef_axioms"];
    if (!a.is_array()) schema_error("/nef_axioms", "expected an array");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string ap = "/nef_axioms/" + std::to_string(i);
      expect_fields(a[i], ap, {"stage", "class"});
      const auto stage = get_integer(a[i]["stage"], ap + "/stage");
      if (stage < 0 || static_cast<std::size_t>(stage) > scene.blowups.size()) {
        schema_error(ap + "/stage", "stage must lie between 0 and the number of blow-ups");
      }
      SceneNefAxiom axiom{static_cast<std::size_t>(stage), get_vector(a[i]["class"], ap + "/class")};
      if (axiom.cls.size() != n + axiom.stage) schema_error(ap + "/class", "expected rank + stage entries");
      scene.nef_axioms.push_back(std::move(axiom));
    }
  }
  return scene;
}

std::string serialize_scene(const Scene& scene) {
  Json root;
  root["format"] = kSceneFormat;
  root["meta"] = scene.meta;
  Json base;
  base["rank"] = scene.basis.size();
  base["basis"] = scene.basis;
  base["gram"] = Json::array();
  for (const auto& row : scene.gram) base["gram"].push_back(vector_json(row));
  base["canonical"] = vector_json(scene.canonical);
  base["curves"] = Json::array();
  for (const auto& c : scene.curves) base["curves"].push_back(Json{{"name", c.name}, {"class", vector_json(c.cls)}});
  root["base"] = std::move(base);
  root["blowups"] = Json::array();
  for (const auto& b : scene.blowups) root["blowups"].push_back(Json{{"name", b.name}, {"point", point_json(b.point)}});
  root["boundary"] = Json::array();
  for (const auto& [curve, coeff] : scene.boundary) {
    root["boundary"].push_back(Json{{"curve", curve}, {"coeff", to_string(coeff)}});
  }
  root["nef_axioms"] = Json::array();
  for (const auto& a : scene.nef_axioms) {
    root["nef_axioms"].push_back(Json{{"stage", a.stage}, {"class", vector_json(a.cls)}});
  }
  return root.dump(2) + "\n";
}

SurfaceModel build_surface(const Scene& scene) {
  const std::size_t n = scene.basis.size();
  RatMatrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (scene.gram.at(i).size() != n) throw SurfaceError(ErrorKind::DimensionMismatch, "scene gram row");
    for (std::size_t j = 0; j < n; ++j) gram(i, j) = scene.gram[i][j];
  }
  std::vector<TrackedCurve> curves;
  for (const auto& c : scene.curves) curves.push_back({c.name, DivisorClass(c.cls), std::nullopt});
  SurfaceModel model(IntersectionLattice(scene.basis, std::move(gram)), DivisorClass(scene.canonical),
                     std::move(curves), {});
  for (const auto& b : scene.blowups) model = blow_up(model, b.point, b.name);

  if (scene.nef_axioms.empty()) return model;
  std::vector<DivisorClass> axioms;
  for (const auto& a : scene.nef_axioms) {
    if (a.cls.size() != n + a.stage) throw SurfaceError(ErrorKind::DimensionMismatch, "nef axiom length");
    axioms.push_back(pullback(model, DivisorClass(a.cls)));
  }
  return SurfaceModel(model.lattice(), model.canonical(), model.curves(), std::move(axioms), model.history(),
                      model.smooth());
}

PairModel build_pair(const Scene& scene) { return PairModel(build_surface(scene), scene.boundary); }

Scene read_scene(const std::string& source) {
  if (auto builtin = builtin_scene(source)) return *builtin;
  std::ifstream in(source);
  if (!in) throw SurfaceError(ErrorKind::UnknownName, "no built-in scene or readable file '" + source + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scene(text.str());
}

PairModel load_scene(const std::string& source) { return build_pair(read_scene(source)); }

}  // namespace surfmmp
