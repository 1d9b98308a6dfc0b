#include "surfmmp/specs.hpp"

#include <cctype>

#include <json.hpp>

#include "surfmmp/error.hpp"

namespace surfmmp {

namespace {

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) return parts;
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad(std::string_view text, const std::string& what) {
  throw SurfaceError(ErrorKind::Parse, "'" + std::string(text) + "': " + what);
}

std::pair<std::string, std::string_view> name_and_value(std::string_view item, std::string_view whole) {
  const auto colon = item.find(':');
  if (colon == std::string_view::npos) bad(whole, "expected name:value");
  const auto name = trim(item.substr(0, colon));
  if (name.empty()) bad(whole, "empty curve name");
  return {std::string(name), trim(item.substr(colon + 1))};
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

}  // namespace

PointSpec parse_point(std::string_view text) {
  PointSpec p;
  if (trim(text).empty()) return p;
  for (auto item : split(text, ',')) {
    auto [name, value] = name_and_value(item, text);
    const Rational m = parse_rational(value);
    if (!is_integer(m) || m < 1 || !m.get_num().fits_sint_p()) bad(text, "multiplicity must be a positive integer");
    if (!p.incidences.emplace(name, static_cast<int>(m.get_num().get_si())).second) bad(text, "curve listed twice");
  }
  return p;
}

Chain parse_chain(std::string_view text) {
  Chain chain;
  for (auto item : split(text, ';')) chain.push_back(parse_point(item));
  return chain;
}

CurveCombination parse_combination(std::string_view text) {
  CurveCombination c;
  if (trim(text).empty()) return c;
  for (auto item : split(text, ',')) {
    auto [name, value] = name_and_value(item, text);
    if (!c.emplace(name, parse_rational(value)).second) bad(text, "curve listed twice");
  }
  return c;
}

std::vector<int> parse_weights(std::string_view text) {
  std::vector<int> w;
  for (auto item : split(text, ',')) {
    const Rational r = parse_rational(trim(item));
    if (!is_integer(r) || !r.get_num().fits_sint_p()) bad(text, "weights are integers");
    w.push_back(static_cast<int>(r.get_num().get_si()));
  }
  return w;
}

DualGraph parse_graph(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SurfaceError(ErrorKind::Parse, "byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("weights")) throw SurfaceError(ErrorKind::Parse, "graph needs 'weights'");
  for (const auto& [key, value] : j.items()) {
    if (key != "weights" && key != "edges") throw SurfaceError(ErrorKind::Parse, "unknown field '" + key + "'");
  }
  try {
    auto weights = j["weights"].get<std::vector<int>>();
    std::vector<DualGraph::Edge> edges;
    if (j.contains("edges")) {
      for (const auto& e : j["edges"]) {
        const auto pair = e.get<std::vector<std::size_t>>();
        if (pair.size() != 2) throw SurfaceError(ErrorKind::Parse, "an edge is a pair of vertex indices");
        edges.emplace_back(pair[0], pair[1]);
      }
    }
    return DualGraph(std::move(weights), std::move(edges));
  } catch (const nlohmann::json::exception& e) {
    throw SurfaceError(ErrorKind::Parse, e.what());
  }
}

DivisorClass parse_divisor(const PairModel& pair, std::string_view text) {
  const SurfaceModel& model = pair.surface();
  DivisorClass total = model.zero_class();
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  bool first = true;
  skip();
  if (i == text.size()) bad(text, "empty expression");
  while (i < text.size()) {
    Rational sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      if (text[i] == '-') sign = -1;
      ++i;
      skip();
    } else if (!first) {
      bad(text, "expected + or - at position " + std::to_string(i));
    }
    first = false;

    Rational coeff = 1;
    const std::size_t num_start = i;
    while (i < text.size() && (std::isdigit(static_cast<unsigned char>(text[i])) || text[i] == '/')) ++i;
    if (i > num_start) {
      coeff = parse_rational(text.substr(num_start, i - num_start));
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    if (i >= text.size() || !is_ident_start(text[i])) bad(text, "expected a symbol at position " + std::to_string(i));
    const std::size_t id_start = i;
    while (i < text.size() && is_ident(text[i])) ++i;
    const std::string symbol(text.substr(id_start, i - id_start));
    skip();

    DivisorClass term;
    if (symbol == "K") {
      term = model.canonical();
    } else if (symbol == "Delta") {
      term = model.class_of(pair.boundary());
    } else if (model.curve_index(symbol)) {
      term = model.curve(symbol).cls;
    } else if (auto b = model.lattice().basis_index(symbol)) {
      term = DivisorClass::basis_vector(model.rank(), *b);
    } else {
      throw SurfaceError(ErrorKind::UnknownName, "no curve or basis element '" + symbol + "'");
    }
    total += (sign * coeff) * term;
  }
  return total;
}

}  // namespace surfmmp
