#include "surfmmp/dualgraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

#include "surfmmp/error.hpp"

namespace surfmmp {

namespace {

RatMatrix gram_matrix(const std::vector<int>& weights, const std::vector<DualGraph::Edge>& edges) {
  RatMatrix g(weights.size(), weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) g(i, i) = weights[i];
  for (const auto& [a, b] : edges) {
    g(a, b) = 1;
    g(b, a) = 1;
  }
  return g;
}

std::string structural_problem(const std::vector<int>& weights, const std::vector<DualGraph::Edge>& edges) {
  const std::size_t n = weights.size();
  if (n == 0) return "empty graph";
  for (int w : weights) {
    if (w > -2) return "vertex weight " + std::to_string(w) + " > -2";
  }
  std::set<DualGraph::Edge> seen;
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : edges) {
    if (a >= n || b >= n) return "edge endpoint out of range";
    if (a == b) return "loop edge";
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) return "multiple edge";
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> reached(n, false);
  std::vector<std::size_t> stack{0};
  reached[0] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t u : adj[v]) {
      if (!reached[u]) {
        reached[u] = true;
        stack.push_back(u);
      }
    }
  }
  if (std::find(reached.begin(), reached.end(), false) != reached.end()) return "graph is not connected";
  if (!negative_definite_certificate(gram_matrix(weights, edges)).negative_definite) {
    return "Gram matrix is not negative definite";
  }
  return {};
}

}  // namespace

DualGraph::DualGraph(std::vector<int> weights, std::vector<Edge> edges)
    : weights_(std::move(weights)), edges_(std::move(edges)) {
  if (auto problem = structural_problem(weights_, edges_); !problem.empty()) {
    throw SurfaceError(ErrorKind::InvariantViolation, "dual graph: " + problem);
  }
}

DualGraph DualGraph::chain(const std::vector<int>& weights) {
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < weights.size(); ++i) edges.emplace_back(i - 1, i);
  return DualGraph(weights, std::move(edges));
}

bool is_valid_dual_graph(const std::vector<int>& weights, const std::vector<DualGraph::Edge>& edges) {
  return structural_problem(weights, edges).empty();
}

RatMatrix DualGraph::gram() const { return gram_matrix(weights_, edges_); }

std::optional<std::vector<std::size_t>> DualGraph::path_order() const {
  const std::size_t n = size();
  if (edges_.size() != n - 1) return std::nullopt;
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [a, b] : edges_) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::size_t start = 0;
  for (std::size_t v = 0; v < n; ++v) {
    if (adj[v].size() > 2) return std::nullopt;
    if (adj[v].size() <= 1) start = v;
  }
  std::vector<std::size_t> order{start};
  std::size_t prev = n;
  std::size_t cur = start;
  while (order.size() < n) {
    const std::size_t next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
    prev = cur;
    cur = next;
    order.push_back(cur);
  }
  return order;
}

std::vector<Rational> resolve_coefficients(const DualGraph& g) {
  std::vector<Rational> rhs;
  for (int w : g.weights()) rhs.emplace_back(2 + w);
  return solve_linear(g.gram(), std::move(rhs));
}

namespace {

Rational max_edge_sum(const DualGraph& g, const std::vector<Rational>& b) {
  Rational best = 0;
  for (const auto& [i, j] : g.edges()) best = std::max(best, Rational(b[i] + b[j]));
  return best;
}

std::optional<std::string> family_of(const std::vector<int>& w) {
  if (std::all_of(w.begin(), w.end(), [](int x) { return x == -2; })) return "canonical";
  if (w.size() == 1) return "-n (n>=3)";
  auto matches = [&](const std::vector<int>& pattern) {
    return w == pattern || std::vector<int>(w.rbegin(), w.rend()) == pattern;
  };
  if (matches({-2, -2, -3, -2})) return "-2 -2 -3 -2";
  if (matches({-2, -3, -2})) return "-2 -3 -2";
  if (matches({-2, -4})) return "-2 -4";
  std::vector<int> oriented = w;
  if (oriented.front() == -3) std::reverse(oriented.begin(), oriented.end());
  if (oriented.back() == -3 && std::all_of(oriented.begin(), oriented.end() - 1, [](int x) { return x == -2; })) {
    return "(-2)^a -3, a=" + std::to_string(oriented.size() - 1);
  }
  return std::nullopt;
}

}  // namespace

bool has_redundant_point(const DualGraph& g) {
  const auto b = resolve_coefficients(g);
  if (std::any_of(b.begin(), b.end(), [](const Rational& x) { return x >= 1; })) return true;
  return max_edge_sum(g, b) >= 1;
}

GraphVerdict classify(const DualGraph& g) {
  GraphVerdict v;
  v.b = resolve_coefficients(g);
  v.klt = std::all_of(v.b.begin(), v.b.end(), [](const Rational& x) { return x < 1; });
  v.canonical = std::all_of(v.b.begin(), v.b.end(), [](const Rational& x) { return x == 0; });
  v.max_edge_sum = max_edge_sum(g, v.b);
  v.redundant_free = v.klt && v.max_edge_sum < 1;
  if (v.canonical) {
    v.matched_family = "canonical";
  } else if (auto order = g.path_order()) {
    std::vector<int> w;
    for (std::size_t i : *order) w.push_back(g.weights()[i]);
    v.matched_family = family_of(w);
  }
  return v;
}

std::vector<int> normalized_chain(std::vector<int> weights) {
  std::vector<int> reversed(weights.rbegin(), weights.rend());
  return std::min(weights, reversed);
}

namespace {

std::string chain_text(const std::vector<int>& w) {
  std::ostringstream out;
  out << "chain[";
  for (std::size_t i = 0; i < w.size(); ++i) out << (i ? "," : "") << w[i];
  out << "]";
  return out.str();
}

// Works for any tree given as weights + edges; chains get a readable form.
std::string canonical_key(const std::vector<int>& weights, const std::vector<DualGraph::Edge>& edges) {
  const std::size_t n = weights.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  const bool is_path = edges.size() + 1 == n &&
                       std::all_of(adj.begin(), adj.end(), [](const auto& nbrs) { return nbrs.size() <= 2; });
  if (is_path) {
    std::size_t start = 0;
    while (adj[start].size() > 1) ++start;
    std::vector<int> w{weights[start]};
    std::size_t prev = n;
    std::size_t cur = start;
    while (w.size() < n) {
      const std::size_t next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
      prev = cur;
      cur = next;
      w.push_back(weights[cur]);
    }
    return chain_text(normalized_chain(w));
  }
  std::function<std::string(std::size_t, std::size_t)> encode = [&](std::size_t v, std::size_t parent) {
    std::vector<std::string> children;
    for (std::size_t u : adj[v]) {
      if (u != parent) children.push_back(encode(u, v));
    }
    std::sort(children.begin(), children.end());
    std::string s = "(" + std::to_string(weights[v]);
    for (const auto& c : children) s += c;
    return s + ")";
  };
  std::string best;
  for (std::size_t root = 0; root < n; ++root) {
    std::string s = encode(root, n);
    if (best.empty() || s < best) best = s;
  }
  return "tree" + best;
}

}  // namespace

std::string canonical_form(const DualGraph& g) { return canonical_key(g.weights(), g.edges()); }

std::vector<std::vector<int>> listed_families(int max_vertices, int min_weight) {
  std::vector<std::vector<int>> out;
  auto add = [&](std::vector<int> w) {
    if (static_cast<int>(w.size()) > max_vertices) return;
    if (*std::min_element(w.begin(), w.end()) < min_weight) return;
    out.push_back(normalized_chain(std::move(w)));
  };
  for (int n = 3; -n >= min_weight; ++n) add({-n});
  for (int alpha = 1; alpha + 1 <= max_vertices; ++alpha) {
    std::vector<int> w(alpha, -2);
    w.push_back(-3);
    add(w);
  }
  add({-2, -2, -3, -2});
  add({-2, -3, -2});
  add({-2, -4});
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

EnumerationReport enumerate_and_verify(int max_vertices, int min_weight) {
  EnumerationReport report;
  report.max_vertices = max_vertices;
  report.min_weight = min_weight;
  if (max_vertices < 1 || min_weight > -2) {
    throw SurfaceError(ErrorKind::InvariantViolation, "enumeration bounds need max_vertices >= 1, min_weight <= -2");
  }

  struct Node {
    std::vector<int> weights;
    std::vector<DualGraph::Edge> edges;
    std::vector<Rational> b;
  };
  std::set<std::string> seen;
  std::deque<Node> queue;
  std::set<std::string> found;

  // Returns b if the candidate is a klt negative definite tree, else nullopt.
  auto evaluate = [](const std::vector<int>& w, const std::vector<DualGraph::Edge>& e)
      -> std::optional<std::pair<DualGraph, std::vector<Rational>>> {
    if (!is_valid_dual_graph(w, e)) return std::nullopt;
    DualGraph g(w, e);
    auto b = resolve_coefficients(g);
    if (std::any_of(b.begin(), b.end(), [](const Rational& x) { return x >= 1; })) return std::nullopt;
    return std::make_pair(std::move(g), std::move(b));
  };

  auto check_monotone = [&](const std::vector<Rational>& smaller, const std::vector<Rational>& larger,
                            const std::string& what) {
    ++report.monotonicity_checks;
    for (std::size_t i = 0; i < smaller.size(); ++i) {
      if (larger[i] < smaller[i]) {
        report.monotonicity_violations.push_back(what);
        return;
      }
    }
  };

  for (int w = -2; w >= min_weight; --w) {
    DualGraph g({w}, {});
    seen.insert(canonical_form(g));
    queue.push_back({{w}, {}, resolve_coefficients(g)});
  }

  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    ++report.visited;
    const DualGraph g(node.weights, node.edges);
    const GraphVerdict verdict = classify(g);
    if (verdict.canonical) {
      ++report.canonical;
    } else {
      ++report.redundant_free_noncanonical;
      found.insert(canonical_form(g));
    }

    // Making one weight more negative must not decrease any coefficient.
    for (std::size_t v = 0; v < node.weights.size(); ++v) {
      if (node.weights[v] - 1 < min_weight) continue;
      auto lowered = node.weights;
      --lowered[v];
      if (!is_valid_dual_graph(lowered, node.edges)) continue;
      check_monotone(node.b, resolve_coefficients(DualGraph(lowered, node.edges)),
                     canonical_form(g) + " lowered at vertex " + std::to_string(v));
    }

    if (static_cast<int>(node.weights.size()) >= max_vertices) continue;
    for (std::size_t v = 0; v < node.weights.size(); ++v) {
      for (int w = -2; w >= min_weight; --w) {
        auto weights = node.weights;
        auto edges = node.edges;
        weights.push_back(w);
        edges.emplace_back(v, weights.size() - 1);

        const std::string key = canonical_key(weights, edges);
        if (!seen.insert(key).second) continue;

        auto evaluated = evaluate(weights, edges);
        if (!evaluated) {
          ++report.excluded_minimal;
          continue;
        }
        auto& [child, b] = *evaluated;
        check_monotone(node.b, b, key + " over its parent");
        if (has_redundant_point(child)) {
          ++report.has_redundant_minimal;
          continue;
        }
        queue.push_back({std::move(weights), std::move(edges), std::move(b)});
      }
    }
  }

  report.found.assign(found.begin(), found.end());
  for (const auto& w : listed_families(max_vertices, min_weight)) {
    report.expected.push_back(canonical_form(DualGraph::chain(w)));
  }
  std::sort(report.expected.begin(), report.expected.end());
  std::set_difference(report.expected.begin(), report.expected.end(), report.found.begin(), report.found.end(),
                      std::back_inserter(report.missing));
  std::set_difference(report.found.begin(), report.found.end(), report.expected.begin(), report.expected.end(),
                      std::back_inserter(report.unexpected));
  report.ok = report.missing.empty() && report.unexpected.empty() && report.monotonicity_violations.empty();
  return report;
}

}  // namespace surfmmp
