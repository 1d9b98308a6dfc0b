#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surfmmp/lattice.hpp"

namespace surfmmp {

// Weighted dual graph of the exceptional curves of a minimal resolution germ.
// All curves are rational; an edge is one transversal intersection.
class DualGraph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  // Throws InvariantViolation unless weights <= -2, edges are simple, the graph is connected
  // and the Gram matrix is negative definite.
  DualGraph(std::vector<int> weights, std::vector<Edge> edges);
  static DualGraph chain(const std::vector<int>& weights);

  std::size_t size() const { return weights_.size(); }
  const std::vector<int>& weights() const { return weights_; }
  const std::vector<Edge>& edges() const { return edges_; }
  RatMatrix gram() const;

  // Vertex order along the path, or nullopt if the graph is not a path.
  std::optional<std::vector<std::size_t>> path_order() const;

 private:
  std::vector<int> weights_;
  std::vector<Edge> edges_;
};

// Same checks as the DualGraph constructor, without throwing.
bool is_valid_dual_graph(const std::vector<int>& weights, const std::vector<DualGraph::Edge>& edges);

// b solving (K + sum b_i E_i).E_j = 0 with K.E_j = -2 - w_j.
std::vector<Rational> resolve_coefficients(const DualGraph& g);

bool has_redundant_point(const DualGraph& g);

struct GraphVerdict {
  std::vector<Rational> b;
  bool klt = false;
  bool canonical = false;
  bool redundant_free = false;
  Rational max_edge_sum;  // 0 when there are no edges
  std::optional<std::string> matched_family;
};

GraphVerdict classify(const DualGraph& g);

// Weight sequence of a chain up to reversal (the lexicographically smaller orientation).
std::vector<int> normalized_chain(std::vector<int> weights);

// Isomorphism-invariant text form of a weighted tree.
std::string canonical_form(const DualGraph& g);

struct EnumerationReport {
  int max_vertices = 0;
  int min_weight = 0;
  std::size_t canonical = 0;
  std::size_t redundant_free_noncanonical = 0;
  // Graphs with a redundant point whose one-vertex-smaller subtrees are all redundant-free.
  // Larger trees containing one are not visited: they also have a redundant point.
  std::size_t has_redundant_minimal = 0;
  std::size_t excluded_minimal = 0;  // not negative definite or not klt
  std::size_t visited = 0;
  std::size_t monotonicity_checks = 0;
  std::vector<std::string> monotonicity_violations;
  std::vector<std::string> found;     // redundant-free non-canonical, canonical forms
  std::vector<std::string> expected;  // listed families within bounds
  std::vector<std::string> missing;
  std::vector<std::string> unexpected;
  bool ok = false;
};

// Grows every redundant-free klt tree within bounds by leaf additions and compares the
// redundant-free non-canonical ones with the listed families.
EnumerationReport enumerate_and_verify(int max_vertices, int min_weight);

// Members of the listed families with at most max_vertices vertices and weights >= min_weight.
std::vector<std::vector<int>> listed_families(int max_vertices, int min_weight);

}  // namespace surfmmp
