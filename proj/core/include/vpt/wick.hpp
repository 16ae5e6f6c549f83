#pragma once

// Symbolic Wick reduction of harmonic expectation values
//
//   < x^n1(tau_1) x^n2(tau_2) ... >
//
// into sums of products of classical-path factors x_cl(tau_v) ("crosses")
// and Green-function edges G(tau_v, tau_w) ("lines"), plus extraction of the
// connected (cumulant) diagram sums that enter the exponent W.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vpt::wick {

using VertexPair = std::pair<int, int>;  // first <= second

struct DiagramTerm {
  std::int64_t multiplicity = 1;
  std::map<int, int> crosses;        // vertex -> number of x_cl factors
  std::map<VertexPair, int> edges;   // unordered pair -> number of G factors

  /// Legs attached to vertex v: crosses plus edge endpoints (a self-edge counts twice).
  int degree(int v) const;
  int cross_count() const;
  int edge_count() const;
  void add_cross(int v, int count = 1);
  void add_edge(int v, int w, int count = 1);

  /// Connectivity of the graph on the given vertices (isolated vertices count).
  bool is_connected(const std::vector<int>& vertices) const;

  /// Same shape, multiplicity ignored.
  bool same_shape(const DiagramTerm& other) const;
};

/// Sum of diagram terms over a fixed vertex set. Vertices carry a color; terms
/// are merged under every relabeling that maps each vertex to one of the same
/// color (for <x^4(tau_1) x^4(tau_2)> both vertices are interchangeable).
class WickSum {
 public:
  WickSum() = default;
  WickSum(std::vector<int> vertices, std::vector<int> colors);

  /// Adds `term` scaled by `factor` after canonicalization; cancelled terms are dropped.
  void add(const DiagramTerm& term, std::int64_t factor = 1);
  void subtract(const WickSum& other);

  const std::vector<int>& vertices() const { return vertices_; }
  const std::vector<int>& colors() const { return colors_; }
  int vertex_count() const { return static_cast<int>(vertices_.size()); }

  /// Terms in canonical order with their accumulated multiplicities.
  std::vector<DiagramTerm> terms() const;
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  std::int64_t multiplicity_sum() const;

  /// Multiplicity of the canonical form of `shape`, zero if absent.
  std::int64_t multiplicity_of(const DiagramTerm& shape) const;

  DiagramTerm canonical(const DiagramTerm& term) const;

  friend bool operator==(const WickSum& a, const WickSum& b);

 private:
  using Key = std::pair<std::vector<int>, std::vector<std::pair<VertexPair, int>>>;
  Key key_of(const DiagramTerm& term) const;
  DiagramTerm from_key(const Key& key, std::int64_t multiplicity) const;

  std::vector<int> vertices_;
  std::vector<int> colors_;
  std::vector<std::vector<int>> relabelings_;  // allowed permutations of vertex positions
  std::map<Key, std::int64_t> terms_;
};

/// Full reduction by repeated contraction of one leg: each x(tau_v) either
/// becomes x_cl(tau_v) or is contracted with every remaining leg into a G edge.
/// Exponents are (vertex index, power) pairs; vertex indices must be distinct
/// and positive.
WickSum wick_reduce(const std::vector<std::pair<int, int>>& exponents);

/// Connected diagrams multiplying (-g/hbar)^n / n! in the exponent W.
/// Order 1 is <x^4>; order 2 is <x^4 x^4> minus the product of two first-order
/// sums. Throws std::invalid_argument for other orders.
WickSum connected_w_terms(int order);

/// Product of two sums on disjoint vertex sets, merged on the union.
WickSum product(const WickSum& a, const WickSum& b, const std::vector<int>& colors);

/// Line-oriented text form: `mult * xcl[v]^k ... * G(v,w)^k ...`, one term per line.
std::string format_term(const DiagramTerm& term);
std::string format_sum(const WickSum& sum);
DiagramTerm parse_term(std::string_view line);
WickSum parse_sum(std::string_view text, std::vector<int> vertices, std::vector<int> colors);

std::ostream& operator<<(std::ostream& os, const WickSum& sum);

}  // namespace vpt::wick
