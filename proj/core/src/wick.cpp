#include "vpt/wick.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace vpt::wick {

namespace {

VertexPair ordered(int v, int w) { return v <= w ? VertexPair{v, w} : VertexPair{w, v}; }

int parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("wick: bad integer '" + std::string(s) + "'");
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

int DiagramTerm::degree(int v) const {
  int d = 0;
  if (auto it = crosses.find(v); it != crosses.end()) d += it->second;
  for (const auto& [pair, count] : edges) {
    if (pair.first == v) d += count;
    if (pair.second == v) d += count;
  }
  return d;
}

int DiagramTerm::cross_count() const {
  int n = 0;
  for (const auto& [v, c] : crosses) n += c;
  return n;
}

int DiagramTerm::edge_count() const {
  int n = 0;
  for (const auto& [p, c] : edges) n += c;
  return n;
}

void DiagramTerm::add_cross(int v, int count) {
  if (count == 0) return;
  crosses[v] += count;
}

void DiagramTerm::add_edge(int v, int w, int count) {
  if (count == 0) return;
  edges[ordered(v, w)] += count;
}

bool DiagramTerm::is_connected(const std::vector<int>& vertices) const {
  if (vertices.size() <= 1) return true;
  std::map<int, int> parent;
  for (int v : vertices) parent[v] = v;
  auto find = [&](int v) {
    while (parent.at(v) != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& [pair, count] : edges) parent[find(pair.first)] = find(pair.second);
  const int root = find(vertices.front());
  return std::all_of(vertices.begin(), vertices.end(), [&](int v) { return find(v) == root; });
}

bool DiagramTerm::same_shape(const DiagramTerm& other) const {
  return crosses == other.crosses && edges == other.edges;
}

WickSum::WickSum(std::vector<int> vertices, std::vector<int> colors)
    : vertices_(std::move(vertices)), colors_(std::move(colors)) {
  if (vertices_.size() != colors_.size())
    throw std::invalid_argument("WickSum: one color per vertex required");
  if (vertices_.size() > 6) throw std::invalid_argument("WickSum: at most 6 vertices supported");
  std::vector<int> perm(vertices_.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (std::size_t i = 0; i < perm.size() && ok; ++i) ok = colors_[perm[i]] == colors_[i];
    if (ok) relabelings_.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

WickSum::Key WickSum::key_of(const DiagramTerm& term) const {
  auto position = [&](int v) {
    auto it = std::find(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end())
      throw std::invalid_argument("WickSum: term references unknown vertex " + std::to_string(v));
    return static_cast<int>(it - vertices_.begin());
  };
  const std::size_t n = vertices_.size();
  std::vector<int> cross_by_pos(n, 0);
  std::vector<std::pair<VertexPair, int>> edge_by_pos;
  for (const auto& [v, c] : term.crosses)
    if (c != 0) cross_by_pos[position(v)] += c;
  for (const auto& [p, c] : term.edges)
    if (c != 0) edge_by_pos.push_back({ordered(position(p.first), position(p.second)), c});

  Key best;
  bool first = true;
  for (const auto& perm : relabelings_) {
    Key k;
    k.first.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) k.first[perm[i]] = cross_by_pos[i];
    std::map<VertexPair, int> edges;
    for (const auto& [p, c] : edge_by_pos) edges[ordered(perm[p.first], perm[p.second])] += c;
    k.second.assign(edges.begin(), edges.end());
    if (first || k < best) {
      best = std::move(k);
      first = false;
    }
  }
  return best;
}

DiagramTerm WickSum::from_key(const Key& key, std::int64_t multiplicity) const {
  DiagramTerm t;
  t.multiplicity = multiplicity;
  for (std::size_t i = 0; i < key.first.size(); ++i)
    if (key.first[i] != 0) t.crosses[vertices_[i]] = key.first[i];
  for (const auto& [p, c] : key.second) t.edges[ordered(vertices_[p.first], vertices_[p.second])] = c;
  return t;
}

DiagramTerm WickSum::canonical(const DiagramTerm& term) const {
  return from_key(key_of(term), term.multiplicity);
}

void WickSum::add(const DiagramTerm& term, std::int64_t factor) {
  const std::int64_t m = term.multiplicity * factor;
  if (m == 0) return;
  auto key = key_of(term);
  auto [it, inserted] = terms_.try_emplace(std::move(key), 0);
  it->second += m;
  if (it->second == 0) terms_.erase(it);
}

void WickSum::subtract(const WickSum& other) {
  for (const auto& t : other.terms()) add(t, -1);
}

std::vector<DiagramTerm> WickSum::terms() const {
  std::vector<DiagramTerm> out;
  out.reserve(terms_.size());
  for (const auto& [key, m] : terms_) out.push_back(from_key(key, m));
  return out;
}

std::int64_t WickSum::multiplicity_sum() const {
  std::int64_t s = 0;
  for (const auto& [key, m] : terms_) s += m;
  return s;
}

std::int64_t WickSum::multiplicity_of(const DiagramTerm& shape) const {
  auto it = terms_.find(key_of(shape));
  return it == terms_.end() ? 0 : it->second;
}

bool operator==(const WickSum& a, const WickSum& b) {
  return a.vertices_ == b.vertices_ && a.colors_ == b.colors_ && a.terms_ == b.terms_;
}

namespace {

// One reduction step on the first vertex that still carries legs.
void reduce(std::map<int, int>& remaining, DiagramTerm& acc, WickSum& out) {
  auto it = std::find_if(remaining.begin(), remaining.end(), [](const auto& kv) { return kv.second > 0; });
  if (it == remaining.end()) {
    out.add(acc);
    return;
  }
  const int v = it->first;
  --remaining[v];

  // x(tau_v) -> x_cl(tau_v)
  ++acc.crosses[v];
  reduce(remaining, acc, out);
  if (--acc.crosses[v] == 0) acc.crosses.erase(v);

  // x(tau_v) contracted with each remaining leg
  for (auto& [w, count] : remaining) {
    if (count == 0) continue;
    const int ways = count;
    --count;
    const std::int64_t saved = acc.multiplicity;
    acc.multiplicity *= ways;
    const VertexPair e = ordered(v, w);
    ++acc.edges[e];
    reduce(remaining, acc, out);
    if (--acc.edges[e] == 0) acc.edges.erase(e);
    acc.multiplicity = saved;
    ++count;
  }
  ++remaining[v];
}

}  // namespace

WickSum wick_reduce(const std::vector<std::pair<int, int>>& exponents) {
  if (exponents.empty()) throw std::invalid_argument("wick_reduce: at least one vertex required");
  std::vector<int> vertices;
  std::vector<int> colors;
  std::map<int, int> remaining;
  for (const auto& [v, n] : exponents) {
    if (v <= 0) throw std::invalid_argument("wick_reduce: vertex indices must be positive");
    if (n < 0) throw std::invalid_argument("wick_reduce: exponents must be nonnegative");
    if (!remaining.emplace(v, n).second) throw std::invalid_argument("wick_reduce: duplicate vertex");
    vertices.push_back(v);
    colors.push_back(n);
  }
  WickSum out(vertices, colors);
  DiagramTerm acc;
  reduce(remaining, acc, out);
  return out;
}

WickSum product(const WickSum& a, const WickSum& b, const std::vector<int>& colors) {
  std::vector<int> vertices = a.vertices();
  vertices.insert(vertices.end(), b.vertices().begin(), b.vertices().end());
  WickSum out(vertices, colors);
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      DiagramTerm t = ta;
      t.multiplicity = ta.multiplicity * tb.multiplicity;
      for (const auto& [v, c] : tb.crosses) t.add_cross(v, c);
      for (const auto& [p, c] : tb.edges) t.add_edge(p.first, p.second, c);
      out.add(t);
    }
  }
  return out;
}

WickSum connected_w_terms(int order) {
  if (order == 1) return wick_reduce({{1, 4}});
  if (order != 2) throw std::invalid_argument("connected_w_terms: order must be 1 or 2");

  WickSum full = wick_reduce({{1, 4}, {2, 4}});
  const WickSum disconnected = product(wick_reduce({{1, 4}}), wick_reduce({{2, 4}}), full.colors());
  full.subtract(disconnected);
  for (const auto& t : full.terms()) {
    if (t.multiplicity <= 0 || !t.is_connected(full.vertices()))
      throw std::logic_error("connected_w_terms: disconnected remainder " + format_term(t));
  }
  return full;
}

std::string format_term(const DiagramTerm& term) {
  std::ostringstream os;
  os << term.multiplicity;
  for (const auto& [v, c] : term.crosses) os << " * xcl[" << v << "]^" << c;
  for (const auto& [p, c] : term.edges) os << " * G(" << p.first << ',' << p.second << ")^" << c;
  return os.str();
}

std::string format_sum(const WickSum& sum) {
  std::string out;
  for (const auto& t : sum.terms()) {
    out += format_term(t);
    out += '\n';
  }
  return out;
}

DiagramTerm parse_term(std::string_view line) {
  DiagramTerm t;
  std::vector<std::string_view> factors;
  std::size_t start = 0;
  while (true) {
    const std::size_t star = line.find('*', start);
    factors.push_back(trim(line.substr(start, star == std::string_view::npos ? star : star - start)));
    if (star == std::string_view::npos) break;
    start = star + 1;
  }
  {
    std::int64_t m = 0;
    const auto f = factors.front();
    auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), m);
    if (ec != std::errc{} || ptr != f.data() + f.size())
      throw std::invalid_argument("parse_term: bad multiplicity in '" + std::string(line) + "'");
    t.multiplicity = m;
  }
  for (std::size_t i = 1; i < factors.size(); ++i) {
    const auto f = factors[i];
    const auto caret = f.rfind('^');
    if (caret == std::string_view::npos)
      throw std::invalid_argument("parse_term: missing exponent in '" + std::string(f) + "'");
    const int power = parse_int(f.substr(caret + 1));
    const auto head = f.substr(0, caret);
    if (head.starts_with("xcl[") && head.ends_with("]")) {
      t.add_cross(parse_int(head.substr(4, head.size() - 5)), power);
    } else if (head.starts_with("G(") && head.ends_with(")")) {
      const auto inner = head.substr(2, head.size() - 3);
      const auto comma = inner.find(',');
      if (comma == std::string_view::npos)
        throw std::invalid_argument("parse_term: bad edge '" + std::string(f) + "'");
      t.add_edge(parse_int(trim(inner.substr(0, comma))), parse_int(trim(inner.substr(comma + 1))), power);
    } else {
      throw std::invalid_argument("parse_term: unknown factor '" + std::string(f) + "'");
    }
  }
  return t;
}

WickSum parse_sum(std::string_view text, std::vector<int> vertices, std::vector<int> colors) {
  WickSum out(std::move(vertices), std::move(colors));
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    const auto line = trim(text.substr(start, nl - start));
    if (!line.empty() && line.front() != '#') out.add(parse_term(line));
    start = nl + 1;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const WickSum& sum) { return os << format_sum(sum); }

}  // namespace vpt::wick
