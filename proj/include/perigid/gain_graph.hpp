// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Graphs whose edges carry labels in Z^k (the quotient of a k-periodic
// graph). The group is written additively: the inverse of a label is its
// negation, and reversing an edge negates its gain.

#ifndef PERIGID_GAIN_GRAPH_HPP
#define PERIGID_GAIN_GRAPH_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "perigid/exact_linalg.hpp"

namespace perigid {

/// An element of Z^k.
class GainVector {
 public:
  GainVector() = default;
  explicit GainVector(std::size_t k) : coords_(k, 0) {}
  explicit GainVector(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {}
  GainVector(std::initializer_list<std::int64_t> coords) : coords_(coords) {}

  std::size_t size() const { return coords_.size(); }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }
  const std::vector<std::int64_t>& coords() const { return coords_; }

  bool is_identity() const {
    return std::all_of(coords_.begin(), coords_.end(), [](auto x) { return x == 0; });
  }

  GainVector operator-() const {
    GainVector out(*this);
    for (auto& x : out.coords_) x = -x;
    return out;
  }
  GainVector& operator+=(const GainVector& o) {
    check_same_rank(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }
  GainVector& operator-=(const GainVector& o) { return *this += -o; }
  friend GainVector operator+(GainVector a, const GainVector& b) { return a += b; }
  friend GainVector operator-(GainVector a, const GainVector& b) { return a -= b; }

  friend bool operator==(const GainVector&, const GainVector&) = default;
  friend auto operator<=>(const GainVector&, const GainVector&) = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(coords_[i]);
    }
    return s + ")";
  }

 private:
  void check_same_rank(const GainVector& o) const {
    if (o.coords_.size() != coords_.size())
      throw std::invalid_argument("gain vectors of different rank");
  }
  std::vector<std::int64_t> coords_;
};

enum class GraphMode { bar_joint, body_bar };

inline const char* to_string(GraphMode mode) {
  return mode == GraphMode::bar_joint ? "bar-joint" : "body-bar";
}

struct GainEdge {
  std::string id;
  std::string tail;
  std::string head;
  GainVector gain;

  bool is_loop() const { return tail == head; }
  friend bool operator==(const GainEdge&, const GainEdge&) = default;
};

/// Finite directed multigraph with Z^k edge labels. Vertices are kept in
/// lexicographic order; edges keep insertion order.
class GainGraph {
 public:
  explicit GainGraph(std::size_t k = 0, GraphMode mode = GraphMode::bar_joint)
      : k_(k), mode_(mode) {}

  std::size_t k() const { return k_; }
  GraphMode mode() const { return mode_; }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<GainEdge>& edges() const { return edges_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  bool has_vertex(const std::string& v) const {
    return std::binary_search(vertices_.begin(), vertices_.end(), v);
  }

  std::size_t index_of(const std::string& v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v)
      throw std::invalid_argument("unknown vertex '" + v + "'");
    return static_cast<std::size_t>(it - vertices_.begin());
  }

  std::optional<std::size_t> find_edge(const std::string& id) const {
    for (std::size_t i = 0; i < edges_.size(); ++i)
      if (edges_[i].id == id) return i;
    return std::nullopt;
  }

  void add_vertex(const std::string& v) {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it != vertices_.end() && *it == v)
      throw std::invalid_argument("duplicate vertex '" + v + "'");
    vertices_.insert(it, v);
  }

  /// Adds an edge. Endpoint existence, id uniqueness and gain length are
  /// enforced here; mode-dependent invariants are checked by validate().
  void add_edge(std::string id, const std::string& tail, const std::string& head,
                GainVector gain) {
    if (gain.size() != k_)
      throw std::invalid_argument("edge '" + id + "' gain has length " +
                                  std::to_string(gain.size()) + ", expected " +
                                  std::to_string(k_));
    index_of(tail);
    index_of(head);
    if (find_edge(id)) throw std::invalid_argument("duplicate edge id '" + id + "'");
    edges_.push_back(GainEdge{std::move(id), tail, head, std::move(gain)});
  }

  void add_edge(const std::string& tail, const std::string& head, GainVector gain) {
    add_edge(fresh_edge_id(), tail, head, std::move(gain));
  }

  std::string fresh_edge_id() const {
    for (std::size_t n = edges_.size();; ++n) {
      std::string id = "e" + std::to_string(n);
      if (!find_edge(id)) return id;
    }
  }

  GainEdge& edge(std::size_t i) { return edges_[i]; }
  const GainEdge& edge(std::size_t i) const { return edges_[i]; }

  void remove_edge_at(std::size_t i) {
    edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(i));
  }

  friend bool operator==(const GainGraph&, const GainGraph&) = default;

 private:
  std::size_t k_;
  GraphMode mode_;
  std::vector<std::string> vertices_;
  std::vector<GainEdge> edges_;
};

struct Violation {
  enum class Kind { loop_in_bar_joint, identity_loop, parallel_same_gain };
  Kind kind;
  std::vector<std::string> edge_ids;
  std::string message;
};

/// Checks the mode-dependent invariants; never throws.
inline std::vector<Violation> validate(const GainGraph& g) {
  std::vector<Violation> out;
  const auto& es = g.edges();
  for (const auto& e : es) {
    if (!e.is_loop()) continue;
    if (g.mode() == GraphMode::bar_joint) {
      out.push_back({Violation::Kind::loop_in_bar_joint, {e.id},
                     "loop '" + e.id + "' at '" + e.tail + "' in bar-joint mode"});
    } else if (e.gain.is_identity()) {
      out.push_back({Violation::Kind::identity_loop, {e.id},
                     "loop '" + e.id + "' at '" + e.tail + "' has identity gain"});
    }
  }
  if (g.mode() == GraphMode::bar_joint) {
    for (std::size_t i = 0; i < es.size(); ++i) {
      for (std::size_t j = i + 1; j < es.size(); ++j) {
        const auto& a = es[i];
        const auto& b = es[j];
        if (a.is_loop() || b.is_loop()) continue;
        const bool same = (a.tail == b.tail && a.head == b.head && a.gain == b.gain) ||
                          (a.tail == b.head && a.head == b.tail && a.gain == -b.gain);
        if (same) {
          out.push_back({Violation::Kind::parallel_same_gain, {a.id, b.id},
                         "edges '" + a.id + "' and '" + b.id +
                             "' are parallel with the same gain"});
        }
      }
    }
  }
  return out;
}

/// Switching at `v` by `gamma`: edges leaving v gain +gamma, edges entering
/// v gain -gamma. Loops at v are unchanged.
inline GainGraph switch_vertex(const GainGraph& g, const std::string& v,
                               const GainVector& gamma) {
  g.index_of(v);
  if (gamma.size() != g.k()) throw std::invalid_argument("switching gain has wrong rank");
  GainGraph out = g;
  for (std::size_t i = 0; i < out.edge_count(); ++i) {
    GainEdge& e = out.edge(i);
    if (e.is_loop()) continue;
    if (e.tail == v) e.gain += gamma;
    if (e.head == v) e.gain -= gamma;
  }
  return out;
}

inline GainGraph reverse_edge(const GainGraph& g, const std::string& id) {
  auto idx = g.find_edge(id);
  if (!idx) throw std::invalid_argument("unknown edge '" + id + "'");
  GainGraph out = g;
  GainEdge& e = out.edge(*idx);
  std::swap(e.tail, e.head);
  e.gain = -e.gain;
  return out;
}

/// G - v: removes v and every incident edge.
inline GainGraph delete_vertex(const GainGraph& g, const std::string& v) {
  g.index_of(v);
  GainGraph out(g.k(), g.mode());
  for (const auto& u : g.vertices())
    if (u != v) out.add_vertex(u);
  for (const auto& e : g.edges())
    if (e.tail != v && e.head != v) out.add_edge(e.id, e.tail, e.head, e.gain);
  return out;
}

inline GainGraph delete_edge(const GainGraph& g, const std::string& id) {
  auto idx = g.find_edge(id);
  if (!idx) throw std::invalid_argument("unknown edge '" + id + "'");
  GainGraph out = g;
  out.remove_edge_at(*idx);
  return out;
}

namespace detail {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  std::vector<std::size_t> parent;
};

}  // namespace detail

/// Generators of the cycle-gain subgroup of the edge subset `edge_indices`:
/// one per non-tree edge of a spanning forest (loops generate themselves).
inline std::vector<std::vector<std::int64_t>> cycle_gain_generators(
    const GainGraph& g, std::span<const std::size_t> edge_indices) {
  const std::size_t n = g.vertex_count();
  const std::size_t k = g.k();
  // Tree adjacency: (neighbour, gain to add when stepping tail->head).
  std::vector<std::vector<std::pair<std::size_t, GainVector>>> tree(n);
  std::vector<std::size_t> non_tree;
  detail::DisjointSets sets(n);
  for (std::size_t idx : edge_indices) {
    const GainEdge& e = g.edge(idx);
    const std::size_t u = g.index_of(e.tail);
    const std::size_t v = g.index_of(e.head);
    const std::size_t ru = sets.find(u);
    const std::size_t rv = sets.find(v);
    if (ru == rv) {
      non_tree.push_back(idx);
      continue;
    }
    sets.parent[ru] = rv;
    tree[u].emplace_back(v, e.gain);
    tree[v].emplace_back(u, -e.gain);
  }
  // Potentials: pot(head) = pot(tail) + gain along tree edges.
  std::vector<std::optional<GainVector>> pot(n);
  std::vector<std::size_t> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (pot[root]) continue;
    pot[root] = GainVector(k);
    stack.push_back(root);
    while (!stack.empty()) {
      std::size_t x = stack.back();
      stack.pop_back();
      for (const auto& [y, gain] : tree[x]) {
        if (pot[y]) continue;
        pot[y] = *pot[x] + gain;
        stack.push_back(y);
      }
    }
  }
  std::vector<std::vector<std::int64_t>> gens;
  gens.reserve(non_tree.size());
  for (std::size_t idx : non_tree) {
    const GainEdge& e = g.edge(idx);
    GainVector c = e.gain + *pot[g.index_of(e.tail)] - *pot[g.index_of(e.head)];
    gens.push_back(c.coords());
  }
  return gens;
}

/// Rank of the subgroup of Z^k generated by the gains of closed walks in
/// the subgraph spanned by the given edges.
inline std::size_t gain_rank(const GainGraph& g, std::span<const std::size_t> edge_indices) {
  if (g.k() == 0 || edge_indices.empty()) return 0;
  const auto gens = cycle_gain_generators(g, edge_indices);
  return integer_rank(gens, g.k());
}

inline std::size_t gain_rank(const GainGraph& g, std::span<const std::string> edge_ids) {
  std::vector<std::size_t> idx;
  idx.reserve(edge_ids.size());
  for (const auto& id : edge_ids) {
    auto i = g.find_edge(id);
    if (!i) throw std::invalid_argument("unknown edge '" + id + "'");
    idx.push_back(*i);
  }
  return gain_rank(g, std::span<const std::size_t>(idx));
}

inline std::size_t gain_rank(const GainGraph& g) {
  std::vector<std::size_t> all(g.edge_count());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return gain_rank(g, std::span<const std::size_t>(all));
}

/// Cone contraction G_v: every edge at v is oriented away from v, v is
/// removed, and for each pair of edges v->u, v->w with u != w an edge u->w
/// with gain psi(vw) - psi(vu) is inserted unless an equal edge (up to
/// reversal) already exists. Pairs into the same neighbour are skipped.
inline GainGraph cone_contract(const GainGraph& g, const std::string& v) {
  g.index_of(v);
  if (g.mode() != GraphMode::bar_joint)
    throw std::invalid_argument("cone contraction requires a bar-joint graph");
  std::vector<std::pair<std::string, GainVector>> spokes;  // (neighbour, gain v->nb)
  for (const auto& e : g.edges()) {
    if (e.tail == v && e.head != v) spokes.emplace_back(e.head, e.gain);
    else if (e.head == v && e.tail != v) spokes.emplace_back(e.tail, -e.gain);
  }
  GainGraph out = delete_vertex(g, v);
  const auto present = [&out](const std::string& a, const std::string& b,
                              const GainVector& gain) {
    return std::any_of(out.edges().begin(), out.edges().end(), [&](const GainEdge& e) {
      return (e.tail == a && e.head == b && e.gain == gain) ||
             (e.tail == b && e.head == a && e.gain == -gain);
    });
  };
  for (std::size_t i = 0; i < spokes.size(); ++i) {
    for (std::size_t j = i + 1; j < spokes.size(); ++j) {
      const auto& [u, gu] = spokes[i];
      const auto& [w, gw] = spokes[j];
      if (u == w) continue;
      GainVector gain = gw - gu;
      if (present(u, w, gain)) continue;
      out.add_edge(out.fresh_edge_id(), u, w, std::move(gain));
    }
  }
  return out;
}

struct CoveringVertex {
  std::string vertex;
  GainVector shift;
  friend bool operator==(const CoveringVertex&, const CoveringVertex&) = default;
};

struct CoveringEdge {
  std::size_t from;  // indices into CoveringWindow::vertices
  std::size_t to;
  std::string quotient_edge;
};

/// Finite window of the covering graph: shifts with every |coordinate| <= radius.
struct CoveringWindow {
  std::size_t radius = 0;
  std::vector<CoveringVertex> vertices;
  std::vector<CoveringEdge> edges;
};

/// All shifts in [-m, m]^k in lexicographic order.
inline std::vector<GainVector> window_shifts(std::size_t k, std::size_t m) {
  std::vector<GainVector> out;
  GainVector cur(k);
  const auto lo = -static_cast<std::int64_t>(m);
  const auto hi = static_cast<std::int64_t>(m);
  for (std::size_t i = 0; i < k; ++i) cur[i] = lo;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (cur[i] < hi) {
        ++cur[i];
        break;
      }
      cur[i] = lo;
      if (i == 0) return out;
    }
    if (k == 0) return out;
  }
}

inline CoveringWindow covering_window(const GainGraph& g, std::size_t m) {
  CoveringWindow w;
  w.radius = m;
  const auto shifts = window_shifts(g.k(), m);
  std::map<std::pair<std::size_t, GainVector>, std::size_t> where;
  for (std::size_t vi = 0; vi < g.vertex_count(); ++vi) {
    for (const auto& s : shifts) {
      where.emplace(std::make_pair(vi, s), w.vertices.size());
      w.vertices.push_back({g.vertices()[vi], s});
    }
  }
  for (const auto& e : g.edges()) {
    const std::size_t ti = g.index_of(e.tail);
    const std::size_t hi = g.index_of(e.head);
    for (const auto& s : shifts) {
      auto to = where.find({hi, s + e.gain});
      if (to == where.end()) continue;
      w.edges.push_back({where.at({ti, s}), to->second, e.id});
    }
  }
  return w;
}

}  // namespace perigid

#endif  // PERIGID_GAIN_GRAPH_HPP
