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

#ifndef PERIGID_PERIODIC_FRAMEWORK_HPP
#define PERIGID_PERIODIC_FRAMEWORK_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "perigid/exact_linalg.hpp"
#include "perigid/gain_graph.hpp"

namespace perigid {

using Point = std::vector<Rational>;

inline Point operator-(const Point& a, const Point& b) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

inline Point operator+(const Point& a, const Point& b) {
  Point out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

inline Rational dot(const Point& a, const Point& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rational squared_norm(const Point& a) { return dot(a, a); }

inline std::size_t choose2(std::size_t n) { return n < 2 ? 0 : n * (n - 1) / 2; }

/// Nonsingular homomorphism Z^k -> R^d, stored as its k column images.
class Lattice {
 public:
  /// Throws std::invalid_argument unless k <= d and the columns are
  /// linearly independent.
  Lattice(std::size_t d, std::vector<Point> columns) : d_(d), columns_(std::move(columns)) {
    if (columns_.size() > d_)
      throw std::invalid_argument("lattice rank k=" + std::to_string(columns_.size()) +
                                  " exceeds dimension d=" + std::to_string(d_));
    for (const auto& c : columns_)
      if (c.size() != d_) throw std::invalid_argument("lattice column has wrong dimension");
    if (rank(as_matrix()) != columns_.size())
      throw std::invalid_argument("lattice is singular (columns are dependent)");
  }

  static Lattice identity(std::size_t d, std::size_t k) {
    std::vector<Point> cols(k, Point(d, Rational(0)));
    for (std::size_t j = 0; j < k; ++j) cols[j][j] = 1;
    return Lattice(d, std::move(cols));
  }

  std::size_t d() const { return d_; }
  std::size_t k() const { return columns_.size(); }
  const std::vector<Point>& columns() const { return columns_; }

  Point image(const GainVector& gamma) const {
    if (gamma.size() != k()) throw std::invalid_argument("gain rank does not match lattice");
    Point out(d_, Rational(0));
    for (std::size_t j = 0; j < k(); ++j) {
      if (gamma[j] == 0) continue;
      const Rational coeff(static_cast<long>(gamma[j]));
      for (std::size_t i = 0; i < d_; ++i) out[i] += coeff * columns_[j][i];
    }
    return out;
  }

  /// d x k matrix whose columns are the generator images.
  RationalMatrix as_matrix() const {
    RationalMatrix m(d_, k());
    for (std::size_t j = 0; j < k(); ++j)
      for (std::size_t i = 0; i < d_; ++i) m(i, j) = columns_[j][i];
    return m;
  }

 private:
  std::size_t d_;
  std::vector<Point> columns_;
};

using Placement = std::map<std::string, Point>;

/// Bar-joint gain graph with a lattice and a placement of its vertices.
class Framework {
 public:
  Framework(GainGraph graph, Lattice lattice, Placement placement)
      : graph_(std::move(graph)), lattice_(std::move(lattice)), placement_(std::move(placement)) {
    if (graph_.k() != lattice_.k())
      throw std::invalid_argument("graph periodicity does not match lattice rank");
    check_placement(placement_);
  }

  const GainGraph& graph() const { return graph_; }
  const Lattice& lattice() const { return lattice_; }
  const Placement& placement() const { return placement_; }
  std::size_t d() const { return lattice_.d(); }
  const Point& point(const std::string& v) const { return placement_.at(v); }

  /// Throws unless `q` places exactly the graph's vertices in R^d.
  void check_placement(const Placement& q) const {
    if (q.size() != graph_.vertex_count())
      throw std::invalid_argument("placement does not cover exactly the vertex set");
    for (const auto& v : graph_.vertices()) {
      auto it = q.find(v);
      if (it == q.end()) throw std::invalid_argument("vertex '" + v + "' has no position");
      if (it->second.size() != d())
        throw std::invalid_argument("position of '" + v + "' has wrong dimension");
    }
  }

  Framework with_placement(Placement q) const { return Framework(graph_, lattice_, std::move(q)); }

 private:
  GainGraph graph_;
  Lattice lattice_;
  Placement placement_;
};

/// Edge vector p(tail) - p(head) - L(gain).
inline Point edge_vector(const Framework& f, const GainEdge& e) {
  return f.point(e.tail) - f.point(e.head) - f.lattice().image(e.gain);
}

/// Squared length of every edge, in edge order.
inline std::vector<Rational> edge_measurements(const Framework& f) {
  std::vector<Rational> out;
  out.reserve(f.graph().edge_count());
  for (const auto& e : f.graph().edges()) out.push_back(squared_norm(edge_vector(f, e)));
  return out;
}

/// Jacobian of the squared-length map with the factor 2 dropped: |E| rows,
/// d|V| columns, vertex blocks in vertex order.
inline RationalMatrix rigidity_matrix(const Framework& f) {
  const GainGraph& g = f.graph();
  const std::size_t d = f.d();
  RationalMatrix m(g.edge_count(), d * g.vertex_count());
  for (std::size_t r = 0; r < g.edge_count(); ++r) {
    const GainEdge& e = g.edge(r);
    if (e.is_loop()) continue;  // constant length, no constraint
    const Point x = edge_vector(f, e);
    const std::size_t tu = g.index_of(e.tail) * d;
    const std::size_t hv = g.index_of(e.head) * d;
    for (std::size_t i = 0; i < d; ++i) {
      m(r, tu + i) = x[i];
      m(r, hv + i) = -x[i];
    }
  }
  return m;
}

/// Vertices whose coordinates are pinned and how many leading coordinates
/// each one pins: d at the first, then d-k-1, d-k-2, ..., 1.
struct PinSpec {
  std::vector<std::string> vertices;
  std::vector<std::size_t> counts;

  std::size_t total() const {
    std::size_t s = 0;
    for (auto c : counts) s += c;
    return s;
  }
};

/// Pins the first max{d-k, 1} vertices (or `chosen`, when given). The pin
/// total is d + C(d-k, 2), one row per trivial motion.
inline PinSpec make_pin_spec(const GainGraph& g, std::size_t d,
                             std::vector<std::string> chosen = {}) {
  const std::size_t k = g.k();
  if (k > d) throw std::invalid_argument("periodicity exceeds dimension");
  const std::size_t t = std::max<std::size_t>(d - k, 1);
  if (g.vertex_count() < t)
    throw std::invalid_argument("too few vertices to pin: need " + std::to_string(t));
  if (chosen.empty()) {
    chosen.assign(g.vertices().begin(), g.vertices().begin() + static_cast<std::ptrdiff_t>(t));
  }
  if (chosen.size() != t) throw std::invalid_argument("pin set must have exactly t vertices");
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    g.index_of(chosen[i]);
    for (std::size_t j = 0; j < i; ++j)
      if (chosen[i] == chosen[j]) throw std::invalid_argument("pinned vertices must be distinct");
  }
  PinSpec pins;
  pins.vertices = std::move(chosen);
  pins.counts.push_back(d);
  for (std::size_t i = 2; i <= t; ++i) pins.counts.push_back(d - k - i + 1);
  return pins;
}

/// Rigidity matrix stacked with one unit row per pinned coordinate.
inline RationalMatrix pinned_rigidity_matrix(const Framework& f, const PinSpec& pins) {
  RationalMatrix m = rigidity_matrix(f);
  const std::size_t d = f.d();
  RationalMatrix extra(pins.total(), m.cols());
  std::size_t r = 0;
  for (std::size_t i = 0; i < pins.vertices.size(); ++i) {
    const std::size_t base = f.graph().index_of(pins.vertices[i]) * d;
    for (std::size_t c = 0; c < pins.counts[i]; ++c) extra(r++, base + c) = 1;
  }
  m.append_rows(extra);
  return m;
}

/// Deterministic generator for task `task`, trial `trial` under `seed`.
inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t task, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(task), static_cast<std::uint32_t>(task >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  return std::mt19937_64(seq);
}

/// Uniform integer in [1, 2^30]; uses only the standardized engine output.
inline Rational sample_coordinate(std::mt19937_64& rng) {
  return Rational(static_cast<unsigned long>((rng() >> 34) + 1));
}

inline Lattice random_lattice(std::size_t d, std::size_t k, std::mt19937_64& rng) {
  if (k > d) throw std::invalid_argument("periodicity exceeds dimension");
  while (true) {
    std::vector<Point> cols(k, Point(d));
    for (auto& c : cols)
      for (auto& x : c) x = sample_coordinate(rng);
    RationalMatrix m(d, k);
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < d; ++i) m(i, j) = cols[j][i];
    if (rank(m) == k) return Lattice(d, std::move(cols));
  }
}

/// Random integer placement (and lattice, when none is supplied).
inline Framework random_generic_framework(const GainGraph& g, std::size_t d,
                                          const std::optional<Lattice>& lattice,
                                          std::mt19937_64& rng) {
  if (g.mode() != GraphMode::bar_joint)
    throw std::invalid_argument("frameworks require a bar-joint graph");
  if (lattice && (lattice->d() != d || lattice->k() != g.k()))
    throw std::invalid_argument("lattice shape does not match d and k");
  Lattice l = lattice ? *lattice : random_lattice(d, g.k(), rng);
  Placement p;
  for (const auto& v : g.vertices()) {
    Point x(d);
    for (auto& c : x) c = sample_coordinate(rng);
    p.emplace(v, std::move(x));
  }
  return Framework(g, std::move(l), std::move(p));
}

inline Framework random_generic_framework(const GainGraph& g, std::size_t d,
                                          const std::optional<Lattice>& lattice,
                                          std::uint64_t seed) {
  auto rng = make_rng(seed, 0, 0);
  return random_generic_framework(g, d, lattice, rng);
}

struct SamplingOptions {
  std::size_t trials = 3;
  std::uint64_t seed = 0;
  std::optional<Lattice> lattice;
  std::uint64_t task = 0;  // sub-stream index for nested decisions
};

/// Maximum rigidity-matrix rank over independent random frameworks.
inline std::size_t generic_rank(const GainGraph& g, std::size_t d, const SamplingOptions& opts) {
  if (opts.trials == 0) throw std::invalid_argument("trials must be at least 1");
  if (g.k() > d) throw std::invalid_argument("periodicity exceeds dimension");
  const std::size_t ceiling = std::min(g.edge_count(), d * g.vertex_count());
  std::size_t best = 0;
  for (std::size_t t = 0; t < opts.trials && best < ceiling; ++t) {
    auto rng = make_rng(opts.seed, opts.task, t);
    best = std::max(best, rank(rigidity_matrix(random_generic_framework(g, d, opts.lattice, rng))));
  }
  return best;
}

/// Equal squared edge lengths under p and q.
inline bool are_equivalent(const Framework& f, const Placement& q) {
  f.check_placement(q);
  return edge_measurements(f) == edge_measurements(f.with_placement(q));
}

/// Equal measurements over the complete labelled graph on V, reduced to
/// finitely many exact checks: for all vertex pairs, equal squared distance
/// and equal inner products of the difference with every lattice column.
inline bool are_congruent(const Framework& f, const Placement& q) {
  f.check_placement(q);
  const auto& vs = f.graph().vertices();
  const auto& cols = f.lattice().columns();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      const Point x = f.point(vs[i]) - f.point(vs[j]);
      const Point y = q.at(vs[i]) - q.at(vs[j]);
      if (squared_norm(x) != squared_norm(y)) return false;
      for (const auto& c : cols)
        if (dot(x, c) != dot(y, c)) return false;
    }
  }
  return true;
}

}  // namespace perigid

#endif  // PERIGID_PERIODIC_FRAMEWORK_HPP
