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

// Continuous motion in R^{2d} between two L-periodic placements p and q of
// the same vertices. Vertex i follows
//
//   x_i(t) = (a_i + cos(pi t) b_i, sin(pi t) b_i),  a_i = (p_i + q_i)/2,
//                                                   b_i = (p_i - q_i)/2,
//
// and its translate by gamma follows x_i(t) + (L(gamma), 0). For two orbit
// points at relative shift gamma, with da = a_i - a_j and db = b_i - b_j,
//
//   |x_i(t) - x_j(t) - (L(gamma), 0)|^2
//       = |da - L(gamma)|^2 + |db|^2 + 2 cos(pi t) <da - L(gamma), db>,
//
// which is affine in cos(pi t). Each distance is therefore monotone on
// [0, 1], constant exactly when the witness <da - L(gamma), db> vanishes, and
// certificates reduce to exact rational inner products.

#ifndef PERIGID_MOTION_HPP
#define PERIGID_MOTION_HPP

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "perigid/gain_graph.hpp"
#include "perigid/periodic_framework.hpp"
#include "perigid/rigidity_tests.hpp"

namespace perigid {

struct FlexPath {
  std::size_t d = 0;
  std::size_t k = 0;
  Lattice lattice;  // the lattice in R^d; the path lives under (L, 0)
  std::map<std::string, Point> midpoint;
  std::map<std::string, Point> half_difference;

  /// (L, 0^d): Z^k -> R^{2d}.
  Lattice lifted_lattice() const {
    std::vector<Point> cols;
    for (const auto& c : lattice.columns()) {
      Point lifted = c;
      lifted.resize(2 * d, Rational(0));
      cols.push_back(std::move(lifted));
    }
    return Lattice(2 * d, std::move(cols));
  }
};

inline FlexPath build_flex_path(const Framework& f, const Placement& q) {
  f.check_placement(q);
  FlexPath path{f.d(), f.graph().k(), f.lattice(), {}, {}};
  const Rational half(1, 2);
  for (const auto& v : f.graph().vertices()) {
    const Point& p = f.point(v);
    const Point& r = q.at(v);
    Point a(f.d()), b(f.d());
    for (std::size_t i = 0; i < f.d(); ++i) {
      a[i] = (p[i] + r[i]) * half;
      b[i] = (p[i] - r[i]) * half;
    }
    path.midpoint.emplace(v, std::move(a));
    path.half_difference.emplace(v, std::move(b));
  }
  return path;
}

enum class Trend { constant, increasing, decreasing };

inline const char* to_string(Trend t) {
  switch (t) {
    case Trend::constant: return "constant";
    case Trend::increasing: return "increasing";
    case Trend::decreasing: return "decreasing";
  }
  return "?";
}

struct PairWitness {
  std::string from;
  std::string to;
  GainVector shift;
  std::string edge_id;  // empty for non-edge pairs
  Rational witness;     // <da - L(shift), db>
  Trend trend = Trend::constant;
};

/// Witness for the distance between `from` and the `shift` translate of
/// `to`. Distance squared decreases in t when positive (cos(pi t) falls).
inline PairWitness pair_witness(const FlexPath& path, const std::string& from,
                                const std::string& to, const GainVector& shift) {
  const Point da = path.midpoint.at(from) - path.midpoint.at(to) - path.lattice.image(shift);
  const Point db = path.half_difference.at(from) - path.half_difference.at(to);
  PairWitness w{from, to, shift, {}, dot(da, db), Trend::constant};
  const int s = sgn(w.witness);
  w.trend = s > 0 ? Trend::decreasing : (s < 0 ? Trend::increasing : Trend::constant);
  return w;
}

struct PathCertificate {
  bool endpoints_exact = false;
  bool periodicity_exact = false;
  bool edges_preserved = false;
  std::vector<PairWitness> edges;
  /// Vertex pairs u < v at shift 0 and at each lattice generator.
  std::vector<PairWitness> pairs;
  bool all_pairs_constant = false;
  bool flexible = false;  // some certified pair moves
};

/// Exact certificate for a path built from (f, q).
inline PathCertificate verify_path(const FlexPath& path, const Framework& f, const Placement& q) {
  f.check_placement(q);
  if (path.d != f.d() || path.k != f.graph().k() ||
      path.midpoint.size() != f.graph().vertex_count())
    throw std::invalid_argument("flex path does not match the framework");
  for (const auto& v : f.graph().vertices())
    if (!path.midpoint.count(v) || !path.half_difference.count(v))
      throw std::invalid_argument("flex path has no data for vertex '" + v + "'");

  PathCertificate cert;
  cert.endpoints_exact = true;
  for (const auto& v : f.graph().vertices()) {
    const Point& a = path.midpoint.at(v);
    const Point& b = path.half_difference.at(v);
    if (a + b != f.point(v) || a - b != q.at(v)) cert.endpoints_exact = false;
  }

  // Translates by gamma must follow the base orbit shifted by (L(gamma), 0):
  // recompute midpoint and half difference from the shifted endpoints.
  cert.periodicity_exact = true;
  const Rational half(1, 2);
  for (const auto& gamma : window_shifts(path.k, 1)) {
    const Point lg = path.lattice.image(gamma);
    const Point lg_path = f.lattice().image(gamma);
    for (const auto& v : f.graph().vertices()) {
      const Point p = f.point(v) + lg;
      const Point r = q.at(v) + lg;
      for (std::size_t i = 0; i < path.d; ++i) {
        const Rational a = (p[i] + r[i]) * half;
        const Rational b = (p[i] - r[i]) * half;
        if (a != path.midpoint.at(v)[i] + lg_path[i] || b != path.half_difference.at(v)[i])
          cert.periodicity_exact = false;
      }
    }
  }

  cert.edges_preserved = true;
  for (const auto& e : f.graph().edges()) {
    PairWitness w = pair_witness(path, e.tail, e.head, e.gain);
    w.edge_id = e.id;
    if (w.trend != Trend::constant) cert.edges_preserved = false;
    cert.edges.push_back(std::move(w));
  }

  cert.all_pairs_constant = true;
  const auto& vs = f.graph().vertices();
  std::vector<GainVector> shifts{GainVector(path.k)};
  for (std::size_t j = 0; j < path.k; ++j) {
    GainVector e(path.k);
    e[j] = 1;
    shifts.push_back(e);
  }
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      for (const auto& s : shifts) {
        PairWitness w = pair_witness(path, vs[i], vs[j], s);
        if (w.trend != Trend::constant) cert.all_pairs_constant = false;
        cert.pairs.push_back(std::move(w));
      }
    }
  }
  cert.flexible = !cert.all_pairs_constant;
  return cert;
}

struct TrajectoryRow {
  double t = 0;
  std::string vertex;
  GainVector shift;
  std::vector<double> coords;  // 2d entries
};

/// Floating-point samples of the path on a covering window, for export
/// only. Rows are ordered by t, then vertex, then shift.
inline std::vector<TrajectoryRow> sample_path(const FlexPath& path, std::size_t samples,
                                              std::size_t window) {
  if (samples < 2) throw std::invalid_argument("need at least two samples");
  std::vector<TrajectoryRow> rows;
  const auto shifts = window_shifts(path.k, window);
  for (std::size_t s = 0; s < samples; ++s) {
    const double t = static_cast<double>(s) / static_cast<double>(samples - 1);
    double c = std::cos(std::numbers::pi * t);
    double sn = std::sin(std::numbers::pi * t);
    if (s == 0) c = 1, sn = 0;
    if (s + 1 == samples) c = -1, sn = 0;
    for (const auto& [v, a] : path.midpoint) {
      const Point& b = path.half_difference.at(v);
      for (const auto& gamma : shifts) {
        const Point base = a + path.lattice.image(gamma);
        TrajectoryRow row{t, v, gamma, std::vector<double>(2 * path.d)};
        for (std::size_t i = 0; i < path.d; ++i) {
          row.coords[i] = base[i].get_d() + c * b[i].get_d();
          row.coords[path.d + i] = sn * b[i].get_d();
        }
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

/// CSV with header t,vertex,shift,x1..x2d; shift coordinates joined by ';'.
inline void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows,
                                 std::size_t d) {
  out << "t,vertex,shift";
  for (std::size_t i = 1; i <= 2 * d; ++i) out << ",x" << i;
  out << "\n";
  char buf[64];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%.12g", row.t);
    out << buf << "," << row.vertex << ",";
    for (std::size_t j = 0; j < row.shift.size(); ++j) out << (j ? ";" : "") << row.shift[j];
    for (double x : row.coords) {
      std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
      out << "," << buf;
    }
    out << "\n";
  }
}

/// For |V| <= d-k+1 generic rigidity already gives global rigidity, so the
/// answer is the rigidity verdict itself.
inline bool small_graph_global_check(const GainGraph& g, std::size_t d,
                                     const SamplingOptions& opts) {
  if (g.k() > d || g.vertex_count() > d - g.k() + 1)
    throw std::invalid_argument("small-graph check needs |V| <= d-k+1");
  return is_rigid(g, d, opts).rigid;
}

inline bool small_graph_global_check(const Framework& f, const SamplingOptions& opts = {}) {
  SamplingOptions with_lattice = opts;
  with_lattice.lattice = f.lattice();
  return small_graph_global_check(f.graph(), f.d(), with_lattice);
}

}  // namespace perigid

#endif  // PERIGID_MOTION_HPP
