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

// Periodic body-bar frameworks. A labelled multigraph H (bodies as
// vertices, bars as edges, loops allowed with non-identity gain) is expanded
// into a bar-joint gain graph: each body becomes a complete identity-gain
// graph on d+1 core joints plus one attachment joint per bar end, and each
// bar becomes a single edge between two attachment joints.

#ifndef PERIGID_BODY_BAR_HPP
#define PERIGID_BODY_BAR_HPP

#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "perigid/gain_graph.hpp"
#include "perigid/parallel.hpp"
#include "perigid/periodic_framework.hpp"
#include "perigid/rigidity_tests.hpp"

namespace perigid {

struct BodyBarGainGraph {
  GainGraph graph;
  std::map<std::string, std::vector<std::string>> bodies;  // body -> its joints
  std::map<std::string, std::string> bar_of;               // H edge id -> bar edge id
};

inline std::string core_joint(const std::string& body, std::size_t i) {
  return body + "#" + std::to_string(i);
}

namespace detail {

inline void check_body_bar_input(const GainGraph& h, std::size_t d) {
  if (h.mode() != GraphMode::body_bar)
    throw std::invalid_argument("expected a body-bar multigraph");
  if (d == 0) throw std::invalid_argument("dimension must be at least 1");
  if (h.k() > d) throw std::invalid_argument("periodicity exceeds dimension");
  if (h.vertex_count() == 0) throw std::invalid_argument("body-bar multigraph has no bodies");
  const auto violations = validate(h);
  if (!violations.empty()) throw std::invalid_argument(violations.front().message);
}

}  // namespace detail

inline BodyBarGainGraph build_body_bar_gain_graph(const GainGraph& h, std::size_t d) {
  detail::check_body_bar_input(h, d);
  BodyBarGainGraph out{GainGraph(h.k(), GraphMode::bar_joint), {}, {}};
  for (const auto& v : h.vertices()) {
    auto& joints = out.bodies[v];
    for (std::size_t i = 1; i <= d + 1; ++i) joints.push_back(core_joint(v, i));
  }
  // (tail joint, head joint) of each bar, in H edge order.
  std::vector<std::pair<std::string, std::string>> ends;
  for (const auto& e : h.edges()) {
    if (e.is_loop()) {
      ends.emplace_back(e.tail + "@" + e.id + "-", e.tail + "@" + e.id + "+");
      out.bodies[e.tail].push_back(ends.back().first);
      out.bodies[e.tail].push_back(ends.back().second);
    } else {
      ends.emplace_back(e.tail + "@" + e.id, e.head + "@" + e.id);
      out.bodies[e.tail].push_back(ends.back().first);
      out.bodies[e.head].push_back(ends.back().second);
    }
  }
  for (const auto& [body, joints] : out.bodies)
    for (const auto& j : joints) out.graph.add_vertex(j);
  const GainVector zero(h.k());
  for (const auto& [body, joints] : out.bodies)
    for (std::size_t a = 0; a < joints.size(); ++a)
      for (std::size_t b = a + 1; b < joints.size(); ++b)
        out.graph.add_edge("body:" + joints[a] + "|" + joints[b], joints[a], joints[b], zero);
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    const GainEdge& e = h.edge(i);
    out.graph.add_edge(e.id, ends[i].first, ends[i].second, e.gain);
    out.bar_of[e.id] = e.id;
  }
  return out;
}

/// Rigid after deleting any single bar (attachment joints stay). With no
/// bars at all this reduces to rigidity of the bodies themselves.
inline RedundancyVerdict is_bar_redundantly_rigid(const GainGraph& h, std::size_t d,
                                                  const SamplingOptions& opts) {
  const BodyBarGainGraph built = build_body_bar_gain_graph(h, d);
  RedundancyVerdict out;
  if (h.edge_count() == 0) {
    const auto whole = is_rigid(built.graph, d, opts);
    out.redundant = whole.rigid;
    return out;
  }
  out.checks.resize(h.edge_count());
  parallel_for(h.edge_count(), [&](std::size_t i) {
    const std::string& id = h.edge(i).id;
    SamplingOptions sub = opts;
    sub.task = child_task(opts.task, i);
    out.checks[i] = {id, is_rigid(delete_edge(built.graph, built.bar_of.at(id)), d, sub)};
  });
  for (const auto& c : out.checks) {
    if (!c.verdict.rigid) {
      out.redundant = false;
      out.first_failure = c.removed;
      break;
    }
  }
  return out;
}

/// Global rigidity of a generic body-bar realisation: bar-redundant
/// rigidity, plus gain rank d of the expanded graph when k = d. Never
/// returns Unknown.
inline GlobalVerdict decide_body_bar_global(const GainGraph& h, std::size_t d,
                                            const SamplingOptions& opts) {
  const BodyBarGainGraph built = build_body_bar_gain_graph(h, d);
  GlobalVerdict out;
  out.rigidity = is_rigid(built.graph, d, opts);
  out.gain_rank = gain_rank(built.graph);
  if (!out.rigidity.rigid) {
    out.status = GlobalStatus::not_globally_rigid;
    out.reason = GlobalReason::not_rigid;
    return out;
  }
  SamplingOptions sub = opts;
  sub.task = child_task(opts.task, 0);
  out.redundancy = is_bar_redundantly_rigid(h, d, sub);
  if (!out.redundancy->redundant) {
    out.status = GlobalStatus::not_globally_rigid;
    out.reason = GlobalReason::not_bar_redundant;
    return out;
  }
  if (h.k() == d && out.gain_rank != d) {
    out.status = GlobalStatus::not_globally_rigid;
    out.reason = GlobalReason::gain_rank_below_k;
    return out;
  }
  out.status = GlobalStatus::globally_rigid;
  out.reason = GlobalReason::bar_redundant_and_rank;
  return out;
}

struct CountViolation {
  std::vector<std::string> edges;
  std::int64_t bound = 0;  // C(d+1,2)|V(F)| - d - C(d-k(F),2)
  std::int64_t surplus = 0;  // |F| - bound, positive
};

struct CountReport {
  bool rigid = false;
  std::int64_t target = 0;
  std::size_t achieved = 0;
  std::vector<std::string> witness;  // a maximum independent edge set (a basis when rigid)
  std::optional<CountViolation> tightest_violation;
};

inline constexpr std::size_t kDefaultEdgeCap = 20;

/// Count-matroid rank of E(H) by subset enumeration. F is independent when
/// every nonempty F' of F has |F'| <= C(d+1,2)|V(F')| - d - C(d-k(F'),2),
/// with k(F') the gain rank of F'. Rigid iff the rank reaches
/// C(d+1,2)|V(H)| - d - C(d-k,2).
inline CountReport count_rank(const GainGraph& h, std::size_t d,
                              std::size_t edge_cap = kDefaultEdgeCap) {
  detail::check_body_bar_input(h, d);
  const std::size_t m = h.edge_count();
  if (m > edge_cap || m >= 63)
    throw std::invalid_argument("edge count " + std::to_string(m) + " exceeds enumeration cap " +
                                std::to_string(edge_cap));
  const auto body_dof = static_cast<std::int64_t>(choose2(d + 1));
  const auto sd = static_cast<std::int64_t>(d);
  const auto bound = [&](std::size_t vertices, std::size_t k) {
    return body_dof * static_cast<std::int64_t>(vertices) - sd -
           static_cast<std::int64_t>(choose2(d - k));
  };

  std::vector<std::size_t> tail(m), head(m);
  for (std::size_t i = 0; i < m; ++i) {
    tail[i] = h.index_of(h.edge(i).tail);
    head[i] = h.index_of(h.edge(i).head);
  }
  const std::uint64_t subsets = std::uint64_t{1} << m;
  std::vector<std::int64_t> limit(subsets, 0);
  std::vector<char> violates(subsets, 0);
  parallel_for(subsets - 1, [&](std::size_t s) {
    const std::uint64_t mask = s + 1;
    std::vector<std::size_t> idx;
    std::vector<char> touched(h.vertex_count(), 0);
    std::size_t vertices = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask >> i & 1)) continue;
      idx.push_back(i);
      for (std::size_t x : {tail[i], head[i]})
        if (!touched[x]) touched[x] = 1, ++vertices;
    }
    limit[mask] = bound(vertices, gain_rank(h, std::span<const std::size_t>(idx)));
    violates[mask] = static_cast<std::int64_t>(idx.size()) > limit[mask];
  });

  // Independence is hereditary: F is independent iff it satisfies its own
  // count and every F - e is independent.
  std::vector<char> independent(subsets, 0);
  independent[0] = 1;
  std::uint64_t best = 0;
  for (std::uint64_t mask = 1; mask < subsets; ++mask) {
    if (violates[mask]) continue;
    bool ok = true;
    for (std::uint64_t rest = mask; rest && ok; rest &= rest - 1)
      ok = independent[mask & ~(rest & -rest)];
    independent[mask] = ok;
    if (ok && std::popcount(mask) > std::popcount(best)) best = mask;
  }

  CountReport report;
  report.target = bound(h.vertex_count(), h.k());
  report.achieved = static_cast<std::size_t>(std::popcount(best));
  report.rigid = static_cast<std::int64_t>(report.achieved) == report.target;
  const auto ids = [&](std::uint64_t mask) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < m; ++i)
      if (mask >> i & 1) out.push_back(h.edge(i).id);
    return out;
  };
  report.witness = ids(best);
  if (!report.rigid) {
    std::optional<std::uint64_t> worst;
    std::int64_t worst_surplus = 0;
    for (std::uint64_t mask = 1; mask < subsets; ++mask) {
      if (!violates[mask]) continue;
      const std::int64_t surplus = std::popcount(mask) - limit[mask];
      if (!worst || surplus > worst_surplus ||
          (surplus == worst_surplus && std::popcount(mask) < std::popcount(*worst))) {
        worst = mask;
        worst_surplus = surplus;
      }
    }
    if (worst) report.tightest_violation = CountViolation{ids(*worst), limit[*worst], worst_surplus};
  }
  return report;
}

}  // namespace perigid

#endif  // PERIGID_BODY_BAR_HPP
