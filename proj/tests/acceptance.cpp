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


// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit status
// if any criterion fails. All checks are exact; the only tolerance in play
// is the wall-clock budget reported next to the timed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "perigid/body_bar.hpp"
#include "perigid/io.hpp"
#include "perigid/motion.hpp"
#include "perigid/rigidity_tests.hpp"

namespace {

using namespace perigid;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Budgets in seconds for the timed criteria.
constexpr double kCountEquivalenceBudget = 120.0;
constexpr double kPinnedRankBudget = 60.0;

InputDocument load_doc(const std::string& name) {
  return parse_document(read_json_file(std::string(PERIGID_SAMPLES_DIR) + "/" + name));
}

GainGraph classical(std::size_t n, const std::vector<std::pair<int, int>>& edges) {
  GainGraph g(0);
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i));
  for (const auto& [a, b] : edges)
    g.add_edge("v" + std::to_string(a), "v" + std::to_string(b), GainVector(0));
  return g;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void expect(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "failed: " : "; ") + what;
  }
}

Outcome count_matroid_matches_geometry() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260101);
  std::size_t instances = 0, agree = 0, rigid = 0;
  std::string first_mismatch;
  for (std::size_t d = 2; d <= 3; ++d) {
    for (std::size_t k = 0; k <= d; ++k) {
      for (int i = 0; i < 36; ++i) {
        const GainGraph h = oracle::random_body_bar(rng, 1 + rng() % 3, k, rng() % 6, 2);
        SamplingOptions opts;
        opts.seed = instances;
        const bool counted = count_rank(h, d).rigid;
        const bool geometric = is_rigid(build_body_bar_gain_graph(h, d).graph, d, opts).rigid;
        ++instances;
        rigid += counted;
        if (counted == geometric) {
          ++agree;
        } else if (first_mismatch.empty()) {
          first_mismatch = "; first mismatch at d=" + std::to_string(d) + ": " +
                           graph_document_json(d, h).dump();
        }
      }
    }
  }
  const double secs = seconds_since(start);
  Outcome o;
  o.pass = agree == instances && instances >= 200 && secs < kCountEquivalenceBudget;
  std::ostringstream s;
  s << agree << "/" << instances << " agree (" << rigid << " rigid), " << secs << " s of "
    << kCountEquivalenceBudget << " s" << first_mismatch;
  o.detail = s.str();
  return o;
}

Outcome two_orbit_pipeline() {
  const GainGraph g = load_doc("two_orbit.json").graph;
  Outcome o;
  const auto rigid = is_rigid(g, 2, {});
  const auto vrr = is_vertex_redundantly_rigid(g, 2, {});
  const auto global = decide_global_rigidity(g, 2, {});
  expect(o, rigid.rigid && rigid.achieved_rank == 2 && rigid.target_rank == 2, "is_rigid");
  expect(o, vrr.redundant, "vertex redundancy");
  expect(o, gain_rank(g) == 1 && oracle::gain_rank(g) == 1, "gain rank 1");
  expect(o, global.status == GlobalStatus::not_globally_rigid, "status");
  expect(o, global.reason == GlobalReason::gain_rank_below_k, "reason");
  if (o.pass) o.detail = "rigid 2/2, 2-rigid, gain rank 1, NotGloballyRigid/gain-rank-below-k";
  return o;
}

Outcome two_orbit_plus_globally_rigid() {
  const GainGraph g = load_doc("two_orbit_plus.json").graph;
  Outcome o;
  expect(o, is_rigid(g, 2, {}).rigid, "G rigid");
  for (const auto& v : g.vertices())
    expect(o, is_rigid(delete_vertex(g, v), 2, {}).rigid, "G-" + v + " rigid");
  expect(o, gain_rank(g) == 2 && oracle::gain_rank(g) == 2, "gain rank 2");
  const auto global = decide_global_rigidity(g, 2, {});
  expect(o, global.status == GlobalStatus::globally_rigid, "status");
  expect(o, global.reason == GlobalReason::redundant_rigidity_and_rank, "reason");
  if (o.pass) o.detail = std::string("G, G-a, G-b rigid; gain rank 2; GloballyRigid/") + to_string(global.reason);
  return o;
}

Outcome pinned_rank_identity() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20260104);
  std::size_t checked = 0, held = 0;
  for (std::size_t d = 1; d <= 3; ++d) {
    for (std::size_t k = 0; k <= d; ++k) {
      const std::size_t lo = std::max<std::size_t>(d - k, 1);
      for (std::size_t n = lo; n <= 6; ++n) {
        for (int rep = 0; rep < 2; ++rep) {
          const GainGraph g = oracle::random_bar_joint(rng, n, k, rng() % (3 * n + 1));
          const Framework f = random_generic_framework(g, d, std::nullopt, rng);
          const std::size_t r = rank(rigidity_matrix(f));
          const std::size_t pinned = rank(pinned_rigidity_matrix(f, make_pin_spec(g, d)));
          ++checked;
          held += pinned == r + d + choose2(d - k);
        }
      }
    }
  }
  const double secs = seconds_since(start);
  Outcome o;
  o.pass = held == checked && checked >= 50 && secs < kPinnedRankBudget;
  std::ostringstream s;
  s << held << "/" << checked << " frameworks, " << secs << " s of " << kPinnedRankBudget << " s";
  o.detail = s.str();
  return o;
}

Outcome flex_path_certificates() {
  const InputDocument doc = load_doc("two_orbit_flip.json");
  const Framework f(doc.graph, *doc.lattice, *doc.placement);
  Outcome o;
  const PathCertificate c = verify_path(build_flex_path(f, *doc.q), f, *doc.q);
  expect(o, c.endpoints_exact, "endpoints");
  expect(o, c.periodicity_exact, "periodicity");
  bool zero = true;
  for (const auto& e : c.edges) zero = zero && e.witness == 0;
  expect(o, zero && c.edges_preserved, "edge witnesses");
  bool moving = false;
  for (const auto& p : c.pairs) moving = moving || p.trend != Trend::constant;
  expect(o, moving && c.flexible, "moving non-edge pair");
  const PathCertificate same = verify_path(build_flex_path(f, f.placement()), f, f.placement());
  expect(o, same.all_pairs_constant && !same.flexible, "q = p constant");
  if (o.pass) o.detail = "flip pair flexible with all edge witnesses 0; q = p all constant";
  return o;
}

Outcome classical_reduction() {
  Outcome o;
  const GainGraph triangle = classical(3, {{0, 1}, {1, 2}, {0, 2}});
  const GainGraph square = classical(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  const GainGraph k4 = classical(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  expect(o, is_rigid(triangle, 2, {}).rigid && oracle::laman_rigid(triangle), "triangle");
  expect(o, !is_rigid(square, 2, {}).rigid && !oracle::laman_rigid(square), "4-cycle");
  expect(o, is_rigid(k4, 2, {}).rigid && oracle::laman_rigid(k4), "K4");
  if (o.pass) o.detail = "triangle rigid, 4-cycle flexible, K4 rigid";
  return o;
}

Outcome switching_invariance() {
  struct Instance {
    std::string name;
    GainGraph graph;
    std::size_t d;
  };
  std::vector<Instance> corpus;
  for (const char* name : {"two_orbit.json", "two_orbit_plus.json", "triangle.json", "single_orbit.json"}) {
    const InputDocument doc = load_doc(name);
    corpus.push_back({name, doc.graph, doc.dim});
  }
  corpus.push_back({"4-cycle", classical(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), 2});
  corpus.push_back({"K4", classical(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}), 2});
  {
    GainGraph g(1);
    g.add_vertex("u");
    g.add_vertex("v");
    g.add_edge("u", "v", GainVector{0});
    g.add_edge("u", "v", GainVector{1});
    corpus.push_back({"two orbits d=3 k=1", g, 3});
  }
  std::mt19937_64 rng(20260107);
  for (int i = 0; corpus.size() < 12; ++i) {
    const std::size_t d = 2 + i % 2;
    GainGraph g = oracle::random_bar_joint(rng, 3 + rng() % 2, 1 + rng() % d, 7);
    corpus.push_back({"random " + std::to_string(i), std::move(g), d});
  }

  Outcome o;
  std::size_t operations = 0;
  for (const auto& inst : corpus) {
    const std::size_t k = inst.graph.k();
    const auto rank0 = generic_rank(inst.graph, inst.d, {});
    const auto rigid0 = is_rigid(inst.graph, inst.d, {});
    const auto global0 = decide_global_rigidity(inst.graph, inst.d, {});
    GainGraph g = inst.graph;
    for (int step = 0; step < 100; ++step) {
      if (g.edge_count() == 0 || rng() % 2) {
        GainVector gamma(k);
        for (std::size_t j = 0; j < k; ++j) gamma[j] = static_cast<std::int64_t>(rng() % 5) - 2;
        g = switch_vertex(g, g.vertices()[rng() % g.vertex_count()], gamma);
      } else {
        g = reverse_edge(g, g.edge(rng() % g.edge_count()).id);
      }
      ++operations;
      const auto rigid = is_rigid(g, inst.d, {});
      const auto global = decide_global_rigidity(g, inst.d, {});
      const bool same = generic_rank(g, inst.d, {}) == rank0 && rigid.rigid == rigid0.rigid &&
                        rigid.achieved_rank == rigid0.achieved_rank &&
                        rigid.target_rank == rigid0.target_rank &&
                        global.status == global0.status && global.reason == global0.reason;
      if (!same) {
        expect(o, false, inst.name + " step " + std::to_string(step));
        break;
      }
    }
  }
  if (o.pass) {
    o.detail = std::to_string(corpus.size()) + " instances, " + std::to_string(operations) +
               " switchings/reversals, all verdicts unchanged";
  }
  return o;
}

Outcome congruence_consistency() {
  std::mt19937_64 rng(20260108);
  Outcome o;
  std::size_t congruent = 0, equivalent_only = 0, neither = 0;
  const GainGraph two_orbit = load_doc("two_orbit.json").graph;
  for (int i = 0; i < 100; ++i) {
    const int kind = i % 5;
    std::size_t d = 2;
    std::size_t k = 2;
    GainGraph g = two_orbit;
    std::optional<Lattice> lattice = Lattice::identity(2, 2);
    if (kind != 4) {
      d = 1 + rng() % 3;
      k = rng() % (d + 1);
      g = oracle::random_bar_joint(rng, 2 + rng() % 3, k, 6);
      lattice.reset();
    }
    const Framework f = random_generic_framework(g, d, lattice, rng);
    Placement q = f.placement();
    switch (kind) {
      case 0:  // translation
        for (auto& [v, p] : q)
          for (std::size_t c = 0; c < d; ++c) p[c] += Rational(static_cast<long>(c) + 3, 7);
        break;
      case 1:  // reflection in the first coordinate
        for (auto& [v, p] : q) p[0] = -p[0];
        break;
      case 2:  // perturbation of one coordinate
        q.begin()->second[rng() % d] += Rational(1, 3);
        break;
      case 3:  // rotation in the first two coordinates by the 3-4-5 angle
        if (d >= 2)
          for (auto& [v, p] : q) {
            const Rational x = p[0], y = p[1];
            p[0] = Rational(3, 5) * x - Rational(4, 5) * y;
            p[1] = Rational(4, 5) * x + Rational(3, 5) * y;
          }
        break;
      default: {  // mirror b's offset from a in the second coordinate
        const Rational a1 = q.at("a")[1];
        Rational& b1 = q.at("b")[1];
        b1 = a1 - (b1 - a1);
        break;
      }
    }
    const bool cong = are_congruent(f, q);
    const bool equiv = are_equivalent(f, q);
    const PathCertificate c = verify_path(build_flex_path(f, q), f, q);
    expect(o, !cong || equiv, "congruent but not equivalent at pair " + std::to_string(i));
    expect(o, c.all_pairs_constant == cong, "all-constant flag at pair " + std::to_string(i));
    expect(o, c.edges_preserved == equiv, "edge flag at pair " + std::to_string(i));
    congruent += cong;
    equivalent_only += equiv && !cong;
    neither += !equiv;
  }
  expect(o, congruent > 0 && equivalent_only > 0 && neither > 0, "all three classes present");
  if (o.pass) {
    o.detail = "100 pairs: " + std::to_string(congruent) + " congruent, " +
               std::to_string(equivalent_only) + " equivalent only, " + std::to_string(neither) +
               " neither";
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"count matroid agrees with body-bar geometric rank", count_matroid_matches_geometry},
      {"two-orbit example: 2-rigid, gain rank 1, not globally rigid", two_orbit_pipeline},
      {"two-orbit example plus (0,1) edge: globally rigid", two_orbit_plus_globally_rigid},
      {"pinned rank adds d + C(d-k,2)", pinned_rank_identity},
      {"flex path certificates", flex_path_certificates},
      {"classical reduction at k = 0", classical_reduction},
      {"invariance under switching and reversal", switching_invariance},
      {"congruence and equivalence consistency", congruence_consistency},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("criterion %zu [%s] %s: %s\n", i + 1, o.pass ? "PASS" : "FAIL",
                criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
