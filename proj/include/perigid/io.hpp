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

// JSON input documents and exporters.
//
// Document schema (unknown keys are rejected):
//   {
//     "dim": d, "periodicity": k,
//     "mode": "bar-joint" | "body-bar",            (default "bar-joint")
//     "lattice": [[r, ...k], ...d rows],           (optional)
//     "vertices": ["a", ...],
//     "edges": [{"id"?: "e0", "tail": "a", "head": "b", "gain": [ints, ...k]}],
//     "placement": {"a": [r, ...d], ...},          (optional)
//     "q": {"a": [r, ...d], ...}                   (optional)
//   }
// Rationals r are integers or "num/den" strings.

#ifndef PERIGID_IO_HPP
#define PERIGID_IO_HPP

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "perigid/body_bar.hpp"
#include "perigid/exact_linalg.hpp"
#include "perigid/gain_graph.hpp"
#include "perigid/motion.hpp"
#include "perigid/periodic_framework.hpp"
#include "perigid/rigidity_tests.hpp"

namespace perigid {

using Json = nlohmann::ordered_json;

struct InputDocument {
  std::size_t dim = 0;
  GainGraph graph;
  std::optional<Lattice> lattice;
  std::optional<Placement> placement;
  std::optional<Placement> q;
};

namespace detail {

inline void reject_unknown_keys(const Json& obj, const std::set<std::string>& allowed,
                                const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key)) throw std::invalid_argument("unknown field '" + key + "' in " + where);
}

inline const Json& require(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw std::invalid_argument("missing field '" + std::string(key) + "' in " + where);
  return *it;
}

inline std::size_t parse_count(const Json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    throw std::invalid_argument(what + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline Rational parse_rational_json(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return Rational(j.dump());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument(what + " must be an integer or a \"num/den\" string");
}

inline Point parse_point(const Json& j, std::size_t d, const std::string& what) {
  if (!j.is_array() || j.size() != d)
    throw std::invalid_argument(what + " must be an array of " + std::to_string(d) + " rationals");
  Point p;
  for (const auto& x : j) p.push_back(parse_rational_json(x, what));
  return p;
}

inline Placement parse_placement(const Json& j, const GainGraph& g, std::size_t d,
                                 const std::string& what) {
  if (!j.is_object()) throw std::invalid_argument(what + " must be an object");
  Placement p;
  for (const auto& [v, x] : j.items()) {
    if (!g.has_vertex(v)) throw std::invalid_argument(what + " places unknown vertex '" + v + "'");
    p.emplace(v, parse_point(x, d, what + "['" + v + "']"));
  }
  for (const auto& v : g.vertices())
    if (!p.count(v)) throw std::invalid_argument(what + " has no position for '" + v + "'");
  return p;
}

inline Json rational_json(const Rational& r) { return to_string(r); }

inline Json point_json(const Point& p) {
  Json a = Json::array();
  for (const auto& x : p) a.push_back(rational_json(x));
  return a;
}

}  // namespace detail

/// Lattice given as d rows of k rationals.
inline Lattice parse_lattice(const Json& j, std::size_t d, std::size_t k) {
  if (!j.is_array() || j.size() != d)
    throw std::invalid_argument("lattice must have " + std::to_string(d) + " rows");
  std::vector<Point> cols(k, Point(d));
  for (std::size_t i = 0; i < d; ++i) {
    if (!j[i].is_array() || j[i].size() != k)
      throw std::invalid_argument("lattice rows must have " + std::to_string(k) + " entries");
    for (std::size_t c = 0; c < k; ++c) cols[c][i] = detail::parse_rational_json(j[i][c], "lattice entry");
  }
  return Lattice(d, std::move(cols));
}

inline Json lattice_json(const Lattice& l) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < l.d(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < l.k(); ++c) row.push_back(detail::rational_json(l.columns()[c][i]));
    rows.push_back(row);
  }
  return rows;
}

/// Parses and validates a document; throws std::invalid_argument describing
/// the first problem found.
inline InputDocument parse_document(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("document must be a JSON object");
  detail::reject_unknown_keys(j, {"dim", "periodicity", "lattice", "mode", "vertices", "edges", "placement", "q"},
                              "document");
  InputDocument doc;
  doc.dim = detail::parse_count(detail::require(j, "dim", "document"), "dim");
  const std::size_t k = detail::parse_count(detail::require(j, "periodicity", "document"), "periodicity");
  if (doc.dim == 0) throw std::invalid_argument("dim must be at least 1");
  if (k > doc.dim) throw std::invalid_argument("periodicity exceeds dim");
  GraphMode mode = GraphMode::bar_joint;
  if (auto it = j.find("mode"); it != j.end()) {
    if (*it == "bar-joint") mode = GraphMode::bar_joint;
    else if (*it == "body-bar") mode = GraphMode::body_bar;
    else throw std::invalid_argument("mode must be \"bar-joint\" or \"body-bar\"");
  }
  doc.graph = GainGraph(k, mode);
  const Json& vertices = detail::require(j, "vertices", "document");
  if (!vertices.is_array()) throw std::invalid_argument("vertices must be an array");
  for (const auto& v : vertices) {
    if (!v.is_string()) throw std::invalid_argument("vertex ids must be strings");
    doc.graph.add_vertex(v.get<std::string>());
  }
  const Json& edges = detail::require(j, "edges", "document");
  if (!edges.is_array()) throw std::invalid_argument("edges must be an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Json& e = edges[i];
    const std::string where = "edge #" + std::to_string(i);
    if (!e.is_object()) throw std::invalid_argument(where + " must be an object");
    detail::reject_unknown_keys(e, {"id", "tail", "head", "gain"}, where);
    const Json& tail = detail::require(e, "tail", where);
    const Json& head = detail::require(e, "head", where);
    const Json& gain = detail::require(e, "gain", where);
    if (!tail.is_string() || !head.is_string())
      throw std::invalid_argument(where + " endpoints must be strings");
    if (!gain.is_array() || gain.size() != k)
      throw std::invalid_argument(where + " gain must be an array of " + std::to_string(k) + " integers");
    GainVector g(k);
    for (std::size_t c = 0; c < k; ++c) {
      if (!gain[c].is_number_integer()) throw std::invalid_argument(where + " gain entries must be integers");
      g[c] = gain[c].get<std::int64_t>();
    }
    std::string id;
    if (auto it = e.find("id"); it != e.end()) {
      if (!it->is_string()) throw std::invalid_argument(where + " id must be a string");
      id = it->get<std::string>();
    } else {
      id = "e" + std::to_string(i);
    }
    doc.graph.add_edge(id, tail.get<std::string>(), head.get<std::string>(), std::move(g));
  }
  const auto violations = validate(doc.graph);
  if (!violations.empty()) {
    std::string msg = "invalid graph:";
    for (const auto& v : violations) msg += " " + v.message + ";";
    throw std::invalid_argument(msg);
  }
  if (auto it = j.find("lattice"); it != j.end()) doc.lattice = parse_lattice(*it, doc.dim, k);
  if (auto it = j.find("placement"); it != j.end())
    doc.placement = detail::parse_placement(*it, doc.graph, doc.dim, "placement");
  if (auto it = j.find("q"); it != j.end()) doc.q = detail::parse_placement(*it, doc.graph, doc.dim, "q");
  return doc;
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline Json graph_document_json(std::size_t dim, const GainGraph& g,
                                const std::optional<Lattice>& lattice = std::nullopt) {
  Json doc;
  doc["dim"] = dim;
  doc["periodicity"] = g.k();
  doc["mode"] = to_string(g.mode());
  if (lattice) doc["lattice"] = lattice_json(*lattice);
  doc["vertices"] = g.vertices();
  Json edges = Json::array();
  for (const auto& e : g.edges())
    edges.push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}, {"gain", e.gain.coords()}});
  doc["edges"] = edges;
  return doc;
}

inline Json to_json(const RigidityVerdict& v) {
  return {{"rigid", v.rigid},
          {"achieved_rank", v.achieved_rank},
          {"target_rank", v.target_rank},
          {"method", to_string(v.method)},
          {"trials", v.trials},
          {"seed", v.seed}};
}

inline Json to_json(const RedundancyVerdict& r, const char* key) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"removed", c.removed},
                      {"rigid", c.verdict.rigid},
                      {"achieved_rank", c.verdict.achieved_rank},
                      {"target_rank", c.verdict.target_rank},
                      {"method", to_string(c.verdict.method)}});
  }
  Json out;
  out[key] = r.redundant;
  out["checks"] = checks;
  out["first_failure"] = r.first_failure ? Json(*r.first_failure) : Json(nullptr);
  return out;
}

inline Json to_json(const GlobalVerdict& v, const char* redundancy_key) {
  Json out;
  out["status"] = to_string(v.status);
  out["reason"] = to_string(v.reason);
  out["rigid"] = v.rigidity.rigid;
  out["achieved_rank"] = v.rigidity.achieved_rank;
  out["target_rank"] = v.rigidity.target_rank;
  out["method"] = to_string(v.rigidity.method);
  out["gain_rank"] = v.gain_rank;
  out[redundancy_key] = v.redundancy ? to_json(*v.redundancy, "holds") : Json(nullptr);
  out["trials"] = v.rigidity.trials;
  out["seed"] = v.rigidity.seed;
  return out;
}

inline Json to_json(const CountReport& r) {
  Json out;
  out["rigid"] = r.rigid;
  out["target"] = r.target;
  out["achieved"] = r.achieved;
  out["witness"] = r.witness;
  if (r.tightest_violation) {
    out["tightest_violation"] = {{"edges", r.tightest_violation->edges},
                                 {"bound", r.tightest_violation->bound},
                                 {"surplus", r.tightest_violation->surplus}};
  } else {
    out["tightest_violation"] = nullptr;
  }
  return out;
}

inline Json to_json(const PairWitness& w) {
  Json out;
  if (!w.edge_id.empty()) out["edge"] = w.edge_id;
  out["from"] = w.from;
  out["to"] = w.to;
  out["shift"] = w.shift.coords();
  out["witness"] = to_string(w.witness);
  out["trend"] = to_string(w.trend);
  return out;
}

inline Json to_json(const PathCertificate& c) {
  Json out;
  out["endpoints_exact"] = c.endpoints_exact;
  out["periodicity_exact"] = c.periodicity_exact;
  out["edges_preserved"] = c.edges_preserved;
  out["all_pairs_constant"] = c.all_pairs_constant;
  out["flexible"] = c.flexible;
  Json failing = Json::array();
  for (const auto& e : c.edges)
    if (e.trend != Trend::constant) failing.push_back(e.edge_id);
  out["failing_edges"] = failing;
  Json edges = Json::array();
  for (const auto& e : c.edges) edges.push_back(to_json(e));
  out["edges"] = edges;
  Json pairs = Json::array();
  for (const auto& p : c.pairs) pairs.push_back(to_json(p));
  out["pairs"] = pairs;
  return out;
}

inline std::string covering_label(const CoveringVertex& v) {
  std::string s = v.vertex + "[";
  for (std::size_t i = 0; i < v.shift.size(); ++i) s += (i ? "," : "") + std::to_string(v.shift[i]);
  return s + "]";
}

inline Json to_json(const CoveringWindow& w) {
  Json vertices = Json::array();
  for (const auto& v : w.vertices) vertices.push_back({{"vertex", v.vertex}, {"shift", v.shift.coords()}});
  Json edges = Json::array();
  for (const auto& e : w.edges) edges.push_back({{"from", e.from}, {"to", e.to}, {"edge", e.quotient_edge}});
  return {{"radius", w.radius}, {"vertices", vertices}, {"edges", edges}};
}

inline void write_dot(std::ostream& out, const CoveringWindow& w) {
  out << "graph covering {\n";
  for (const auto& v : w.vertices) out << "  \"" << covering_label(v) << "\";\n";
  for (const auto& e : w.edges) {
    out << "  \"" << covering_label(w.vertices[e.from]) << "\" -- \"" << covering_label(w.vertices[e.to])
        << "\" [label=\"" << e.quotient_edge << "\"];\n";
  }
  out << "}\n";
}

}  // namespace perigid

#endif  // PERIGID_IO_HPP
