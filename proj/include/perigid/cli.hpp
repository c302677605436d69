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

// Command-line front end. Exit codes: 0 when the analysis completed
// (whatever the verdict), 2 on invalid input. Nothing is written to the
// output stream before the input has been fully validated.

#ifndef PERIGID_CLI_HPP
#define PERIGID_CLI_HPP

#include <cstdint>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "perigid/body_bar.hpp"
#include "perigid/io.hpp"
#include "perigid/motion.hpp"
#include "perigid/rigidity_tests.hpp"

namespace perigid {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidInput = 2;

namespace detail {

struct CliOptions {
  std::string file;
  std::size_t trials = 3;
  std::uint64_t seed = 0;
  std::string lattice_file;
  std::string action;
  std::size_t edge_cap = kDefaultEdgeCap;
  std::size_t samples = 11;
  std::size_t window = 1;
  std::string out;
  std::string format = "json";
};

inline InputDocument load_document(const CliOptions& o) {
  InputDocument doc = parse_document(read_json_file(o.file));
  if (!o.lattice_file.empty()) {
    Json l = read_json_file(o.lattice_file);
    if (l.is_object()) {
      reject_unknown_keys(l, {"lattice"}, "lattice file");
      l = require(l, "lattice", "lattice file");
    }
    doc.lattice = parse_lattice(l, doc.dim, doc.graph.k());
  }
  return doc;
}

inline SamplingOptions sampling(const CliOptions& o, const InputDocument& doc) {
  if (o.trials == 0) throw std::invalid_argument("--trials must be at least 1");
  return SamplingOptions{o.trials, o.seed, doc.lattice, 0};
}

inline void require_mode(const InputDocument& doc, GraphMode mode) {
  if (doc.graph.mode() != mode)
    throw std::invalid_argument(std::string("this command needs a ") + to_string(mode) + " document");
}

inline Json cmd_rigid(const CliOptions& o) {
  const InputDocument doc = load_document(o);
  require_mode(doc, GraphMode::bar_joint);
  return to_json(is_rigid(doc.graph, doc.dim, sampling(o, doc)));
}

inline Json cmd_vrr(const CliOptions& o) {
  const InputDocument doc = load_document(o);
  require_mode(doc, GraphMode::bar_joint);
  const SamplingOptions opts = sampling(o, doc);
  Json out = to_json(is_vertex_redundantly_rigid(doc.graph, doc.dim, opts), "vrr");
  out["trials"] = opts.trials;
  out["seed"] = opts.seed;
  return out;
}

inline Json cmd_global(const CliOptions& o) {
  const InputDocument doc = load_document(o);
  require_mode(doc, GraphMode::bar_joint);
  return to_json(decide_global_rigidity(doc.graph, doc.dim, sampling(o, doc)), "vrr");
}

inline Json cmd_bodybar(const CliOptions& o) {
  const InputDocument doc = load_document(o);
  require_mode(doc, GraphMode::body_bar);
  if (o.action == "global") {
    return to_json(decide_body_bar_global(doc.graph, doc.dim, sampling(o, doc)), "bar_redundant");
  }
  if (o.action == "counts") return to_json(count_rank(doc.graph, doc.dim, o.edge_cap));
  const BodyBarGainGraph built = build_body_bar_gain_graph(doc.graph, doc.dim);
  return graph_document_json(doc.dim, built.graph, doc.lattice);
}

inline Json cmd_flexpath(const CliOptions& o) {
  const InputDocument doc = load_document(o);
  require_mode(doc, GraphMode::bar_joint);
  if (!doc.placement || !doc.q)
    throw std::invalid_argument("flexpath needs both \"placement\" and \"q\"");
  if (!doc.lattice && doc.graph.k() > 0)
    throw std::invalid_argument("flexpath needs a lattice when periodicity > 0");
  if (o.samples < 2) throw std::invalid_argument("--samples must be at least 2");
  const Lattice lattice = doc.lattice ? *doc.lattice : Lattice(doc.dim, {});
  const Framework f(doc.graph, lattice, *doc.placement);
  const FlexPath path = build_flex_path(f, *doc.q);
  const PathCertificate cert = verify_path(path, f, *doc.q);
  Json out;
  out["equivalent"] = are_equivalent(f, *doc.q);
  out["congruent"] = are_congruent(f, *doc.q);
  const Json cert_json = to_json(cert);
  for (const auto& [key, value] : cert_json.items()) out[key] = value;
  if (!o.out.empty()) {
    std::ofstream csv(o.out);
    if (!csv) throw std::invalid_argument("cannot write '" + o.out + "'");
    write_trajectory_csv(csv, sample_path(path, o.samples, o.window), path.d);
    out["csv"] = o.out;
  } else {
    out["csv"] = nullptr;
  }
  return out;
}

inline std::string cmd_covering(const CliOptions& o) {
  if (o.format != "json" && o.format != "dot")
    throw std::invalid_argument("--format must be json or dot");
  const InputDocument doc = load_document(o);
  const CoveringWindow w = covering_window(doc.graph, o.window);
  if (o.format == "json") return to_json(w).dump(2) + "\n";
  std::ostringstream s;
  write_dot(s, w);
  return s.str();
}

}  // namespace detail

/// Runs the CLI on `args` (args[0] is the program name).
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rigidity and global rigidity of fixed-lattice periodic frameworks", "perigid"};
  app.require_subcommand(1);
  detail::CliOptions o;

  const auto add_sampling = [&o](CLI::App* sub) {
    sub->add_option("file", o.file, "Input document (JSON)")->required();
    sub->add_option("--trials", o.trials, "Random placements per rank estimate")->capture_default_str();
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    sub->add_option("--lattice-file", o.lattice_file, "JSON lattice overriding the document's");
  };
  auto* rigid = app.add_subcommand("rigid", "Generic periodic rigidity");
  add_sampling(rigid);
  auto* vrr = app.add_subcommand("vrr", "Vertex-redundant (2-)rigidity");
  add_sampling(vrr);
  auto* global = app.add_subcommand("global", "Global rigidity decision");
  add_sampling(global);
  auto* bodybar = app.add_subcommand("bodybar", "Body-bar frameworks");
  bodybar->add_option("action", o.action, "global | counts | build")
      ->required()
      ->check(CLI::IsMember({"global", "counts", "build"}));
  add_sampling(bodybar);
  bodybar->add_option("--edge-cap", o.edge_cap, "Largest edge count for subset enumeration")
      ->capture_default_str();
  auto* flexpath = app.add_subcommand("flexpath", "Certify the R^{2d} motion between p and q");
  flexpath->add_option("file", o.file, "Input document with placement and q")->required();
  flexpath->add_option("--samples", o.samples, "Trajectory samples in t")->capture_default_str();
  flexpath->add_option("--window", o.window, "Covering window radius for the trajectory")
      ->capture_default_str();
  flexpath->add_option("--out", o.out, "Write the trajectory CSV here");
  auto* covering = app.add_subcommand("covering", "Dump a window of the covering graph");
  covering->add_option("file", o.file, "Input document")->required();
  covering->add_option("--window", o.window, "Window radius")->capture_default_str();
  covering->add_option("--format", o.format, "json | dot")->capture_default_str();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalidInput;
  }

  try {
    std::string text;
    if (rigid->parsed()) text = detail::cmd_rigid(o).dump(2) + "\n";
    else if (vrr->parsed()) text = detail::cmd_vrr(o).dump(2) + "\n";
    else if (global->parsed()) text = detail::cmd_global(o).dump(2) + "\n";
    else if (bodybar->parsed()) text = detail::cmd_bodybar(o).dump(2) + "\n";
    else if (flexpath->parsed()) text = detail::cmd_flexpath(o).dump(2) + "\n";
    else text = detail::cmd_covering(o);
    out << text;
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const Json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitOk;
}

}  // namespace perigid

#endif  // PERIGID_CLI_HPP
