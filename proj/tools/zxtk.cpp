// Copyright 2026 The zxtk Authors
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

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "zxtk/dsl.hpp"
#include "zxtk/error.hpp"
#include "zxtk/graph.hpp"
#include "zxtk/ground.hpp"
#include "zxtk/interp.hpp"
#include "zxtk/json_io.hpp"
#include "zxtk/semantics.hpp"
#include "zxtk/suites.hpp"
#include "zxtk/text.hpp"

namespace {

using namespace zxtk;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

struct Output {
  std::string path;
  bool text = false;

  void emit(const json& j, const std::string& human) const {
    if (!path.empty()) write_file(path, dump(j));
    if (text)
      std::cout << human;
    else if (path.empty())
      std::cout << dump(j);
  }
};

std::optional<std::size_t> env_fuse() {
  const char* v = std::getenv("ZXTK_FUSE");
  if (!v || !*v) return std::nullopt;
  char* end = nullptr;
  const unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0') throw ParseError("ZXTK_FUSE must be a step count", 0);
  return static_cast<std::size_t>(n);
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t)
      .count();
}

// --- interp ---------------------------------------------------------------

int cmd_interp(const std::string& file, bool cpm, const Output& out) {
  const Diagram d = load_diagram(file);
  const Matrix m = cpm ? interp_cpm(d) : interp(d);
  out.emit(matrix_to_json(m), format_matrix(m));
  return kOk;
}

// --- run ------------------------------------------------------------------

struct RunFlags {
  std::string input;
  std::string input_state;
  std::string scheduler = "least";
  std::uint64_t seed = 0;
  std::string trace;
  bool force = false;
};

template <class Tok>
int finish_run(const Diagram& d, const State<Tok>& seed, const RunFlags& f,
               const Output& out) {
  RunConfig cfg;
  cfg.scheduler = f.scheduler;
  cfg.seed = f.seed;
  cfg.options.force = f.force;
  cfg.options.fuse = env_fuse();
  cfg.options.record_trace = !f.trace.empty();
  const auto r = run_with(d, seed, cfg);
  if (!f.trace.empty()) write_file(f.trace, trace_to_jsonl(d, r.trace));
  if (r.status == RunStatus::FuseTripped) {
    std::cerr << "zxtk: step fuse tripped after " << r.steps << " steps\n";
    return kFailed;
  }
  out.emit(state_to_json(d, r.state), format_state(d, r.state));
  return kOk;
}

int cmd_run(const std::string& file, const RunFlags& f, const Output& out) {
  const Diagram d = load_diagram(file);
  const bool ground = d.has_ground();
  if (f.input.empty() == f.input_state.empty())
    throw ArityError("give exactly one of --input and --input-state");

  if (!f.input_state.empty()) {
    const json j = parse_json(read_file(f.input_state));
    if (j.value("kind", "pure") == "ground")
      return finish_run(d, state_from_json<GroundToken>(d, j), f, out);
    if (ground)
      throw InvalidDiagram("diagram has a ground; give a ground token state");
    return finish_run(d, state_from_json<Token>(d, j), f, out);
  }

  const std::size_t n = d.inputs().size();
  if (!ground) return finish_run(d, input_state(d, parse_bits(f.input, n)), f, out);
  // Ground inputs take a bit pair per wire: x1 y1 x2 y2 ...
  const auto bits = parse_bits(f.input, 2 * n);
  Monomial<GroundToken> m;
  for (std::size_t i = 0; i < n; ++i)
    m.push_back(GroundToken{d.inputs()[i], Dir::Down,
                            static_cast<std::uint8_t>(bits[2 * i]),
                            static_cast<std::uint8_t>(bits[2 * i + 1])});
  return finish_run(d, GroundTokenState::single(std::move(m)), f, out);
}

// --- extract --------------------------------------------------------------

int cmd_extract(const std::string& file, const std::string& seed_edge,
                bool ground_flag, const std::string& scheduler,
                const Output& out) {
  Diagram d = load_diagram(file);
  RunConfig cfg;
  cfg.scheduler = scheduler;
  cfg.options.fuse = env_fuse();
  const bool ground = ground_flag || d.has_ground();

  std::optional<EdgeId> seed;
  if (!seed_edge.empty()) {
    seed = d.find_edge(seed_edge);
    if (!seed) throw ParseError("unknown edge '" + seed_edge + "'", 0);
    if (!is_connected(d))
      throw InvalidDiagram("--seed-edge needs a connected diagram");
  }

  Matrix m;
  if (ground) {
    if (!is_connected(d)) d = connect_components(d);
    m = g_extract_superoperator(d, seed.value_or(EdgeId{0}), cfg);
  } else if (seed) {
    m = extract_matrix(d, *seed, cfg);
  } else {
    m = extract_matrix_general(d, cfg);
  }
  out.emit(matrix_to_json(m), format_matrix(m));
  return kOk;
}

// --- trace ----------------------------------------------------------------

template <class Tok>
json trace_rows(const Diagram& d, const Trace<Tok>& t, std::string& table) {
  json rows = json::array();
  char buf[160];
  std::snprintf(buf, sizeof buf, "%5s  %-10s %-8s %4s %7s  %s\n", "step",
                "rule", "edge", "gen", "terms", "digest");
  table += buf;
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const auto& r = t.steps[i];
    const std::string edge = d.label(r.consumed.edge);
    const std::string digest = state_digest(d, t.states[i]);
    rows.push_back({{"step", i + 1},
                    {"rule", r.rule},
                    {"edge", edge},
                    {"generator", r.generator.v},
                    {"terms", t.states[i].size()},
                    {"state_digest", digest}});
    std::snprintf(buf, sizeof buf, "%5zu  %-10s %-8s %4u %7zu  %s\n", i + 1,
                  r.rule.c_str(), edge.c_str(), r.generator.v,
                  t.states[i].size(), digest.c_str());
    table += buf;
  }
  return rows;
}

int cmd_trace(const std::string& file, const std::string& trace_file,
              const Output& out) {
  const Diagram d = load_diagram(file);
  const std::string text = read_file(trace_file);
  const auto bad = first_bad_digest(text);
  const auto first_line = text.substr(0, text.find('\n'));
  const bool ground = parse_json(first_line).value("kind", "pure") == "ground";

  std::string table;
  json rows = ground ? trace_rows(d, trace_from_jsonl<GroundToken>(d, text), table)
                     : trace_rows(d, trace_from_jsonl<Token>(d, text), table);
  json j = {{"ok", bad < 0}, {"steps", rows.size()}, {"rows", rows}};
  if (bad >= 0) {
    j["bad_line"] = bad;
    table += "digest mismatch on line " + std::to_string(bad + 1) + "\n";
  }
  out.emit(j, table);
  return bad < 0 ? kOk : kFailed;
}

// --- cpm ------------------------------------------------------------------

int cmd_cpm(const std::string& file, const Output& out) {
  const Diagram doubled = cpm_construct(load_diagram(file));
  const json j = diagram_to_json(doubled);
  out.emit(j, j.dump(2) + "\n");
  return kOk;
}

// --- check ----------------------------------------------------------------

struct CheckFlags {
  std::string file;
  std::string suite = "oracle";
  std::size_t trials = 100;
  std::string random;
  unsigned jobs = 1;
  std::uint64_t seed = 1;
};

/// Checks of one diagram from a file: semantics against the dense oracle,
/// and for ground diagrams the step-by-step simulation.
int check_file(const CheckFlags& f, const Output& out) {
  Diagram d = load_diagram(f.file);
  RunConfig cfg;
  cfg.options.fuse = env_fuse();
  json j = {{"file", f.file}};
  double dev = 0.0;
  bool ok = true;
  if (d.has_ground()) {
    if (!is_connected(d)) d = connect_components(d);
    dev = max_abs_diff(interp_cpm(d), g_extract_superoperator(d, EdgeId{0}, cfg));
    const EdgeId e{0};
    const auto seed = GroundTokenState::single(
        {GroundToken{e, Dir::Down, 0, 1}, GroundToken{e, Dir::Up, 0, 1}});
    RandomScheduler sched(f.seed);
    const auto rep = check_simulation(d, seed, sched, cfg.options);
    j["simulation"] = {{"ok", rep.ok},
                       {"steps", rep.steps.size()},
                       {"trace_out_steps", rep.trace_out_steps},
                       {"max_deviation", rep.max_deviation}};
    ok = rep.ok;
  } else {
    dev = max_abs_diff(interp(d), extract_matrix_general(d, cfg));
  }
  ok = ok && dev <= 1e-9;
  j["deviation"] = dev;
  j["ok"] = ok;
  out.emit(j, std::string(ok ? "ok" : "FAILED") + ": deviation " +
                  std::to_string(dev) + "\n");
  return ok ? kOk : kFailed;
}

int cmd_check(const CheckFlags& f, const Output& out) {
  if (!f.file.empty()) return check_file(f, out);
  SuiteConfig cfg;
  cfg.trials = f.trials;
  cfg.jobs = f.jobs;
  cfg.fuse = env_fuse();
  cfg.gen.seed = f.seed;
  cfg.gen = parse_gen_config(f.random, cfg.gen);
  const Report r = run_suite(f.suite, cfg);
  out.emit(r.to_json(), r.to_text());
  return r.ok() ? kOk : kFailed;
}

// --- bench ----------------------------------------------------------------

Diagram bench_family(const std::string& family, std::size_t n) {
  if (family == "spider")
    return parse_dsl("Z(" + std::to_string(n) + "," + std::to_string(n) + ")");
  if (family == "cnot-chain") {
    std::string text;
    for (std::size_t i = 0; i < std::max<std::size_t>(n, 1); ++i) {
      if (i) text += " ; ";
      text += "(Z(1,2) * id) ; (id * X(2,1))";
    }
    return parse_dsl(text);
  }
  throw ParseError("unknown family '" + family + "'", 0);
}

int cmd_bench(const std::string& family, std::size_t size,
              const std::string& strategy, const std::string& scheduler,
              const Output& out) {
  if (strategy != "token" && strategy != "dense" && strategy != "both")
    throw ParseError("strategy must be token, dense or both", 0);
  const Diagram d = bench_family(family, size);
  json j = {{"family", family},
            {"size", size},
            {"generators", d.num_generators()},
            {"edges", d.num_edges()}};
  std::string text = family + " size " + std::to_string(size) + "\n";

  if (strategy != "dense") {
    RunConfig cfg;
    cfg.scheduler = scheduler;
    cfg.options.fuse = env_fuse();
    const auto t0 = std::chrono::steady_clock::now();
    const TokenState s = extract_state(d, EdgeId{0}, cfg);
    const double secs = seconds_since(t0);
    j["token"] = {{"terms", s.size()},
                  {"tokens_per_term", s.max_tokens()},
                  {"seconds", secs}};
    text += "  token: " + std::to_string(s.size()) + " terms of " +
            std::to_string(s.max_tokens()) + " tokens, " +
            std::to_string(secs) + " s\n";
  }
  if (strategy != "token") {
    const auto t0 = std::chrono::steady_clock::now();
    const Matrix m = interp(d);
    const double secs = seconds_since(t0);
    j["dense"] = {{"rows", m.rows()},
                  {"cols", m.cols()},
                  {"entries", m.rows() * m.cols()},
                  {"nonzeros", m.nonzeros()},
                  {"seconds", secs}};
    text += "  dense: " + std::to_string(m.rows()) + " x " +
            std::to_string(m.cols()) + " (" + std::to_string(m.nonzeros()) +
            " nonzero), " + std::to_string(secs) + " s\n";
  }
  out.emit(j, text);
  return kOk;
}

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("-o,--out", out.path, "Write the JSON result to this file");
  cmd->add_flag("--text", out.text, "Print a human-readable form");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"zxtk: ZX diagrams evaluated by a token machine"};
  app.require_subcommand(1);

  Output out;
  std::string file;

  auto* interp_cmd = app.add_subcommand("interp", "Dense matrix of a diagram");
  bool cpm = false;
  interp_cmd->add_option("file", file, "Diagram (.zxd or .zxj)")->required();
  interp_cmd->add_flag("--cpm", cpm, "Superoperator of the doubled diagram");
  add_output(interp_cmd, out);

  auto* run_cmd = app.add_subcommand("run", "Normalize an input token state");
  RunFlags rf;
  run_cmd->add_option("file", file, "Diagram")->required();
  run_cmd->add_option("--input", rf.input,
                      "Input bits, one per input (two per input with grounds)");
  run_cmd->add_option("--input-state", rf.input_state, "Token state file");
  run_cmd->add_option("--scheduler", rf.scheduler,
                      "least, sparse, slice, random, random:N, script:e1,e2");
  run_cmd->add_option("--seed", rf.seed, "Seed for the random scheduler");
  run_cmd->add_option("--trace", rf.trace, "Write the run as JSON lines");
  run_cmd->add_flag("--force", rf.force,
                    "Skip the well-formed and cycle-balanced checks");
  add_output(run_cmd, out);

  auto* extract_cmd =
      app.add_subcommand("extract", "Matrix from token runs seeded on a wire");
  std::string seed_edge, ex_sched = "least";
  bool ground_flag = false;
  extract_cmd->add_option("file", file, "Diagram")->required();
  extract_cmd->add_option("--seed-edge", seed_edge, "Edge label to seed on");
  extract_cmd->add_flag("--ground", ground_flag,
                        "Use the two-bit machine and return the superoperator");
  extract_cmd->add_option("--scheduler", ex_sched, "Scheduler");
  add_output(extract_cmd, out);

  auto* trace_cmd = app.add_subcommand("trace", "Verify and tabulate a trace");
  std::string trace_file;
  trace_cmd->add_option("file", file, "Diagram the trace was recorded on")
      ->required();
  trace_cmd->add_option("trace", trace_file, "Trace (.trace.jsonl)")->required();
  add_output(trace_cmd, out);

  auto* cpm_cmd = app.add_subcommand("cpm", "Doubled diagram of a ground diagram");
  cpm_cmd->add_option("file", file, "Diagram")->required();
  add_output(cpm_cmd, out);

  auto* check_cmd = app.add_subcommand("check", "Property suites");
  CheckFlags cf;
  check_cmd->add_option("file", cf.file, "Check one diagram instead");
  check_cmd->add_option("--suite", cf.suite,
                        "oracle, ground-oracle, confluence, invariants, "
                        "simulation");
  check_cmd->add_option("--trials", cf.trials, "Number of random trials");
  check_cmd->add_option("--random", cf.random,
                        "Generator settings, e.g. gens=8,inputs=3,ground=1");
  check_cmd->add_option("--jobs", cf.jobs, "Worker threads");
  check_cmd->add_option("--seed", cf.seed, "Base seed");
  add_output(check_cmd, out);

  auto* bench_cmd = app.add_subcommand("bench", "Token vs dense sizes");
  std::string family = "spider", strategy = "both", bench_sched = "least";
  std::size_t size = 4;
  bench_cmd->add_option("--family", family, "spider or cnot-chain");
  bench_cmd->add_option("--size", size, "Family size");
  bench_cmd->add_option("--strategy", strategy, "token, dense or both");
  bench_cmd->add_option("--scheduler", bench_sched, "Scheduler for token runs");
  add_output(bench_cmd, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  try {
    if (*interp_cmd) return cmd_interp(file, cpm, out);
    if (*run_cmd) return cmd_run(file, rf, out);
    if (*extract_cmd)
      return cmd_extract(file, seed_edge, ground_flag, ex_sched, out);
    if (*trace_cmd) return cmd_trace(file, trace_file, out);
    if (*cpm_cmd) return cmd_cpm(file, out);
    if (*check_cmd) return cmd_check(cf, out);
    if (*bench_cmd) return cmd_bench(family, size, strategy, bench_sched, out);
  } catch (const LimitExceeded& e) {
    std::cerr << "zxtk: " << e.what() << "\n";
    return kFailed;
  } catch (const std::exception& e) {
    std::cerr << "zxtk: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
