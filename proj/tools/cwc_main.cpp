// SPDX-License-Identifier: Apache-2.0
//
// Command-line surface of the toolkit. Exit codes: 0 = cover found /
// verification passed, 1 = no-within-budget / verification failed,
// 2 = usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cwc/gadgets.hpp"
#include "cwc/io.hpp"
#include "cwc/oracles.hpp"
#include "cwc/pipeline.hpp"
#include "cwc/rng.hpp"

namespace {

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sniff_format(const std::string& text) {
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (ls >> tok) return tok;
  }
  throw std::runtime_error("empty input");
}

cwc::VertexSet parse_id_list(const std::string& text) {
  cwc::VertexSet out;
  std::string cur;
  std::istringstream ss(text);
  while (std::getline(ss, cur, ',')) {
    if (cur.empty()) continue;
    out.insert(std::stoi(cur));
  }
  return out;
}

cwc::CoverMode parse_mode(const std::string& mode) {
  if (mode == "exhaustive") return cwc::CoverMode::Exhaustive;
  if (mode == "randomized") return cwc::CoverMode::Randomized;
  if (mode == "oracle") return cwc::CoverMode::Oracle;
  throw CLI::ValidationError("--mode must be exhaustive, randomized or oracle");
}

struct SolveFlags {
  std::string input = "-";
  std::string mode;
  uint64_t seed = 0;
  int repetitions = 0;
  bool json = false;
  bool timings = false;
  std::string oracle_solution;

  cwc::FamilyConfig config() const {
    cwc::FamilyConfig cfg;
    cfg.mode = parse_mode(mode);
    cfg.seed = seed;
    cfg.repetitions = repetitions;
    if (cfg.mode == cwc::CoverMode::Oracle) {
      cfg.oracle_solution = parse_id_list(oracle_solution);
    }
    return cfg;
  }
};

void add_solve_flags(CLI::App* cmd, SolveFlags& flags) {
  cmd->add_option("--input", flags.input, "input file, or - for stdin");
  cmd->add_option("--mode", flags.mode, "shadow cover mode: exhaustive|randomized|oracle")->required();
  cmd->add_option("--seed", flags.seed, "RNG seed (randomized mode)");
  cmd->add_option("--repetitions", flags.repetitions, "randomized candidates per restricted instance (0 = auto)");
  cmd->add_option("--oracle-solution", flags.oracle_solution, "known solution ids for oracle mode, e.g. 0,3,7");
  cmd->add_flag("--json", flags.json, "emit a JSON report");
  cmd->add_flag("--timings", flags.timings, "include wall-clock time in the report");
}

int emit_report(cwc::Report& report, bool json) {
  if (json) {
    std::cout << report.to_json().dump(2) << "\n";
  } else {
    report.write_text(std::cout);
  }
  return report.verdict == cwc::Verdict::Cover ? 0 : 1;
}

void check_plain_doct(const cwc::ParityInstance& inst) {
  for (int l : inst.arc_label) {
    if (l != 1) throw std::runtime_error("solve-doct expects a plain digraph: every arc label must be 1");
  }
  for (long long w : inst.weight) {
    if (w != 1) throw std::runtime_error("solve-doct expects unit weights");
  }
}

int run_solve_cwc(const SolveFlags& flags, int k) {
  std::istringstream in(read_all(flags.input));
  cwc::LabeledDigraph d = cwc::parse_lgr(in);
  cwc::FamilyConfig cfg = flags.config();
  cwc::SolverOutcome outcome = cwc::solve_cwc_approx(d, k, cfg);
  cwc::Report report;
  report.command = "solve-cwc";
  report.verdict = outcome.verdict;
  report.cover = outcome.cover;
  report.budget = k;
  report.mode = flags.mode;
  report.seed = flags.seed;
  report.repetitions = cfg.repetitions > 0 ? cfg.repetitions : cwc::default_repetitions(k);
  report.stats = outcome.stats;
  report.include_timings = flags.timings;
  return emit_report(report, flags.json);
}

int run_solve_doct(const SolveFlags& flags, std::optional<int> k_flag) {
  std::istringstream in(read_all(flags.input));
  cwc::ParityInstance inst = cwc::parse_adoct(in);
  check_plain_doct(inst);
  int k = k_flag ? *k_flag : static_cast<int>(inst.budget);
  cwc::FamilyConfig cfg = flags.config();
  cwc::SolverOutcome outcome = cwc::solve_doct_approx(inst.graph, k, cfg);
  cwc::Report report;
  report.command = "solve-doct";
  report.verdict = outcome.verdict;
  report.cover = outcome.cover;
  report.budget = k;
  report.mode = flags.mode;
  report.seed = flags.seed;
  report.repetitions = cfg.repetitions > 0 ? cfg.repetitions : cwc::default_repetitions(k);
  report.stats = outcome.stats;
  report.include_timings = flags.timings;
  return emit_report(report, flags.json);
}

int run_solve_restricted(const SolveFlags& flags, int k, const std::string& anchor_text) {
  std::istringstream in(read_all(flags.input));
  cwc::LabeledDigraph d = cwc::parse_lgr(in);
  cwc::VertexSet anchor = parse_id_list(anchor_text);
  cwc::VertexSet support;
  for (int v = 0; v < d.vertex_count(); ++v) support.insert(v);
  cwc::FamilyConfig cfg = flags.config();
  if (cfg.repetitions <= 0) cfg.repetitions = cwc::default_repetitions(k);
  cwc::SolveStats stats;
  auto sol = cwc::detail::solve_restricted_cached(d, support, anchor, k, k, cfg, nullptr, &stats);
  cwc::Report report;
  report.command = "solve-restricted";
  report.verdict = sol ? cwc::Verdict::Cover : cwc::Verdict::NoWithinBudget;
  if (sol) report.cover = *sol;
  report.budget = k;
  report.mode = flags.mode;
  report.seed = flags.seed;
  report.repetitions = cfg.repetitions;
  report.stats = stats;
  report.include_timings = flags.timings;
  return emit_report(report, flags.json);
}

int run_brute(const std::string& input, std::optional<long long> max_weight, std::optional<int> max_size,
              bool json, bool list_witnesses) {
  std::string text = read_all(input);
  std::string kind = sniff_format(text);
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["command"] = "brute";
  cwc::WeightedCoverResult result;
  if (kind == "adoct") {
    std::istringstream in(text);
    cwc::ParityInstance inst = cwc::parse_adoct(in);
    long long cap = max_weight ? *max_weight : inst.budget;
    result = cwc::brute_adoct(inst, cap);
    j["max_weight"] = cap;
  } else if (kind == "lgr") {
    std::istringstream in(text);
    cwc::LabeledDigraph d = cwc::parse_lgr(in);
    int cap = max_size ? *max_size : d.vertex_count();
    result = cwc::brute_cwc(d, cap);
    j["max_size"] = cap;
  } else {
    throw std::runtime_error("brute expects an .adoct or .lgr input");
  }
  j["found"] = result.found;
  if (result.found) j["min_weight"] = result.min_weight;
  j["witness_count"] = result.witnesses.size();
  j["truncated"] = result.truncated;
  if (list_witnesses) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& w : result.witnesses) arr.push_back(w.ids());
    j["witnesses"] = arr;
  }
  if (json) {
    std::cout << j.dump(2) << "\n";
  } else {
    if (result.found) {
      std::cout << "min_weight: " << result.min_weight << "\n";
      std::cout << "witnesses: " << result.witnesses.size() << (result.truncated ? " (truncated)" : "") << "\n";
      if (list_witnesses) {
        for (const auto& w : result.witnesses) {
          std::cout << "witness:";
          for (cwc::VertexId v : w) std::cout << ' ' << v;
          std::cout << "\n";
        }
      }
    } else {
      std::cout << "no transversal within the cap\n";
    }
  }
  return result.found ? 0 : 1;
}

std::set<std::pair<int, int>> parse_pairs(const std::string& text) {
  std::set<std::pair<int, int>> out;
  std::istringstream ss(text);
  std::string chunk;
  while (std::getline(ss, chunk, ';')) {
    if (chunk.empty()) continue;
    auto comma = chunk.find(',');
    if (comma == std::string::npos) throw std::runtime_error("pairs must look like i,j;i,j");
    out.insert({std::stoi(chunk.substr(0, comma)), std::stoi(chunk.substr(comma + 1))});
  }
  return out;
}

int run_gen_clock(const std::string& variant, int n, long long k) {
  cwc::GadgetHandle h;
  if (variant == "forward") h = cwc::forward_clock(n, k);
  else if (variant == "reverse") h = cwc::reverse_clock(n, k);
  else if (variant == "double") h = cwc::double_clock(n, k);
  else throw std::runtime_error("--variant must be forward, reverse or double");
  cwc::emit_adoct(std::cout, h.instance);
  return 0;
}

int run_gen_sync(int n, long long k, const std::string& pairs_text) {
  cwc::GadgetHandle h = cwc::synchronizer(n, k, parse_pairs(pairs_text));
  cwc::emit_adoct(std::cout, h.instance);
  return 0;
}

// Random PSI instance with max-degree-3 pattern; by default a colorful
// mapping is planted so the instance is a yes-instance.
int run_gen_psi(int g_nodes, int g_edges, int class_size, uint64_t seed, int noise, bool plant) {
  cwc::Rng rng(seed);
  cwc::PsiInstance inst;
  inst.g.vertex_count = g_nodes;
  std::vector<int> deg(static_cast<size_t>(g_nodes), 0);
  int guard = 0;
  while (static_cast<int>(inst.g.edges.size()) < g_edges && guard++ < 10000) {
    int a = rng.range(0, g_nodes - 1);
    int b = rng.range(0, g_nodes - 1);
    if (a == b || deg[static_cast<size_t>(a)] >= 3 || deg[static_cast<size_t>(b)] >= 3) continue;
    if (inst.g.has_edge(a, b)) continue;
    inst.g.add_edge(a, b);
    ++deg[static_cast<size_t>(a)];
    ++deg[static_cast<size_t>(b)];
  }
  inst.h.vertex_count = g_nodes * class_size;
  for (int gv = 0; gv < g_nodes; ++gv) {
    for (int i = 0; i < class_size; ++i) inst.col.push_back(gv);
  }
  auto member = [&](int gv, int i) { return gv * class_size + i; };
  std::vector<int> planted(static_cast<size_t>(g_nodes));
  for (int gv = 0; gv < g_nodes; ++gv) planted[static_cast<size_t>(gv)] = rng.range(0, class_size - 1);
  if (plant) {
    for (auto [a, b] : inst.g.edges) {
      inst.h.add_edge(member(a, planted[static_cast<size_t>(a)]), member(b, planted[static_cast<size_t>(b)]));
    }
  }
  guard = 0;
  int added = 0;
  while (added < noise && guard++ < 10000) {
    auto [a, b] = inst.g.edges[rng.below(inst.g.edges.size())];
    int ia = rng.range(0, class_size - 1);
    int ib = rng.range(0, class_size - 1);
    if (inst.h.has_edge(member(a, ia), member(b, ib))) continue;
    inst.h.add_edge(member(a, ia), member(b, ib));
    ++added;
  }
  cwc::emit_psi(std::cout, inst);
  return 0;
}

int run_reduce_psi(const std::string& input) {
  std::istringstream in(read_all(input));
  cwc::PsiInstance inst = cwc::parse_psi(in);
  cwc::PsiReduction red = cwc::psi_to_adoct(inst);
  for (const std::string& w : red.warnings) std::cerr << "warning: " << w << "\n";
  cwc::emit_adoct(std::cout, red.instance);
  return 0;
}

int run_reduce_adoct(const std::string& input, double alpha) {
  std::istringstream in(read_all(input));
  cwc::ParityInstance inst = cwc::parse_adoct(in);
  cwc::DoctInstance out = cwc::adoct_to_doct(inst, alpha);
  cwc::ParityInstance plain;
  plain.graph = out.graph;
  plain.arc_label.assign(static_cast<size_t>(out.graph.arc_count()), 1);
  plain.weight.assign(static_cast<size_t>(out.graph.vertex_count()), 1);
  plain.budget = out.budget;
  cwc::emit_adoct(std::cout, plain);
  return 0;
}

int run_reduce_arcs(const std::string& input, bool to_arc, std::optional<int> k_flag) {
  std::istringstream in(read_all(input));
  cwc::ParityInstance inst = cwc::parse_adoct(in);
  check_plain_doct(inst);
  int k = k_flag ? *k_flag : static_cast<int>(inst.budget);
  cwc::Digraph out = to_arc ? cwc::doct_to_arcdoct(inst.graph) : cwc::arcdoct_to_doct(inst.graph, k);
  cwc::ParityInstance plain;
  plain.graph = out;
  plain.arc_label.assign(static_cast<size_t>(out.arc_count()), 1);
  plain.weight.assign(static_cast<size_t>(out.vertex_count()), 1);
  plain.budget = k;
  cwc::emit_adoct(std::cout, plain);
  return 0;
}

int run_verify_cover(const std::string& input, const std::string& cover_text, bool json) {
  std::string text = read_all(input);
  std::string kind = sniff_format(text);
  cwc::VertexSet cover = parse_id_list(cover_text);
  bool valid = false;
  std::optional<long long> weight;
  long long budget = 0;
  if (kind == "lgr") {
    std::istringstream in(text);
    cwc::LabeledDigraph d = cwc::parse_lgr(in);
    valid = cwc::is_colorful_walk_cover(d, cover);
  } else if (kind == "adoct") {
    std::istringstream in(text);
    cwc::ParityInstance inst = cwc::parse_adoct(in);
    valid = cwc::is_odd_cycle_transversal(inst, cover);
    weight = cwc::weight_of(inst, cover);
    budget = inst.budget;
  } else {
    throw std::runtime_error("verify-cover expects an .lgr or .adoct input");
  }
  if (json) {
    nlohmann::ordered_json j;
    j["format_version"] = 1;
    j["command"] = "verify-cover";
    j["valid"] = valid;
    j["cover"] = cover.ids();
    if (weight) {
      j["cover_weight"] = *weight;
      j["budget"] = budget;
      j["within_budget"] = *weight <= budget;
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << (valid ? "PASS" : "FAIL");
    if (weight) std::cout << " weight=" << *weight << " budget=" << budget;
    std::cout << "\n";
  }
  return valid ? 0 : 1;
}

int run_witness_direction1(const std::string& input, const std::string& mapping_text, bool json) {
  std::istringstream in(read_all(input));
  cwc::PsiInstance inst = cwc::parse_psi(in);
  cwc::PsiReduction red = cwc::psi_to_adoct(inst);
  for (const std::string& w : red.warnings) std::cerr << "warning: " << w << "\n";
  std::optional<std::vector<int>> phi;
  if (!mapping_text.empty()) {
    std::vector<int> m;
    for (cwc::VertexId v : parse_id_list(mapping_text)) m.push_back(v);
    // parse_id_list sorts; mapping order matters, so reparse positionally
    m.clear();
    std::istringstream ms(mapping_text);
    std::string tok;
    while (std::getline(ms, tok, ',')) {
      if (!tok.empty()) m.push_back(std::stoi(tok));
    }
    phi = m;
  } else {
    phi = cwc::brute_psi(red.normalized);
  }
  if (!phi) {
    std::cout << "no colorful mapping found\n";
    return 1;
  }
  cwc::VertexSet cover = cwc::colorful_mapping_to_cover(red, *phi);
  long long weight = cwc::weight_of(red.instance, cover);
  if (json) {
    nlohmann::ordered_json j;
    j["format_version"] = 1;
    j["command"] = "witness-direction1";
    j["budget"] = red.budget;
    j["cover_weight"] = weight;
    j["cover"] = cover.ids();
    j["valid"] = true;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "PASS weight=" << weight << " budget=" << red.budget << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"colorful walk cover / directed odd cycle transversal toolkit"};
  app.require_subcommand(1);
  int exit_code = 0;

  SolveFlags cwc_flags, doct_flags, restricted_flags;
  int cwc_k = 0;
  auto* solve_cwc = app.add_subcommand("solve-cwc", "2-approximate colorful walk cover on an .lgr instance");
  solve_cwc->add_option("--k", cwc_k, "budget")->required();
  add_solve_flags(solve_cwc, cwc_flags);
  solve_cwc->callback([&]() { exit_code = run_solve_cwc(cwc_flags, cwc_k); });

  std::optional<int> doct_k;
  auto* solve_doct = app.add_subcommand("solve-doct", "2-approximate directed odd cycle transversal on an .adoct instance");
  solve_doct->add_option("--k", doct_k, "budget (defaults to the file's budget line)");
  add_solve_flags(solve_doct, doct_flags);
  solve_doct->callback([&]() { exit_code = run_solve_doct(doct_flags, doct_k); });

  int restricted_k = 0;
  std::string restricted_anchor;
  auto* solve_restricted = app.add_subcommand("solve-restricted", "minimum cover disjoint from an anchor set");
  solve_restricted->add_option("--k", restricted_k, "budget")->required();
  solve_restricted->add_option("--anchor", restricted_anchor, "anchor vertex ids, e.g. 0,1,2")->required();
  add_solve_flags(solve_restricted, restricted_flags);
  solve_restricted->callback([&]() { exit_code = run_solve_restricted(restricted_flags, restricted_k, restricted_anchor); });

  std::string brute_input = "-";
  std::optional<long long> brute_max_weight;
  std::optional<int> brute_max_size;
  bool brute_json = false, brute_witnesses = false;
  auto* brute = app.add_subcommand("brute", "exact brute-force solve of an .adoct or .lgr instance");
  brute->add_option("--input", brute_input, "input file, or - for stdin");
  brute->add_option("--max-weight", brute_max_weight, "weight cap (.adoct; defaults to the budget)");
  brute->add_option("--max-size", brute_max_size, "size cap (.lgr; defaults to n)");
  brute->add_flag("--json", brute_json, "emit a JSON report");
  brute->add_flag("--witnesses", brute_witnesses, "list every optimal set");
  brute->callback([&]() { exit_code = run_brute(brute_input, brute_max_weight, brute_max_size, brute_json, brute_witnesses); });

  auto* gen = app.add_subcommand("gen", "instance generators");
  gen->require_subcommand(1);
  std::string clock_variant = "forward";
  int clock_n = 3;
  long long clock_k = 100;
  auto* gen_clock = gen->add_subcommand("clock", "clock gadget as .adoct");
  gen_clock->add_option("--variant", clock_variant, "forward|reverse|double")->required();
  gen_clock->add_option("--n", clock_n, "clock size")->required();
  gen_clock->add_option("--k", clock_k, "budget (>= 100)")->required();
  gen_clock->callback([&]() { exit_code = run_gen_clock(clock_variant, clock_n, clock_k); });

  int sync_n = 3;
  long long sync_k = 100;
  std::string sync_pairs;
  auto* gen_sync = gen->add_subcommand("sync", "synchronizer gadget as .adoct");
  gen_sync->add_option("--n", sync_n, "grid size")->required();
  gen_sync->add_option("--k", sync_k, "budget (>= 100)")->required();
  gen_sync->add_option("--pairs", sync_pairs, "index set I as i,j;i,j (1-based)");
  gen_sync->callback([&]() { exit_code = run_gen_sync(sync_n, sync_k, sync_pairs); });

  int psi_nodes = 3, psi_edges = 3, psi_class = 3, psi_noise = 0;
  uint64_t psi_seed = 0;
  bool psi_no_plant = false;
  auto* gen_psi = gen->add_subcommand("psi-random", "random PSI instance as .psi");
  gen_psi->add_option("--g-nodes", psi_nodes, "pattern vertices");
  gen_psi->add_option("--g-edges", psi_edges, "pattern edges (max degree 3)");
  gen_psi->add_option("--class-size", psi_class, "size of each color class");
  gen_psi->add_option("--seed", psi_seed, "RNG seed");
  gen_psi->add_option("--noise", psi_noise, "extra random host edges");
  gen_psi->add_flag("--no-plant", psi_no_plant, "do not plant a colorful mapping");
  gen_psi->callback([&]() { exit_code = run_gen_psi(psi_nodes, psi_edges, psi_class, psi_seed, psi_noise, !psi_no_plant); });

  auto* reduce = app.add_subcommand("reduce", "instance reductions");
  reduce->require_subcommand(1);
  std::string red_input = "-";
  double red_alpha = 1.0;
  std::optional<int> red_k;
  auto* red_psi = reduce->add_subcommand("psi-to-adoct", "PSI -> A-DOCT via clocks and synchronizers");
  red_psi->add_option("--input", red_input, "input file, or - for stdin");
  red_psi->callback([&]() { exit_code = run_reduce_psi(red_input); });
  auto* red_adoct = reduce->add_subcommand("adoct-to-doct", "annotation removal: A-DOCT -> DOCT");
  red_adoct->add_option("--input", red_input, "input file, or - for stdin");
  red_adoct->add_option("--alpha", red_alpha, "approximation factor the reduction must tolerate (>= 1)");
  red_adoct->callback([&]() { exit_code = run_reduce_adoct(red_input, red_alpha); });
  auto* red_to_arc = reduce->add_subcommand("doct-to-arc", "DOCT -> Arc-DOCT");
  red_to_arc->add_option("--input", red_input, "input file, or - for stdin");
  red_to_arc->callback([&]() { exit_code = run_reduce_arcs(red_input, true, std::nullopt); });
  auto* red_to_vertex = reduce->add_subcommand("arc-to-doct", "Arc-DOCT -> DOCT");
  red_to_vertex->add_option("--input", red_input, "input file, or - for stdin");
  red_to_vertex->add_option("--k", red_k, "budget (defaults to the file's budget line)");
  red_to_vertex->callback([&]() { exit_code = run_reduce_arcs(red_input, false, red_k); });

  std::string verify_input = "-", verify_cover_text;
  bool verify_json = false;
  auto* verify = app.add_subcommand("verify-cover", "check a vertex set against an instance");
  verify->add_option("--input", verify_input, "input file, or - for stdin");
  verify->add_option("--cover", verify_cover_text, "cover vertex ids, e.g. 1,2,3");
  verify->add_flag("--json", verify_json, "emit a JSON report");
  verify->callback([&]() { exit_code = run_verify_cover(verify_input, verify_cover_text, verify_json); });

  std::string wit_input = "-", wit_mapping;
  bool wit_json = false;
  auto* witness = app.add_subcommand("witness-direction1", "build and validate the yes-instance witness cover");
  witness->add_option("--input", wit_input, ".psi input file, or - for stdin");
  witness->add_option("--mapping", wit_mapping, "colorful mapping phi as h-ids per pattern vertex, e.g. 0,4,8");
  witness->add_flag("--json", wit_json, "emit a JSON report");
  witness->callback([&]() { exit_code = run_witness_direction1(wit_input, wit_mapping, wit_json); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const cwc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
