// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cwc/labeled_digraph.hpp"
#include "cwc/parity_instance.hpp"
#include "cwc/pipeline.hpp"
#include "cwc/psi.hpp"

namespace cwc {

// Line-oriented text formats, `#` starts a comment:
//   .lgr    lgr 1 / ell L / nodes N / arc U V i1 .. iL     (1-based images)
//   .adoct  adoct 1 / nodes N / budget K / node V W / arc U V LBL
//   .psi    psi 1 / gnodes N / gedge A B / hnode H C / hedge H1 H2
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

namespace detail {

struct Line {
  int number = 0;
  std::vector<std::string> tokens;
};

inline std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ss(raw);
    Line line;
    line.number = number;
    std::string tok;
    while (ss >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

inline long long parse_int(const Line& line, size_t idx, const std::string& what) {
  if (idx >= line.tokens.size()) throw ParseError(line.number, "missing " + what);
  try {
    size_t pos = 0;
    long long v = std::stoll(line.tokens[idx], &pos);
    if (pos != line.tokens[idx].size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line.number, "malformed " + what + " '" + line.tokens[idx] + "'");
  }
}

inline VertexId parse_vertex(const Line& line, size_t idx, int n, const std::string& what) {
  long long v = parse_int(line, idx, what);
  if (v < 0 || v >= n) throw ParseError(line.number, what + " " + std::to_string(v) + " out of range");
  return static_cast<VertexId>(v);
}

}  // namespace detail

inline LabeledDigraph parse_lgr(std::istream& in) {
  auto lines = detail::tokenize(in);
  size_t at = 0;
  auto need = [&](const std::string& keyword) -> const detail::Line& {
    if (at >= lines.size()) throw ParseError(lines.empty() ? 0 : lines.back().number, "unexpected end of file, wanted '" + keyword + "'");
    const detail::Line& line = lines[at++];
    if (line.tokens[0] != keyword) throw ParseError(line.number, "expected '" + keyword + "', got '" + line.tokens[0] + "'");
    return line;
  };
  const detail::Line& header = need("lgr");
  if (detail::parse_int(header, 1, "format version") != 1) throw ParseError(header.number, "unsupported lgr version");
  const detail::Line& ell_line = need("ell");
  long long ell = detail::parse_int(ell_line, 1, "ell");
  if (ell < 1 || ell > 64) throw ParseError(ell_line.number, "ell out of range");
  const detail::Line& nodes_line = need("nodes");
  long long n = detail::parse_int(nodes_line, 1, "node count");
  if (n < 0 || n > 1000000) throw ParseError(nodes_line.number, "node count out of range");

  LabeledDigraph d(static_cast<int>(n), static_cast<int>(ell));
  for (; at < lines.size(); ++at) {
    const detail::Line& line = lines[at];
    if (line.tokens[0] != "arc") throw ParseError(line.number, "expected 'arc', got '" + line.tokens[0] + "'");
    VertexId u = detail::parse_vertex(line, 1, static_cast<int>(n), "arc tail");
    VertexId v = detail::parse_vertex(line, 2, static_cast<int>(n), "arc head");
    if (line.tokens.size() != 3 + static_cast<size_t>(ell)) throw ParseError(line.number, "arc needs exactly ell images");
    std::vector<int> images;
    for (int i = 0; i < ell; ++i) {
      long long img = detail::parse_int(line, 3 + static_cast<size_t>(i), "permutation image");
      if (img < 1 || img > ell) throw ParseError(line.number, "permutation image out of range");
      images.push_back(static_cast<int>(img) - 1);
    }
    Permutation pi;
    try {
      pi = Permutation::from_images(images);
    } catch (const std::invalid_argument&) {
      throw ParseError(line.number, "permutation row is not a bijection");
    }
    if (d.has_arc(u, v, pi)) throw ParseError(line.number, "duplicate labeled arc");
    d.add_arc(u, v, pi);
  }
  return d;
}

inline void emit_lgr(std::ostream& out, const LabeledDigraph& d) {
  out << "lgr 1\n";
  out << "ell " << d.ell() << "\n";
  out << "nodes " << d.vertex_count() << "\n";
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < d.arc_count(); ++i) {
    std::vector<int> row{d.arc(i).tail, d.arc(i).head};
    for (int img : d.label(i).images()) row.push_back(img + 1);
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& row : rows) {
    out << "arc";
    for (int x : row) out << ' ' << x;
    out << "\n";
  }
}

inline ParityInstance parse_adoct(std::istream& in) {
  auto lines = detail::tokenize(in);
  size_t at = 0;
  auto need = [&](const std::string& keyword) -> const detail::Line& {
    if (at >= lines.size()) throw ParseError(lines.empty() ? 0 : lines.back().number, "unexpected end of file, wanted '" + keyword + "'");
    const detail::Line& line = lines[at++];
    if (line.tokens[0] != keyword) throw ParseError(line.number, "expected '" + keyword + "', got '" + line.tokens[0] + "'");
    return line;
  };
  const detail::Line& header = need("adoct");
  if (detail::parse_int(header, 1, "format version") != 1) throw ParseError(header.number, "unsupported adoct version");
  const detail::Line& nodes_line = need("nodes");
  long long n = detail::parse_int(nodes_line, 1, "node count");
  if (n < 0 || n > 1000000) throw ParseError(nodes_line.number, "node count out of range");
  const detail::Line& budget_line = need("budget");
  long long k = detail::parse_int(budget_line, 1, "budget");
  if (k < 0) throw ParseError(budget_line.number, "budget must be non-negative");

  ParityInstance inst;
  inst.graph = Digraph(static_cast<int>(n));
  inst.budget = k;
  inst.weight.assign(static_cast<size_t>(n), 1);
  std::vector<char> weight_seen(static_cast<size_t>(n), 0);
  for (; at < lines.size(); ++at) {
    const detail::Line& line = lines[at];
    if (line.tokens[0] == "node") {
      VertexId v = detail::parse_vertex(line, 1, static_cast<int>(n), "node id");
      long long w = detail::parse_int(line, 2, "node weight");
      if (w < 1 || w > 2 * k + 1) throw ParseError(line.number, "node weight outside [1, 2k+1]");
      if (weight_seen[static_cast<size_t>(v)]) throw ParseError(line.number, "duplicate node line");
      weight_seen[static_cast<size_t>(v)] = 1;
      inst.weight[static_cast<size_t>(v)] = w;
    } else if (line.tokens[0] == "arc") {
      VertexId u = detail::parse_vertex(line, 1, static_cast<int>(n), "arc tail");
      VertexId v = detail::parse_vertex(line, 2, static_cast<int>(n), "arc head");
      if (u == v) throw ParseError(line.number, "self-loops are not allowed");
      long long l = detail::parse_int(line, 3, "arc label");
      if (l != 0 && l != 1) throw ParseError(line.number, "arc label must be 0 or 1");
      inst.graph.add_arc(u, v);
      inst.arc_label.push_back(static_cast<int>(l));
    } else {
      throw ParseError(line.number, "expected 'node' or 'arc', got '" + line.tokens[0] + "'");
    }
  }
  return inst;
}

inline void emit_adoct(std::ostream& out, const ParityInstance& inst) {
  out << "adoct 1\n";
  out << "nodes " << inst.graph.vertex_count() << "\n";
  out << "budget " << inst.budget << "\n";
  for (int v = 0; v < inst.graph.vertex_count(); ++v) {
    out << "node " << v << ' ' << inst.weight[static_cast<size_t>(v)] << "\n";
  }
  std::vector<std::vector<long long>> rows;
  for (int i = 0; i < inst.graph.arc_count(); ++i) {
    rows.push_back({inst.graph.arc(i).tail, inst.graph.arc(i).head, inst.arc_label[static_cast<size_t>(i)]});
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& row : rows) out << "arc " << row[0] << ' ' << row[1] << ' ' << row[2] << "\n";
}

inline PsiInstance parse_psi(std::istream& in) {
  auto lines = detail::tokenize(in);
  size_t at = 0;
  if (lines.empty() || lines[0].tokens[0] != "psi") throw ParseError(lines.empty() ? 0 : lines[0].number, "expected 'psi' header");
  if (detail::parse_int(lines[0], 1, "format version") != 1) throw ParseError(lines[0].number, "unsupported psi version");
  at = 1;
  if (at >= lines.size() || lines[at].tokens[0] != "gnodes") throw ParseError(lines.empty() ? 0 : lines.back().number, "expected 'gnodes'");
  long long gn = detail::parse_int(lines[at], 1, "pattern node count");
  if (gn < 0 || gn > 100000) throw ParseError(lines[at].number, "pattern node count out of range");
  ++at;

  PsiInstance inst;
  inst.g.vertex_count = static_cast<int>(gn);
  std::vector<std::pair<int, int>> hnodes;  // (id, color)
  std::vector<std::pair<detail::Line, std::pair<long long, long long>>> hedges;
  for (; at < lines.size(); ++at) {
    const detail::Line& line = lines[at];
    if (line.tokens[0] == "gedge") {
      VertexId a = detail::parse_vertex(line, 1, static_cast<int>(gn), "gedge endpoint");
      VertexId b = detail::parse_vertex(line, 2, static_cast<int>(gn), "gedge endpoint");
      try {
        inst.g.add_edge(a, b);
      } catch (const std::invalid_argument& e) {
        throw ParseError(line.number, e.what());
      }
    } else if (line.tokens[0] == "hnode") {
      long long id = detail::parse_int(line, 1, "hnode id");
      long long color = detail::parse_int(line, 2, "hnode color");
      if (color < 0 || color >= gn) throw ParseError(line.number, "hnode color out of range");
      if (id < 0) throw ParseError(line.number, "hnode id out of range");
      hnodes.push_back({static_cast<int>(id), static_cast<int>(color)});
    } else if (line.tokens[0] == "hedge") {
      long long a = detail::parse_int(line, 1, "hedge endpoint");
      long long b = detail::parse_int(line, 2, "hedge endpoint");
      hedges.push_back({line, {a, b}});
    } else {
      throw ParseError(line.number, "expected 'gedge', 'hnode' or 'hedge', got '" + line.tokens[0] + "'");
    }
  }
  inst.h.vertex_count = static_cast<int>(hnodes.size());
  inst.col.assign(hnodes.size(), -1);
  for (auto [id, color] : hnodes) {
    if (id >= inst.h.vertex_count) throw ParseError(0, "hnode ids must be dense 0..M-1; id " + std::to_string(id) + " too large");
    if (inst.col[static_cast<size_t>(id)] != -1) throw ParseError(0, "duplicate hnode id " + std::to_string(id));
    inst.col[static_cast<size_t>(id)] = color;
  }
  for (const auto& [line, e] : hedges) {
    if (e.first < 0 || e.first >= inst.h.vertex_count || e.second < 0 || e.second >= inst.h.vertex_count) {
      throw ParseError(line.number, "hedge endpoint out of range");
    }
    try {
      inst.h.add_edge(static_cast<int>(e.first), static_cast<int>(e.second));
    } catch (const std::invalid_argument& e2) {
      throw ParseError(line.number, e2.what());
    }
  }
  try {
    validate_psi(inst);
  } catch (const std::exception& e) {
    throw ParseError(0, e.what());
  }
  return inst;
}

inline void emit_psi(std::ostream& out, const PsiInstance& inst) {
  out << "psi 1\n";
  out << "gnodes " << inst.g.vertex_count << "\n";
  std::vector<std::pair<int, int>> ge = inst.g.edges;
  std::sort(ge.begin(), ge.end());
  for (auto [a, b] : ge) out << "gedge " << a << ' ' << b << "\n";
  for (int hv = 0; hv < inst.h.vertex_count; ++hv) out << "hnode " << hv << ' ' << inst.col[static_cast<size_t>(hv)] << "\n";
  std::vector<std::pair<int, int>> he = inst.h.edges;
  std::sort(he.begin(), he.end());
  for (auto [a, b] : he) out << "hedge " << a << ' ' << b << "\n";
}

// Machine-readable run report. Key order is fixed so identical inputs and
// seed produce identical bytes; wall-clock time is only attached on request.
struct Report {
  std::string command;
  Verdict verdict = Verdict::NoWithinBudget;
  VertexSet cover;
  std::optional<long long> cover_weight;
  long long budget = 0;
  std::string mode;
  uint64_t seed = 0;
  int repetitions = 0;
  SolveStats stats;
  bool include_timings = false;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["format_version"] = 1;
    j["command"] = command;
    j["verdict"] = verdict == Verdict::Cover ? "cover" : "no_within_budget";
    j["cover"] = cover.ids();
    j["cover_size"] = cover.size();
    if (cover_weight) j["cover_weight"] = *cover_weight;
    j["budget"] = budget;
    j["mode"] = mode;
    j["seed"] = seed;
    j["repetitions"] = repetitions;
    j["stats"] = {{"guesses_tried", stats.guesses_tried},
                  {"skew_calls", stats.skew_calls},
                  {"candidates_consumed", stats.candidates_consumed}};
    if (include_timings) j["stats"]["wall_ms"] = stats.wall_ms;
    return j;
  }

  void write_text(std::ostream& out) const {
    out << "verdict: " << (verdict == Verdict::Cover ? "cover" : "no_within_budget") << "\n";
    out << "cover:";
    for (VertexId v : cover) out << ' ' << v;
    out << "\n";
    out << "cover_size: " << cover.size() << "\n";
    if (cover_weight) out << "cover_weight: " << *cover_weight << "\n";
    out << "budget: " << budget << "\n";
    out << "mode: " << mode << "\n";
  }
};

}  // namespace cwc
