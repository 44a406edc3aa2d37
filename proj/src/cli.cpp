#include "equiwing/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>

#include "equiwing/bench.hpp"
#include "equiwing/equiwing.hpp"

namespace equiwing {

namespace {

using Clock = std::chrono::steady_clock;

class SemanticError : public Error {
 public:
  using Error::Error;
};

EdgeListFormat parse_format(const std::string& f) {
  return f == "konect" ? EdgeListFormat::konect : EdgeListFormat::two_column;
}

std::string timing_line(Clock::time_point t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "time_seconds %.6f", std::chrono::duration<double>(Clock::now() - t).count());
  return buf;
}

VertexId resolve_vertex(const VertexTable& vt, const std::string& label, const std::string& side) {
  auto u = vt.find(Side::U, label);
  auto v = vt.find(Side::V, label);
  if (side == "U") {
    if (!u) throw SemanticError("unknown U vertex " + label);
    return {Side::U, *u};
  }
  if (side == "V") {
    if (!v) throw SemanticError("unknown V vertex " + label);
    return {Side::V, *v};
  }
  if (u && v) throw SemanticError("label " + label + " exists on both sides; pass --side");
  if (u) return {Side::U, *u};
  if (v) return {Side::V, *v};
  throw SemanticError("unknown vertex " + label);
}

void print_wings(std::ostream& out, const WingResult& r, const VertexTable& vt, bool jsonl) {
  using LabelEdge = std::pair<std::string, std::string>;
  std::vector<std::vector<LabelEdge>> wings;
  for (const auto& w : r.wings) {
    std::vector<LabelEdge> edges;
    for (const EdgeKey& e : w) edges.emplace_back(vt.label(Side::U, e.u), vt.label(Side::V, e.v));
    std::sort(edges.begin(), edges.end());
    wings.push_back(std::move(edges));
  }
  std::sort(wings.begin(), wings.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
  if (!jsonl) out << "wings " << wings.size() << '\n';
  for (std::size_t i = 0; i < wings.size(); ++i) {
    if (jsonl) {
      nlohmann::json j;
      j["wing_index"] = i + 1;
      j["size"] = wings[i].size();
      j["edges"] = nlohmann::json::array();
      for (const auto& [u, v] : wings[i]) j["edges"].push_back({u, v});
      out << j.dump() << '\n';
    } else {
      out << "wing " << i + 1 << " edges " << wings[i].size() << '\n';
      for (const auto& [u, v] : wings[i]) out << u << '\t' << v << '\n';
    }
  }
}

void write_graph_atomically(const BipartiteGraph& g, const std::string& path) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp);
    write_edge_list(out, g);
    out.flush();
    if (!out) throw IoError("write failure on " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot replace " + path + ": " + ec.message());
}

struct Options {
  std::string graph, out, index, format = "two-column";
  bool comp = false;
  std::string query, side, engine = "auto", output = "text", seed_mode = "level";
  long long k = 0;
  std::vector<std::string> inserts, deletes;
  GeneratorParams gen;
  BenchConfig bench;
  bool no_baseline = false;
};

int cmd_decompose(const Options& o, std::ostream& out) {
  const BipartiteGraph g = load_edge_list_file(o.graph, parse_format(o.format));
  const WingLabeling lab = wing_decomposition(g);
  std::vector<std::tuple<std::string, std::string, WingNumber>> rows;
  for (EdgeId e : g.edge_ids()) {
    const EdgeKey k = g.endpoints(e);
    rows.emplace_back(g.label({Side::U, k.u}), g.label({Side::V, k.v}), lab[e]);
  }
  std::sort(rows.begin(), rows.end());
  for (const auto& [u, v, p] : rows) out << u << '\t' << v << '\t' << p << '\n';
  return 0;
}

int cmd_build(const Options& o, std::ostream& out) {
  const auto t = Clock::now();
  const BipartiteGraph g = load_edge_list_file(o.graph, parse_format(o.format));
  const WingLabeling lab = wing_decomposition(g);
  EquiWingIndex ew = build_equiwing(g, lab);
  if (o.comp) {
    EquiWingCompIndex comp = compress(ew);
    save_index_file(comp, o.out);
    out << "kind equiwing-comp\n";
    out << "nodes " << comp.node_count() << "\nsuper_edges " << comp.super_edge_count() << '\n';
    out << "equiwing_nodes " << ew.node_count() << '\n';
    if (comp.node_count() > 0) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "compression_ratio %.4f", compression_ratio(ew, comp));
      out << buf << '\n';
    } else {
      out << "compression_ratio undefined\n";
    }
  } else {
    save_index_file(ew, o.out);
    out << "kind equiwing\n";
    out << "nodes " << ew.node_count() << "\nsuper_edges " << ew.super_edge_count() << '\n';
  }
  out << timing_line(t) << '\n';
  return 0;
}

int cmd_query(const Options& o, std::ostream& out) {
  if (o.k < 1) throw SemanticError("k must be at least 1");
  const WingNumber k = WingNumber(o.k);
  const bool jsonl = o.output == "jsonlines";
  if (o.engine == "baseline") {
    if (o.graph.empty()) throw SemanticError("the baseline engine needs --graph");
    const BipartiteGraph g = load_edge_list_file(o.graph, parse_format(o.format));
    const WingLabeling lab = wing_decomposition(g);
    const VertexId q = resolve_vertex(g.vertices(), o.query, o.side);
    print_wings(out, baseline_search(g, lab, q, k), g.vertices(), jsonl);
    return 0;
  }
  if (o.index.empty()) throw SemanticError("--index is required for indexed engines");
  const AnyIndex any = load_index_file(o.index);
  if (const auto* ew = std::get_if<EquiWingIndex>(&any)) {
    if (o.engine == "comp") throw FormatError(o.index + " is not an EquiWing-Comp index");
    const VertexId q = resolve_vertex(ew->vertices(), o.query, o.side);
    print_wings(out, query_equiwing(*ew, q, k), ew->vertices(), jsonl);
  } else {
    const auto& comp = std::get<EquiWingCompIndex>(any);
    if (o.engine == "equiwing") throw FormatError(o.index + " is not a plain EquiWing index");
    const VertexId q = resolve_vertex(comp.vertices(), o.query, o.side);
    const SeedMode mode = o.seed_mode == "table" ? SeedMode::seed_table : SeedMode::level_scan;
    print_wings(out, query_comp(comp, q, k, nullptr, mode), comp.vertices(), jsonl);
  }
  return 0;
}

std::pair<std::string, std::string> split_edge(const std::string& s) {
  const auto c = s.find(':');
  if (c == std::string::npos || c == 0 || c + 1 == s.size()) throw FormatError("expected u:v, got '" + s + "'");
  return {s.substr(0, c), s.substr(c + 1)};
}

int cmd_update(const Options& o, const std::vector<std::pair<bool, std::string>>& ops, std::ostream& out) {
  const auto t = Clock::now();
  BipartiteGraph g = load_edge_list_file(o.graph, parse_format(o.format));
  AnyIndex any = load_index_file(o.index);
  const bool comp = std::holds_alternative<EquiWingCompIndex>(any);
  SuperGraph stored = std::visit([&](const auto& x) { return reindex_vertices(x, g.vertices()); }, any);
  WingLabeling lab = labeling_from_index(g, stored);
  EquiWingIndex ew = build_equiwing(g, lab);
  DynamicIndex dyn(std::move(g), std::move(lab), std::move(ew), comp);

  for (const auto& [is_insert, text] : ops) {
    const auto [u, v] = split_edge(text);
    if (is_insert) {
      const auto r = dyn.insert_edge(u, v);
      if (!r.applied) {
        out << "insert " << u << ' ' << v << " skipped already_present\n";
        continue;
      }
      out << "insert " << u << ' ' << v << " delta " << r.scope.delta << " upper_bound " << r.scope.upper_bound;
      out << " affected_edges " << r.scope.affected_edges.size() << " affected_nodes "
          << r.scope.affected_nodes.size() << " changed " << r.report.changed.size() << " fallback "
          << (r.report.fell_back ? 1 : 0) << '\n';
    } else {
      if (!dyn.graph().find_edge(u, v)) throw SemanticError("no edge " + u + " " + v);
      const auto r = dyn.delete_edge(u, v);
      out << "delete " << u << ' ' << v << " affected_edges " << r.scope.affected_edges.size() << " affected_nodes "
          << r.scope.affected_nodes.size() << " changed " << r.report.changed.size() << " fallback "
          << (r.report.fell_back ? 1 : 0) << '\n';
    }
  }

  write_graph_atomically(dyn.graph(), o.graph);
  if (comp) {
    save_index_file(*dyn.comp(), o.index);
    out << "nodes " << dyn.comp()->node_count() << "\nsuper_edges " << dyn.comp()->super_edge_count() << '\n';
  } else {
    save_index_file(dyn.index(), o.index);
    out << "nodes " << dyn.index().node_count() << "\nsuper_edges " << dyn.index().super_edge_count() << '\n';
  }
  out << timing_line(t) << '\n';
  return 0;
}

std::size_t components(const SuperGraph& sg) {
  std::map<SnId, bool> seen;
  std::size_t n = 0;
  for (SnId id : sg.node_ids()) {
    if (seen[id]) continue;
    ++n;
    std::vector<SnId> stack{id};
    seen[id] = true;
    while (!stack.empty()) {
      const SnId x = stack.back();
      stack.pop_back();
      for (SnId y : sg.neighbors(x))
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
    }
  }
  return n;
}

int cmd_stats(const Options& o, std::ostream& out) {
  const AnyIndex any = load_index_file(o.index);
  const bool comp = std::holds_alternative<EquiWingCompIndex>(any);
  const SuperGraph& sg = std::visit([](const auto& x) -> const SuperGraph& { return x; }, any);
  out << "kind " << (comp ? "equiwing-comp" : "equiwing") << '\n';
  out << "vertices_u " << sg.vertices().count(Side::U) << "\nvertices_v " << sg.vertices().count(Side::V) << '\n';
  out << "nodes " << sg.node_count() << "\nsuper_edges " << sg.super_edge_count() << '\n';
  out << "indexed_edges " << sg.indexed_edge_count() << "\nk_max " << sg.k_max() << '\n';
  const std::size_t c = components(sg);
  out << "components " << c << "\nforest " << (sg.super_edge_count() + c == sg.node_count() ? "yes" : "no") << '\n';
  std::map<WingNumber, std::pair<std::size_t, std::size_t>> levels;
  for (SnId id : sg.node_ids()) {
    auto& l = levels[sg.k_of(id)];
    ++l.first;
    l.second += sg.node(id).members.size();
  }
  for (const auto& [k, l] : levels) out << "level " << k << " nodes " << l.first << " edges " << l.second << '\n';
  if (comp) {
    const auto& ci = std::get<EquiWingCompIndex>(any);
    out << "original_nodes " << ci.original_node_count() << '\n';
    if (ci.node_count() > 0) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "compression_ratio %.4f", double(ci.original_node_count()) / ci.node_count());
      out << buf << '\n';
    }
  }
  return 0;
}

int cmd_gen(const Options& o, std::ostream& out) {
  const BipartiteGraph g = generate_bipartite(o.gen);
  write_graph_atomically(g, o.out);
  out << "edges " << g.edge_count() << '\n';
  return 0;
}

int cmd_bench(const Options& o, std::ostream& out) {
  const BipartiteGraph g =
      o.graph.empty() ? generate_bipartite(o.gen) : load_edge_list_file(o.graph, parse_format(o.format));
  BenchConfig cfg = o.bench;
  cfg.run_baseline = !o.no_baseline;
  out << "edges " << g.edge_count() << '\n';
  print_benchmark(out, run_benchmark(g, cfg));
  return 0;
}

void add_gen_options(CLI::App* c, Options& o) {
  c->add_option("--u", o.gen.u_count, "U-side vertex count");
  c->add_option("--v", o.gen.v_count, "V-side vertex count");
  c->add_option("--p", o.gen.edge_probability, "background edge probability")->check(CLI::Range(0.0, 1.0));
  c->add_option("--blocks", o.gen.blocks, "planted dense blocks");
  c->add_option("--block-u", o.gen.block_u, "U vertices per block");
  c->add_option("--block-v", o.gen.block_v, "V vertices per block");
  c->add_option("--block-density", o.gen.block_density, "edge probability inside a block")
      ->check(CLI::Range(0.0, 1.0));
  c->add_option("--seed", o.gen.seed, "random seed");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k-wing search over bipartite graphs"};
  app.require_subcommand(1);
  Options o;
  const std::vector<std::string> formats{"two-column", "konect"};

  auto* decompose = app.add_subcommand("decompose", "print the wing number of every edge");
  decompose->add_option("--graph", o.graph, "edge list")->required();
  decompose->add_option("--format", o.format)->check(CLI::IsMember(formats));

  auto* build = app.add_subcommand("build", "build an index file");
  build->add_option("--graph", o.graph, "edge list")->required();
  build->add_option("--out", o.out, "index file to write")->required();
  build->add_flag("--comp", o.comp, "build the compressed index");
  build->add_option("--format", o.format)->check(CLI::IsMember(formats));

  auto* query = app.add_subcommand("query", "list the k-wings containing a vertex");
  query->add_option("--index", o.index, "index file");
  query->add_option("--graph", o.graph, "edge list (baseline engine)");
  query->add_option("-q,--vertex", o.query, "query vertex label")->required();
  query->add_option("-k", o.k, "wing level")->required();
  query->add_option("--side", o.side)->check(CLI::IsMember({"U", "V"}));
  query->add_option("--engine", o.engine)->check(CLI::IsMember({"auto", "equiwing", "comp", "baseline"}));
  query->add_option("--output", o.output)->check(CLI::IsMember({"text", "jsonlines"}));
  query->add_option("--seed-mode", o.seed_mode, "compressed index seeding")->check(CLI::IsMember({"level", "table"}));
  query->add_option("--format", o.format)->check(CLI::IsMember(formats));

  auto* update = app.add_subcommand("update", "apply edge insertions and deletions in order");
  update->add_option("--graph", o.graph, "edge list, rewritten in place")->required();
  update->add_option("--index", o.index, "index file, rewritten in place")->required();
  auto* ins = update->add_option("--insert", o.inserts, "u:v")->allow_extra_args(false);
  auto* del = update->add_option("--delete", o.deletes, "u:v")->allow_extra_args(false);
  update->add_option("--format", o.format)->check(CLI::IsMember(formats));

  auto* stats = app.add_subcommand("stats", "summarize an index file");
  stats->add_option("--index", o.index, "index file")->required();

  auto* gen = app.add_subcommand("gen", "write a seeded random bipartite graph");
  gen->add_option("--out", o.out, "edge list to write")->required();
  add_gen_options(gen, o);

  auto* bench = app.add_subcommand("bench", "time the engines per degree bucket");
  bench->add_option("--graph", o.graph, "edge list; generated when absent");
  bench->add_option("--format", o.format)->check(CLI::IsMember(formats));
  bench->add_option("-k", o.bench.k, "wing level");
  bench->add_option("--queries", o.bench.queries_per_bucket, "queries per bucket");
  bench->add_option("--buckets", o.bench.buckets, "degree buckets");
  bench->add_option("--query-seed", o.bench.seed, "query sampling seed");
  bench->add_flag("--no-baseline", o.no_baseline, "skip the online search");
  add_gen_options(bench, o);

  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*decompose) return cmd_decompose(o, out);
    if (*build) return cmd_build(o, out);
    if (*query) return cmd_query(o, out);
    if (*update) {
      std::vector<std::pair<bool, std::string>> ops;
      std::size_t ni = 0, nd = 0;
      for (const CLI::Option* opt : update->parse_order()) {
        if (opt == ins) ops.emplace_back(true, o.inserts.at(ni++));
        if (opt == del) ops.emplace_back(false, o.deletes.at(nd++));
      }
      return cmd_update(o, ops, out);
    }
    if (*stats) return cmd_stats(o, out);
    if (*gen) return cmd_gen(o, out);
    if (*bench) return cmd_bench(o, out);
  } catch (const ConsistencyError& e) {
    err << "internal error: " << e.what() << '\n';
    return 4;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace equiwing
