// Command-line front end: graph generation, verified protocol runs against
// the sequential oracles, randomized verification campaigns, and scaling
// measurements under unit delays.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mdst/harness/fuzz.hpp"
#include "mdst/harness/report.hpp"
#include "mdst/oracle.hpp"

using namespace mdst;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::vector<NodeId> parse_initiators(const std::string& spec, const Graph& g) {
  if (spec == "all" || spec.empty()) return {};
  std::vector<NodeId> ids;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    NodeId id = std::stoll(tok);
    if (!g.has_node(id)) throw std::runtime_error("initiator " + tok + " is not a node");
    ids.push_back(id);
  }
  if (ids.empty()) throw std::runtime_error("empty initiator list");
  return ids;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic simulator and verifier for a distributed "
               "minimum-diameter spanning tree protocol"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "write a graph file");
  std::string family = "random", out_path;
  std::size_t gen_n = 8;
  std::int64_t wmin = 1, wmax = 10;
  std::uint64_t seed = 1;
  gen->add_option("--family", family, "line|ring|complete|random");
  gen->add_option("--n", gen_n, "node count")->required();
  gen->add_option("--wmin", wmin, "minimum weight");
  gen->add_option("--wmax", wmax, "maximum weight");
  gen->add_option("--seed", seed, "generator seed");
  gen->add_option("--out", out_path, "output path (default stdout)");

  // run
  auto* run = app.add_subcommand("run", "run the protocol on a graph and verify it");
  std::string graph_path, initiators = "all", delay = "unit", dot_path, trace_path;
  std::uint64_t run_seed = 1;
  bool compact = false, no_prune = false;
  run->add_option("graph", graph_path, "edge-list graph file")->required();
  run->add_option("--seed", run_seed, "delay seed (random mode)");
  run->add_option("--delay", delay, "unit|random");
  run->add_option("--initiators", initiators, "\"all\" or comma-separated ids");
  run->add_option("--dot", dot_path, "write the resulting tree as DOT");
  run->add_option("--trace", trace_path, "write the delivery trace as JSON lines");
  run->add_flag("--json", compact, "compact single-line JSON report");
  run->add_flag("--no-prune", no_prune, "disable the half-diameter scan cutoff");

  // fuzz
  auto* fuzz = app.add_subcommand("fuzz", "randomized verification campaign");
  harness::FuzzConfig fc;
  bool fz_enum = false;
  fuzz->add_option("--count", fc.count, "number of cases");
  fuzz->add_option("--nmin", fc.n_min, "smallest node count");
  fuzz->add_option("--nmax", fc.n_max, "largest node count");
  fuzz->add_option("--wmin", fc.w_min, "minimum weight");
  fuzz->add_option("--wmax", fc.w_max, "maximum weight");
  fuzz->add_option("--seed", fc.seed, "campaign seed");
  fuzz->add_flag("--enumerate", fz_enum,
                 "also compare against exhaustive spanning-tree enumeration");

  // scaling
  auto* scal = app.add_subcommand("scaling", "unit-delay time/message scaling table");
  std::string scal_family = "line", sizes_spec = "8,16,32,64";
  std::uint64_t scal_seed = 1;
  scal->add_option("--family", scal_family, "graph family");
  scal->add_option("--sizes", sizes_spec, "comma-separated node counts");
  scal->add_option("--seed", scal_seed, "generator seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      Graph g = generate_graph(parse_family(family), gen_n, WeightRange{wmin, wmax}, seed);
      std::string text = serialize_graph(g);
      if (out_path.empty())
        std::cout << text;
      else
        write_file(out_path, text);
      return 0;
    }

    if (*run) {
      Graph g = parse_graph(read_file(graph_path));
      proto::RunOptions opt;
      opt.initiators = parse_initiators(initiators, g);
      opt.prune = !no_prune;
      if (delay == "random")
        opt.delay = sim::DelayModel::seeded(run_seed);
      else if (delay != "unit")
        throw std::runtime_error("unknown delay mode: " + delay);
      harness::RunReport rep = harness::verify_run(g, opt);
      std::cout << harness::report_to_json(rep, !compact) << '\n';
      if (!dot_path.empty() && rep.pass()) {
        Tree t;
        t.root = rep.distributed_center.to_general_node();
        DistMatrix d = apsp_sequential(g);
        t = shortest_path_tree(g, d, t.root);
        write_file(dot_path, tree_to_dot(t, g));
      }
      if (!trace_path.empty()) {
        auto outcome = proto::run_protocol(g, opt);
        write_file(trace_path, harness::trace_to_jsonl(outcome.trace));
      }
      return rep.pass() ? 0 : 1;
    }

    if (*fuzz) {
      fc.check_enumeration = fz_enum;
      if (fz_enum) {
        fc.n_max = std::min<std::size_t>(fc.n_max, 7);
        fc.max_extra_edges = 6;
      }
      harness::FuzzSummary s = harness::run_fuzz(fc);
      std::cout << "cases: " << s.total << "  passed: " << s.passed
                << "  pass rate: " << s.pass_rate() << '\n';
      if (s.first_failure) {
        std::cout << "first failing case seed: " << s.first_failure->case_seed << '\n';
        for (const auto& f : s.first_failure->failures) std::cout << "  - " << f << '\n';
        std::cout << "graph:\n" << s.first_failure->graph_text;
        return 1;
      }
      return 0;
    }

    if (*scal) {
      std::vector<std::size_t> sizes;
      std::stringstream ss(sizes_spec);
      std::string tok;
      while (std::getline(ss, tok, ',')) sizes.push_back(std::stoul(tok));
      auto rows = harness::run_scaling(parse_family(scal_family), sizes, scal_seed);
      std::cout << harness::scaling_table(rows);
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << '\n';
    return 2;
  }
  return 2;
}
