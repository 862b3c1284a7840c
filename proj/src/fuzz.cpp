#include "mdst/harness/fuzz.hpp"

#include <iomanip>
#include <sstream>

namespace mdst::harness {

FuzzSummary run_fuzz(const FuzzConfig& cfg) {
  FuzzSummary sum;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    std::uint64_t case_seed = mix_seed(cfg.seed, i);
    Rng rng(case_seed);
    std::size_t n = static_cast<std::size_t>(
        rng.uniform(static_cast<std::int64_t>(cfg.n_min), static_cast<std::int64_t>(cfg.n_max)));
    Graph g = generate_graph(GraphFamily::Random, n, WeightRange{cfg.w_min, cfg.w_max},
                             rng.next(), cfg.max_extra_edges);

    proto::RunOptions opt;
    opt.delay = sim::DelayModel::seeded(rng.next());
    std::vector<NodeId> subset;
    for (NodeId id : g.nodes())
      if (rng.uniform(0, 1) == 1) subset.push_back(id);
    if (subset.empty()) subset.push_back(g.nodes()[static_cast<std::size_t>(
        rng.uniform(0, static_cast<std::int64_t>(g.node_count()) - 1))]);
    opt.initiators = subset;

    RunReport rep = verify_run(g, opt);
    std::vector<std::string> failures = rep.failures;

    if (failures.empty() && cfg.check_enumeration) {
      HalfUnit best = min_diameter_by_enumeration(g);
      if (rep.distributed_tree_diameter != best)
        failures.push_back("tree diameter " + rep.distributed_tree_diameter.str() +
                           " is not the enumerated optimum " + best.str());
    }

    if (failures.empty() && cfg.crosscheck_initiators) {
      proto::RunOptions all = opt;
      all.initiators.clear();  // all nodes
      all.delay = sim::DelayModel::seeded(rng.next());
      RunReport rep2 = verify_run(g, all);
      if (!rep2.pass())
        failures.push_back("all-initiator rerun failed: " + rep2.failures.front());
      else if (!(rep2.distributed_center == rep.distributed_center))
        failures.push_back("center depends on the initiator set");
      else if (rep2.distributed_edges != rep.distributed_edges)
        failures.push_back("tree depends on the initiator set");
    }

    if (failures.empty() && cfg.crosscheck_prune) {
      proto::RunOptions nop = opt;
      nop.prune = false;
      RunReport rep3 = verify_run(g, nop);
      if (!rep3.pass())
        failures.push_back("unpruned rerun failed: " + rep3.failures.front());
      else if (!(rep3.distributed_center == rep.distributed_center) ||
               rep3.distributed_edges != rep.distributed_edges)
        failures.push_back("pruning changed the result");
    }

    ++sum.total;
    if (failures.empty()) {
      ++sum.passed;
    } else if (!sum.first_failure) {
      sum.first_failure = FuzzCase{case_seed, serialize_graph(g), failures};
    }
  }
  return sum;
}

double ScalingRow::time_per_node() const {
  return double(finish_time) / double(sim::kTicksPerUnit) / double(n);
}

double ScalingRow::update_ratio() const {
  return double(updates) / (2.0 * double(n) * double(m));
}

std::vector<ScalingRow> run_scaling(GraphFamily family, const std::vector<std::size_t>& sizes,
                                    std::uint64_t seed) {
  std::vector<ScalingRow> rows;
  for (std::size_t n : sizes) {
    Graph g = generate_graph(family, n, WeightRange{1, 1}, mix_seed(seed, n));
    proto::RunOptions opt;  // unit delay, all initiators
    auto run = proto::run_protocol(g, opt);
    ScalingRow row;
    row.n = g.node_count();
    row.m = g.edge_count();
    row.finish_time = run.metrics.finish_time;
    auto k = [&](const char* s) {
      auto it = run.metrics.messages_by_kind.find(s);
      return it == run.metrics.messages_by_kind.end() ? std::uint64_t{0} : it->second;
    };
    row.updates = k("Update");
    row.inactives = k("Inactive");
    row.bits_total = run.metrics.bits_total;
    rows.push_back(row);
  }
  return rows;
}

std::string scaling_table(const std::vector<ScalingRow>& rows) {
  std::ostringstream out;
  out << std::setw(6) << "n" << std::setw(6) << "m" << std::setw(12) << "finish" << std::setw(10)
      << "updates" << std::setw(10) << "inactive" << std::setw(12) << "bits" << std::setw(12)
      << "time/n" << std::setw(14) << "upd/(2nm)" << '\n';
  for (const auto& r : rows) {
    out << std::setw(6) << r.n << std::setw(6) << r.m << std::setw(12)
        << sim::ticks_to_units_str(r.finish_time) << std::setw(10) << r.updates << std::setw(10)
        << r.inactives << std::setw(12) << r.bits_total << std::setw(12) << std::fixed
        << std::setprecision(3) << r.time_per_node() << std::setw(14) << std::setprecision(3)
        << r.update_ratio() << '\n';
  }
  return out.str();
}

}  // namespace mdst::harness
