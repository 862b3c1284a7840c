#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mdst/harness/report.hpp"

namespace mdst::harness {

struct FuzzConfig {
  std::size_t count = 200;
  std::size_t n_min = 2;
  std::size_t n_max = 12;
  std::int64_t w_min = 1;
  std::int64_t w_max = 10;
  std::uint64_t seed = 1;
  std::size_t max_extra_edges = 18;
  bool check_enumeration = false;  // also compare against the spanning-tree sweep
  bool crosscheck_initiators = true;
  bool crosscheck_prune = false;
};

struct FuzzCase {
  std::uint64_t case_seed = 0;
  std::string graph_text;
  std::vector<std::string> failures;
};

struct FuzzSummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::optional<FuzzCase> first_failure;
  double pass_rate() const { return total == 0 ? 1.0 : double(passed) / double(total); }
};

// Seeded campaign: random graphs, random delays, random initiator subsets,
// each run fully verified against the sequential oracles.
FuzzSummary run_fuzz(const FuzzConfig& cfg);

struct ScalingRow {
  std::size_t n = 0;
  std::size_t m = 0;
  sim::Tick finish_time = 0;
  std::uint64_t updates = 0;
  std::uint64_t inactives = 0;
  std::uint64_t bits_total = 0;
  // finish_time / n in units, update_count / 2nm
  double time_per_node() const;
  double update_ratio() const;
};

std::vector<ScalingRow> run_scaling(GraphFamily family, const std::vector<std::size_t>& sizes,
                                    std::uint64_t seed);

std::string scaling_table(const std::vector<ScalingRow>& rows);

}  // namespace mdst::harness
