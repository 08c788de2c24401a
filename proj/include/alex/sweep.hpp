#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace alex {

/// Exhaustive verification over all labeled posets up to `max_elements`
/// elements, `trials` seeded random diagrams each.
struct SweepOptions {
  std::size_t max_elements = 4;
  std::size_t max_value = 2;
  std::size_t max_cover = 4;
  std::size_t trials = 3;
  std::uint64_t seed = 7;
  std::string category = "vect";
  std::size_t threads = 0;  // 0: hardware concurrency

  bool check_restriction = true;
  bool check_cech = true;
  bool run_falsifier = true;
  /// Proof-step checks on posets with at most this many elements; 0 disables.
  std::size_t proof_steps_max_elements = 0;
};

struct SweepFailure {
  std::string kind;
  nlohmann::json instance;
};

struct SweepReport {
  std::size_t posets = 0;
  std::size_t diagrams = 0;
  std::size_t down_sets = 0;
  /// Cosheaf checks of F̂ on basic covers.
  std::size_t checks = 0;
  /// Diagram-independent cover census.
  std::size_t covers = 0;
  std::size_t basic_covers = 0;
  std::size_t cech_covers = 0;
  std::size_t cech_not_basic = 0;
  std::size_t restriction_checks = 0;
  std::size_t proof_step_checks = 0;
  std::size_t falsifier_runs = 0;
  std::vector<SweepFailure> failures;

  bool ok() const { return failures.empty(); }
  nlohmann::json to_json(const SweepOptions& options) const;
};

SweepReport run_sweep(const SweepOptions& options);

}  // namespace alex
