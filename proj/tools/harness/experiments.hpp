#pragma once

#include <string>
#include <vector>

#include "run_config.hpp"

namespace kzfront::harness {

/// Validate, run, and persist one experiment. Returns the process exit code:
/// 0 success, 1 invalid configuration, 2 numerical-invariant or oracle failure.
int run_experiment(const RunConfig& config);

struct Recipe {
  std::string name;
  std::string description;
  RunConfig config;
};

/// Ready-made desk-scale configurations for the standard plots.
std::vector<Recipe> figure_recipes();

}  // namespace kzfront::harness
