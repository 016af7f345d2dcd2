#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <span>
#include <string>

#include "graspgen/evaluator.hpp"
#include "graspgen/gripper.hpp"
#include "graspgen/refine.hpp"
#include "graspgen/sampler.hpp"

namespace graspgen {

/// One reproducible run: every numeric parameter plus the mandatory seed.
/// There is no implicit entropy anywhere in the pipeline.
struct PipelineConfig {
  std::uint64_t seed = 0;
  int worker_count = 1;
  int lattice_classes = 800;
  std::string evaluator = "quasi-static";
  SamplerParams sampler;
  EvalParams eval;
  RefineParams refine;
  GripperDims gripper;

  void validate() const;
};

/// Parses a config JSON document. Unknown keys are rejected and the seed is
/// required; errors carry the offending field path.
PipelineConfig parse_config(const nlohmann::json& doc);

/// Reads the config file and applies `--set key.path=value` overrides
/// (values parsed as JSON, falling back to strings) before parsing.
PipelineConfig load_config(const std::string& path,
                           std::span<const std::string> overrides = {});

nlohmann::json config_to_json(const PipelineConfig& config);

}  // namespace graspgen
