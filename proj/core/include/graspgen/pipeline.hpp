#pragma once

#include <string>
#include <vector>

#include "graspgen/cloud.hpp"
#include "graspgen/config.hpp"
#include "graspgen/refine.hpp"
#include "graspgen/sampler.hpp"
#include "graspgen/scene.hpp"
#include "graspgen/scores.hpp"

namespace graspgen {

// Stage orchestration shared by the CLI and tests. Every stage is a pure
// function of (inputs, config); reruns are byte-identical.

/// Merged labeled scene cloud: per-object surface samples with exact face
/// normals and instance labels, in scene-object order.
PointCloud build_scene_cloud(const Scene& scene, const PipelineConfig& config);

/// generate_candidates for every instance, concatenated in scene order.
/// `counts` (optional) receives per-object candidate counts.
std::vector<GraspCandidate> sample_scene(const Scene& scene,
                                         const PipelineConfig& config,
                                         std::vector<std::pair<int, int>>* counts = nullptr);

/// Runs the configured evaluator over every candidate; results land in
/// candidate index order regardless of worker scheduling.
void annotate_candidates(std::vector<GraspCandidate>& candidates,
                         const Scene& scene, const PipelineConfig& config);

LabelRecord aggregate_labels(const std::string& scene_id,
                             const std::string& cloud_path,
                             const std::vector<GraspCandidate>& candidates,
                             const PipelineConfig& config);

/// Instance assignment, cloud collision filter, NMS, top-percent cut.
std::vector<RefinedGrasp> refine_grasps(const std::vector<RefinedGrasp>& grasps,
                                        const PointCloud& cloud,
                                        const PipelineConfig& config);

// Candidate JSON-Lines store. sim_score is omitted while unset.
void write_candidates_jsonl(const std::vector<GraspCandidate>& candidates,
                            const std::string& path);
std::vector<GraspCandidate> read_candidates_jsonl(const std::string& path);

}  // namespace graspgen
