#pragma once

#include <string>
#include <vector>

#include "graspgen/lattice.hpp"
#include "graspgen/sampler.hpp"

namespace graspgen {

/// Candidates sharing one grasp center. Centers coming from the same FPS
/// pick are bit-identical, so grouping is exact equality.
struct CenterGroup {
  int k = 0;  // group index, order of first occurrence
  Vec3 center = Vec3::Zero();
  std::vector<int> members;  // candidate indices
};

struct ScorePair {
  double raw = 0.0;
  double norm = 0.0;
};

struct AdsCell {
  int k = 0;
  int v = 0;  // direction class
  double raw = 0.0;
  double norm = 0.0;
};

std::vector<CenterGroup> group_by_center(const std::vector<GraspCandidate>& candidates);

/// Per-group sum of member simulation scores, min-max normalized across
/// groups. Degenerate (max == min) normalizes to all zeros. Throws
/// InvariantViolation when any member is unevaluated.
std::vector<ScorePair> compute_gcs(const std::vector<CenterGroup>& groups,
                                   const std::vector<GraspCandidate>& candidates);

/// Per-(group, direction-class) sums, candidates encoded through the
/// lattice. Normalization is min-max over the populated cells of the whole
/// scene; cells are ordered by (k, v).
std::vector<AdsCell> compute_ads(const std::vector<CenterGroup>& groups,
                                 const std::vector<GraspCandidate>& candidates,
                                 const DirectionLattice& lattice);

/// The candidate's own simulation score. Throws InvariantViolation when
/// unset.
double compute_igs(const GraspCandidate& candidate);

/// One annotated scene: grouped center scores, direction-class scores, and
/// per-candidate rows keyed (k, v, a, d).
struct LabelRecord {
  struct Group {
    int k = 0;
    Vec3 center = Vec3::Zero();
    double gcs_raw = 0.0;
    double gcs = 0.0;
  };
  struct CandidateRow {
    int k = 0;
    int v = 0;
    double a = 0.0;
    double d = 0.0;
    double collision = 0.0;
    double igs = 0.0;
  };

  std::string scene_id;
  std::string cloud_path;
  std::vector<Group> groups;
  std::vector<AdsCell> ads;
  std::vector<CandidateRow> candidates;

  /// Structural checks: normalized scores in [0, 1], every candidate (k, v)
  /// present in the ADS table.
  void validate() const;
};

LabelRecord build_label_record(const std::string& scene_id,
                               const std::string& cloud_path,
                               const std::vector<GraspCandidate>& candidates,
                               const DirectionLattice& lattice);

/// JSON-Lines label store, one record per line. Writing validates first and
/// refuses records that violate the invariants; values round-trip exactly.
void write_label_records(const std::vector<LabelRecord>& records,
                         const std::string& path);
std::vector<LabelRecord> read_label_records(const std::string& path);

}  // namespace graspgen
