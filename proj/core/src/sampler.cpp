#include "graspgen/sampler.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "graspgen/error.hpp"
#include "graspgen/grasp_pose.hpp"
#include "graspgen/overlap.hpp"
#include "graspgen/parallel.hpp"
#include "graspgen/rng.hpp"

namespace graspgen {

SamplerParams::SamplerParams() {
  alpha_levels = {0.0, std::numbers::pi / 6.0, std::numbers::pi / 3.0};
  inplane_angles.resize(12);
  for (int i = 0; i < 12; ++i) inplane_angles[i] = i * std::numbers::pi / 12.0;
  standoffs = {0.01, 0.02, 0.03, 0.04};
}

void SamplerParams::validate() const {
  if (num_fps_points < 1) throw ConfigError("sampler.num_fps_points must be >= 1");
  if (normal_k < 3) throw ConfigError("sampler.normal_k must be >= 3");
  if (alpha_levels.empty()) throw ConfigError("sampler.alpha_levels must be non-empty");
  for (double a : alpha_levels) {
    if (a < 0.0 || a >= std::numbers::pi / 2.0) {
      throw ConfigError("sampler.alpha_levels must lie in [0, pi/2)");
    }
  }
  if (azimuth_steps < 1) throw ConfigError("sampler.azimuth_steps must be >= 1");
  if (inplane_angles.empty()) throw ConfigError("sampler.inplane_angles must be non-empty");
  if (standoffs.empty()) throw ConfigError("sampler.standoffs must be non-empty");
  for (double d : standoffs) {
    if (d < 0.0) throw ConfigError("sampler.standoffs must be >= 0");
  }
  if (iou_pass_threshold < 0.0 || iou_pass_threshold > 1.0) {
    throw ConfigError("sampler.iou_pass_threshold must lie in [0, 1]");
  }
  if (body_clearance_epsilon < 0.0) {
    throw ConfigError("sampler.body_clearance_epsilon must be >= 0");
  }
  if (approach_ray_margin < 0.0) {
    throw ConfigError("sampler.approach_ray_margin must be >= 0");
  }
  if (surface_points < std::max(num_fps_points, normal_k)) {
    throw ConfigError("sampler.surface_points must cover num_fps_points and normal_k");
  }
  if (overlap_samples < 1000) {
    throw ConfigError("sampler.overlap_samples must be >= 1000");
  }
}

std::vector<int> farthest_point_sample(std::span<const Vec3> points, int m,
                                       int start_index) {
  const int n = static_cast<int>(points.size());
  if (m < 1 || m > n) {
    throw std::invalid_argument("farthest_point_sample: m outside [1, point count]");
  }
  if (start_index < 0 || start_index >= n) {
    throw std::invalid_argument("farthest_point_sample: start index out of range");
  }

  std::vector<int> chosen;
  chosen.reserve(m);
  chosen.push_back(start_index);
  std::vector<double> min_sq(n);
  for (int i = 0; i < n; ++i) {
    min_sq[i] = (points[i] - points[start_index]).squaredNorm();
  }
  while (static_cast<int>(chosen.size()) < m) {
    int best = 0;
    double best_sq = -1.0;
    for (int i = 0; i < n; ++i) {
      if (min_sq[i] > best_sq) {  // strict: ties keep the lowest index
        best_sq = min_sq[i];
        best = i;
      }
    }
    chosen.push_back(best);
    for (int i = 0; i < n; ++i) {
      min_sq[i] = std::min(min_sq[i], (points[i] - points[best]).squaredNorm());
    }
  }
  return chosen;
}

PointCloud estimate_normals(const PointCloud& cloud, int k, const Vec3& viewpoint) {
  const int n = static_cast<int>(cloud.size());
  if (k < 3) throw std::invalid_argument("estimate_normals: k must be >= 3");
  if (n < k) throw std::invalid_argument("estimate_normals: cloud smaller than k");

  PointCloud out = cloud;
  out.normals.assign(n, Vec3::Zero());
  std::vector<std::pair<double, int>> dist(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      dist[j] = {(cloud.points[j] - cloud.points[i]).squaredNorm(), j};
    }
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());

    Vec3 mean = Vec3::Zero();
    for (int j = 0; j < k; ++j) mean += cloud.points[dist[j].second];
    mean /= k;
    Mat3 cov = Mat3::Zero();
    for (int j = 0; j < k; ++j) {
      const Vec3 d = cloud.points[dist[j].second] - mean;
      cov += d * d.transpose();
    }

    Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
    Vec3 normal = eig.eigenvectors().col(0);  // smallest eigenvalue first
    const double norm = normal.norm();
    normal = norm > 0.0 ? Vec3(normal / norm) : Vec3(0, 0, 1);
    if (normal.dot(viewpoint - cloud.points[i]) < 0.0) normal = -normal;
    out.normals[i] = normal;
  }
  return out;
}

std::vector<UnitVec3> cone_directions(const UnitVec3& normal,
                                      const SamplerParams& params) {
  const UnitVec3 base = UnitVec3::normalized(-normal.vec());
  const Mat3 frame = frame_from_approach(base);
  const Vec3 t1 = frame.col(0);
  const Vec3 t2 = frame.col(1);

  std::vector<UnitVec3> dirs;
  for (double alpha : params.alpha_levels) {
    if (alpha == 0.0) {
      dirs.push_back(base);
      continue;
    }
    const double ca = std::cos(alpha);
    const double sa = std::sin(alpha);
    for (int j = 0; j < params.azimuth_steps; ++j) {
      const double psi = 2.0 * std::numbers::pi * j / params.azimuth_steps;
      const Vec3 d = ca * base.vec() + sa * (std::cos(psi) * t1 + std::sin(psi) * t2);
      dirs.push_back(UnitVec3::normalized(d));
    }
  }
  return dirs;
}

bool approach_clear(const Scene& scene, const Vec3& center,
                    const UnitVec3& approach, const GripperModel& gripper,
                    double standoff, double margin) {
  if (standoff < 0.0) {
    throw std::invalid_argument("approach_clear: standoff must be >= 0");
  }
  const double corridor = standoff + margin;
  if (!(corridor > 0.0)) return true;

  const Vec3 start = center - approach.vec() * corridor;
  const Mat3 frame = frame_from_approach(approach);
  const Vec3 t1 = frame.col(0);
  const Vec3 t2 = frame.col(1);
  const double bx = gripper.base.half_extents.x();
  const double by = gripper.base.half_extents.y();
  const UnitVec3 retreat = UnitVec3::normalized(-approach.vec());

  for (int i = -1; i <= 1; ++i) {
    for (int j = -1; j <= 1; ++j) {
      const Vec3 origin = start + t1 * (i * bx) + t2 * (j * by);
      const auto hit = ray_cast(scene, origin, retreat, corridor);
      if (hit && hit->distance < corridor) return false;
    }
  }
  return true;
}

GateResult overlap_gate(const RigidTransform& pose, int target_instance,
                        const Scene& scene, const GripperModel& gripper,
                        const SamplerParams& params, std::uint64_t seed) {
  const SceneObject& target = scene.object(target_instance);

  GateResult result;
  const OrientedBox closing = gripper.closing_region.transformed(pose);
  const auto closing_overlap =
      box_mesh_overlap(closing, *target.accel, target.pose, params.overlap_samples,
                       mix_seed(seed, 0xC1051ULL, target.instance_id));
  result.collision_score = std::clamp(closing_overlap.iou, 0.0, 1.0);
  if (result.collision_score < params.iou_pass_threshold) return result;

  const auto bodies = gripper.body_boxes();
  for (std::size_t b = 0; b < bodies.size(); ++b) {
    const OrientedBox body = bodies[b]->transformed(pose);
    const Aabb body_aabb = body.world_aabb();
    for (const auto& obj : scene.objects()) {
      if (!body_aabb.intersects(obj.world_aabb)) continue;
      const auto overlap =
          box_mesh_overlap(body, *obj.accel, obj.pose, params.overlap_samples,
                           mix_seed(seed, b + 1, obj.instance_id));
      if (overlap.overlap_volume > params.body_clearance_epsilon) return result;
    }
  }
  result.pass = true;
  return result;
}

std::vector<GraspCandidate> generate_candidates(const Scene& scene,
                                                int target_instance,
                                                const GripperModel& gripper,
                                                const SamplerParams& params,
                                                std::uint64_t seed,
                                                int workers) {
  params.validate();
  gripper.validate();
  const SceneObject& target = scene.object(target_instance);

  // Object surface cloud with exact face normals, sampled in the mesh
  // frame and posed into the world.
  const SurfaceSamples surface = sample_surface(
      *target.mesh, params.surface_points,
      mix_seed(seed, 0x5ceeULL, static_cast<std::uint64_t>(target_instance)));
  std::vector<Vec3> world_points(surface.points.size());
  for (std::size_t i = 0; i < surface.points.size(); ++i) {
    world_points[i] = target.pose.apply(surface.points[i]);
  }

  const std::vector<int> centers =
      farthest_point_sample(world_points, params.num_fps_points, 0);
  const double max_standoff =
      *std::max_element(params.standoffs.begin(), params.standoffs.end());

  std::vector<std::vector<GraspCandidate>> per_center(centers.size());
  parallel_for(centers.size(), workers, [&](std::size_t ci) {
    const int point_index = centers[ci];
    const Vec3 center = world_points[point_index];
    const UnitVec3 normal =
        UnitVec3::normalized(target.pose.rotate(surface.normals[point_index]));

    auto& local = per_center[ci];
    const auto directions = cone_directions(normal, params);
    for (const auto& approach : directions) {
      if (!approach_clear(scene, center, approach, gripper, max_standoff,
                          params.approach_ray_margin)) {
        continue;
      }
      for (double angle : params.inplane_angles) {
        for (double standoff : params.standoffs) {
          GraspCandidate candidate;
          candidate.center = center;
          candidate.approach = approach;
          candidate.inplane_angle = angle;
          candidate.depth = standoff;
          candidate.pose = compose_grasp_pose(center, approach, angle, standoff);
          candidate.instance_id = target_instance;
          const GateResult gate = overlap_gate(candidate.pose, target_instance,
                                               scene, gripper, params, seed);
          if (!gate.pass) continue;
          candidate.collision_score = gate.collision_score;
          local.push_back(candidate);
        }
      }
    }
  });

  std::vector<GraspCandidate> out;
  for (auto& group : per_center) {
    out.insert(out.end(), group.begin(), group.end());
  }
  return out;
}

}  // namespace graspgen
