#include "graspgen/evaluator.hpp"

#include <algorithm>
#include <cmath>

#include "graspgen/error.hpp"
#include "graspgen/rng.hpp"

namespace graspgen {

void EvalParams::validate() const {
  if (!(friction_mu > 0.0)) throw ConfigError("eval.friction_mu must be > 0");
  if (!(lift_height > 0.0)) throw ConfigError("eval.lift_height must be > 0");
  if (sweep_steps < 2) throw ConfigError("eval.sweep_steps must be >= 2");
  if (!(contact_tolerance > 0.0)) throw ConfigError("eval.contact_tolerance must be > 0");
  if (finger_rays < 1) throw ConfigError("eval.finger_rays must be >= 1");
  if (overlap_samples < 1000) throw ConfigError("eval.overlap_samples must be >= 1000");
  if (clearance_epsilon < 0.0) throw ConfigError("eval.clearance_epsilon must be >= 0");
  if (!(lift_direction.norm() > 0.0)) throw ConfigError("eval.lift_direction must be non-zero");
}

std::optional<FingerContacts> close_fingers(const RigidTransform& pose,
                                            const SceneObject& target,
                                            const GripperModel& gripper,
                                            const EvalParams& params) {
  const OrientedBox& region = gripper.closing_region;
  const double hx = region.half_extents.x();  // half of the finger gap
  const double hy = region.half_extents.y();
  const double hz = region.half_extents.z();
  const Vec3 region_center = region.pose.translation;

  // Gripper local -> target local, composed once for the whole fan.
  const RigidTransform to_target = target.pose.inverse() * pose;
  const int k = params.finger_rays;
  auto lin = [k](int i) { return k == 1 ? 0.0 : 2.0 * i / (k - 1) - 1.0; };

  struct SideContact {
    bool found = false;
    double t = 0.0;
    Vec3 point_local;   // target frame
    Vec3 normal_local;  // target frame, unoriented
  };

  auto scan_side = [&](double side) {
    // Rays start on the finger's inner face and cross the full gap.
    SideContact best;
    const Vec3 dir_local(-side, 0.0, 0.0);
    const Vec3 dir_target = to_target.rotate(dir_local);
    for (int iy = 0; iy < k; ++iy) {
      for (int iz = 0; iz < k; ++iz) {
        const Vec3 origin_local(side * hx, region_center.y() + hy * lin(iy),
                                region_center.z() + hz * lin(iz));
        const Vec3 origin_target = to_target.apply(origin_local);
        const auto hit = target.accel->raycast(origin_target, dir_target, 2.0 * hx);
        if (!hit) continue;
        if (!best.found || hit->distance < best.t) {
          best.found = true;
          best.t = hit->distance;
          best.point_local = origin_target + dir_target * hit->distance;
          best.normal_local = hit->normal;
        }
      }
    }
    return best;
  };

  const SideContact pos = scan_side(+1.0);
  const SideContact neg = scan_side(-1.0);
  if (!pos.found || !neg.found) return std::nullopt;

  const Vec3 closing_world = pose.rotate(gripper.closing_axis.vec());
  auto orient = [&](const Vec3& normal_local, double toward) {
    Vec3 n = target.pose.rotate(normal_local);
    if (n.dot(closing_world) * toward < 0.0) n = -n;
    return UnitVec3::normalized(n);
  };

  FingerContacts contacts;
  contacts.point_pos = target.pose.apply(pos.point_local);
  contacts.point_neg = target.pose.apply(neg.point_local);
  contacts.normal_pos = orient(pos.normal_local, +1.0);
  contacts.normal_neg = orient(neg.normal_local, -1.0);
  contacts.width = (contacts.point_pos - contacts.point_neg).dot(closing_world);
  if (contacts.width < -params.contact_tolerance ||
      contacts.width > gripper.max_opening + params.contact_tolerance) {
    return std::nullopt;
  }
  return contacts;
}

bool antipodal_check(const FingerContacts& contacts,
                     const UnitVec3& closing_axis_world, double mu) {
  const double cone = std::atan(mu);
  const auto angle_to = [](const UnitVec3& n, const Vec3& axis) {
    return std::acos(std::clamp(n.vec().dot(axis), -1.0, 1.0));
  };
  return angle_to(contacts.normal_pos, closing_axis_world.vec()) <= cone &&
         angle_to(contacts.normal_neg, -closing_axis_world.vec()) <= cone;
}

bool lift_sweep_check(const RigidTransform& pose, const SceneObject& target,
                      const Scene& scene, const GripperModel& gripper,
                      const EvalParams& params, std::uint64_t seed,
                      const InteriorSamples* target_samples) {
  InteriorSamples local_samples;
  if (!target_samples) {
    local_samples = build_interior_samples(
        *target.accel, params.overlap_samples,
        mix_seed(seed, 0x11F7ULL, target.instance_id));
    target_samples = &local_samples;
  }
  const Vec3 lift = params.lift_direction.normalized() * params.lift_height;

  const auto bodies = gripper.body_boxes();
  for (int step = 1; step <= params.sweep_steps; ++step) {
    const Vec3 offset = lift * (static_cast<double>(step) / params.sweep_steps);

    RigidTransform target_pose = target.pose;
    target_pose.translation += offset;
    Aabb target_aabb = target.world_aabb;
    target_aabb.min += offset;
    target_aabb.max += offset;

    for (const auto& other : scene.objects()) {
      if (other.instance_id == target.instance_id) continue;

      if (target_aabb.intersects(other.world_aabb)) {
        const double vol = mesh_mesh_overlap(*target_samples, target_pose,
                                             *other.accel, other.pose);
        if (vol > params.clearance_epsilon) return false;
      }

      for (std::size_t b = 0; b < bodies.size(); ++b) {
        OrientedBox body = bodies[b]->transformed(pose);
        body.pose.translation += offset;
        if (!body.world_aabb().intersects(other.world_aabb)) continue;
        const auto overlap = box_mesh_overlap(
            body, *other.accel, other.pose, params.overlap_samples,
            mix_seed(seed, 0x5eebULL + b, other.instance_id));
        if (overlap.overlap_volume > params.clearance_epsilon) return false;
      }
    }
  }
  return true;
}

int evaluate_grasp(const GraspCandidate& candidate, const Scene& scene,
                   const GripperModel& gripper, const EvalParams& params,
                   std::uint64_t seed, const InteriorSamples* target_samples) {
  params.validate();
  const SceneObject& target = scene.object(candidate.instance_id);

  const auto contacts = close_fingers(candidate.pose, target, gripper, params);
  if (!contacts) return 0;

  const UnitVec3 closing_world =
      UnitVec3::normalized(candidate.pose.rotate(gripper.closing_axis.vec()));
  if (!antipodal_check(*contacts, closing_world, params.friction_mu)) return 0;

  if (!lift_sweep_check(candidate.pose, target, scene, gripper, params, seed,
                        target_samples)) {
    return 0;
  }
  return 1;
}

QuasiStaticEvaluator::QuasiStaticEvaluator(EvalParams params, std::uint64_t seed,
                                           const Scene& scene)
    : params_(std::move(params)), seed_(seed) {
  params_.validate();
  for (const auto& obj : scene.objects()) {
    samples_by_instance_.emplace(
        obj.instance_id,
        build_interior_samples(*obj.accel, params_.overlap_samples,
                               mix_seed(seed_, 0x11F7ULL, obj.instance_id)));
  }
}

int QuasiStaticEvaluator::evaluate(const GraspCandidate& candidate,
                                   const Scene& scene,
                                   const GripperModel& gripper) const {
  const auto it = samples_by_instance_.find(candidate.instance_id);
  const InteriorSamples* cached =
      it == samples_by_instance_.end() ? nullptr : &it->second;
  return evaluate_grasp(candidate, scene, gripper, params_, seed_, cached);
}

std::unique_ptr<GraspEvaluator> make_evaluator(const std::string& name,
                                               const EvalParams& params,
                                               std::uint64_t seed,
                                               const Scene& scene) {
  if (name == "quasi-static") {
    return std::make_unique<QuasiStaticEvaluator>(params, seed, scene);
  }
  throw ConfigError("unknown evaluator '" + name + "'");
}

}  // namespace graspgen
