#include "graspgen/config.hpp"

#include <fstream>

#include "graspgen/error.hpp"

namespace graspgen {

using nlohmann::json;

void PipelineConfig::validate() const {
  if (worker_count < 1) throw ConfigError("worker_count must be >= 1");
  if (lattice_classes < 2) throw ConfigError("lattice_classes must be >= 2");
  if (evaluator.empty()) throw ConfigError("evaluator must be non-empty");
  sampler.validate();
  eval.validate();
  refine.validate();
  gripper.validate();
}

namespace {

[[noreturn]] void field_error(const std::string& path, const std::string& what) {
  throw ConfigError("config field '" + path + "': " + what);
}

template <typename T>
void read_field(const json& doc, const std::string& scope,
                const std::string& name, T& out) {
  if (!doc.contains(name)) return;
  try {
    out = doc.at(name).get<T>();
  } catch (const json::exception& e) {
    field_error(scope.empty() ? name : scope + "." + name, e.what());
  }
}

void read_vec3(const json& doc, const std::string& scope,
               const std::string& name, Vec3& out) {
  if (!doc.contains(name)) return;
  std::vector<double> values;
  read_field(doc, scope, name, values);
  if (values.size() != 3) {
    field_error(scope + "." + name, "wants exactly 3 reals");
  }
  out = Vec3(values[0], values[1], values[2]);
}

void reject_unknown(const json& doc, const std::string& scope,
                    std::initializer_list<const char*> known) {
  for (const auto& [key, value] : doc.items()) {
    bool ok = false;
    for (const char* k : known) {
      if (key == k) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      field_error(scope.empty() ? key : scope + "." + key, "unknown field");
    }
  }
}

SamplerParams parse_sampler(const json& doc) {
  SamplerParams p;
  reject_unknown(doc, "sampler",
                 {"num_fps_points", "normal_k", "alpha_levels", "azimuth_steps",
                  "inplane_angles", "standoffs", "iou_pass_threshold",
                  "body_clearance_epsilon", "approach_ray_margin",
                  "surface_points", "overlap_samples"});
  read_field(doc, "sampler", "num_fps_points", p.num_fps_points);
  read_field(doc, "sampler", "normal_k", p.normal_k);
  read_field(doc, "sampler", "alpha_levels", p.alpha_levels);
  read_field(doc, "sampler", "azimuth_steps", p.azimuth_steps);
  read_field(doc, "sampler", "inplane_angles", p.inplane_angles);
  read_field(doc, "sampler", "standoffs", p.standoffs);
  read_field(doc, "sampler", "iou_pass_threshold", p.iou_pass_threshold);
  read_field(doc, "sampler", "body_clearance_epsilon", p.body_clearance_epsilon);
  read_field(doc, "sampler", "approach_ray_margin", p.approach_ray_margin);
  read_field(doc, "sampler", "surface_points", p.surface_points);
  read_field(doc, "sampler", "overlap_samples", p.overlap_samples);
  return p;
}

EvalParams parse_eval(const json& doc) {
  EvalParams p;
  reject_unknown(doc, "eval",
                 {"friction_mu", "lift_height", "sweep_steps", "contact_tolerance",
                  "finger_rays", "overlap_samples", "clearance_epsilon",
                  "lift_direction"});
  read_field(doc, "eval", "friction_mu", p.friction_mu);
  read_field(doc, "eval", "lift_height", p.lift_height);
  read_field(doc, "eval", "sweep_steps", p.sweep_steps);
  read_field(doc, "eval", "contact_tolerance", p.contact_tolerance);
  read_field(doc, "eval", "finger_rays", p.finger_rays);
  read_field(doc, "eval", "overlap_samples", p.overlap_samples);
  read_field(doc, "eval", "clearance_epsilon", p.clearance_epsilon);
  read_vec3(doc, "eval", "lift_direction", p.lift_direction);
  return p;
}

RefineParams parse_refine(const json& doc) {
  RefineParams p;
  reject_unknown(doc, "refine",
                 {"nms_translation", "nms_angle", "top_percent", "collision_dilation"});
  read_field(doc, "refine", "nms_translation", p.nms_translation);
  read_field(doc, "refine", "nms_angle", p.nms_angle);
  read_field(doc, "refine", "top_percent", p.top_percent);
  read_field(doc, "refine", "collision_dilation", p.collision_dilation);
  return p;
}

GripperDims parse_gripper(const json& doc) {
  GripperDims g;
  reject_unknown(doc, "gripper",
                 {"max_opening", "finger_size", "base_size", "tail_size"});
  read_field(doc, "gripper", "max_opening", g.max_opening);
  read_vec3(doc, "gripper", "finger_size", g.finger_size);
  read_vec3(doc, "gripper", "base_size", g.base_size);
  read_vec3(doc, "gripper", "tail_size", g.tail_size);
  return g;
}

}  // namespace

PipelineConfig parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
  reject_unknown(doc, "",
                 {"seed", "worker_count", "lattice_classes", "evaluator",
                  "sampler", "eval", "refine", "gripper"});
  if (!doc.contains("seed")) {
    throw ConfigError("config field 'seed': required (no implicit entropy)");
  }

  PipelineConfig config;
  read_field(doc, "", "seed", config.seed);
  read_field(doc, "", "worker_count", config.worker_count);
  read_field(doc, "", "lattice_classes", config.lattice_classes);
  read_field(doc, "", "evaluator", config.evaluator);
  if (doc.contains("sampler")) config.sampler = parse_sampler(doc.at("sampler"));
  if (doc.contains("eval")) config.eval = parse_eval(doc.at("eval"));
  if (doc.contains("refine")) config.refine = parse_refine(doc.at("refine"));
  if (doc.contains("gripper")) config.gripper = parse_gripper(doc.at("gripper"));
  config.validate();
  return config;
}

PipelineConfig load_config(const std::string& path,
                           std::span<const std::string> overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("unreadable config file: '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config '" + path + "': " + e.what());
  }

  for (const auto& assignment : overrides) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("override '" + assignment + "': expected key.path=value");
    }
    const std::string key = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    json value;
    try {
      value = json::parse(raw);
    } catch (const json::exception&) {
      value = raw;  // unquoted strings pass through verbatim
    }
    json* node = &doc;
    std::size_t begin = 0;
    while (true) {
      const auto dot = key.find('.', begin);
      const std::string part = key.substr(begin, dot - begin);
      if (part.empty()) {
        throw ConfigError("override '" + assignment + "': empty path segment");
      }
      if (dot == std::string::npos) {
        (*node)[part] = value;
        break;
      }
      node = &(*node)[part];
      begin = dot + 1;
    }
  }
  return parse_config(doc);
}

json config_to_json(const PipelineConfig& config) {
  json doc;
  doc["seed"] = config.seed;
  doc["worker_count"] = config.worker_count;
  doc["lattice_classes"] = config.lattice_classes;
  doc["evaluator"] = config.evaluator;
  doc["sampler"] = {
      {"num_fps_points", config.sampler.num_fps_points},
      {"normal_k", config.sampler.normal_k},
      {"alpha_levels", config.sampler.alpha_levels},
      {"azimuth_steps", config.sampler.azimuth_steps},
      {"inplane_angles", config.sampler.inplane_angles},
      {"standoffs", config.sampler.standoffs},
      {"iou_pass_threshold", config.sampler.iou_pass_threshold},
      {"body_clearance_epsilon", config.sampler.body_clearance_epsilon},
      {"approach_ray_margin", config.sampler.approach_ray_margin},
      {"surface_points", config.sampler.surface_points},
      {"overlap_samples", config.sampler.overlap_samples},
  };
  doc["eval"] = {
      {"friction_mu", config.eval.friction_mu},
      {"lift_height", config.eval.lift_height},
      {"sweep_steps", config.eval.sweep_steps},
      {"contact_tolerance", config.eval.contact_tolerance},
      {"finger_rays", config.eval.finger_rays},
      {"overlap_samples", config.eval.overlap_samples},
      {"clearance_epsilon", config.eval.clearance_epsilon},
      {"lift_direction", {config.eval.lift_direction.x(),
                          config.eval.lift_direction.y(),
                          config.eval.lift_direction.z()}},
  };
  doc["refine"] = {
      {"nms_translation", config.refine.nms_translation},
      {"nms_angle", config.refine.nms_angle},
      {"top_percent", config.refine.top_percent},
      {"collision_dilation", config.refine.collision_dilation},
  };
  doc["gripper"] = {
      {"max_opening", config.gripper.max_opening},
      {"finger_size", {config.gripper.finger_size.x(), config.gripper.finger_size.y(),
                       config.gripper.finger_size.z()}},
      {"base_size", {config.gripper.base_size.x(), config.gripper.base_size.y(),
                     config.gripper.base_size.z()}},
      {"tail_size", {config.gripper.tail_size.x(), config.gripper.tail_size.y(),
                     config.gripper.tail_size.z()}},
  };
  return doc;
}

}  // namespace graspgen
