// Batch CLI wiring the grasp pipeline stages together: sample -> annotate ->
// aggregate -> refine, plus cloud/lattice dumps and a demo scene generator.
// Exit codes: 0 ok, 2 config error, 3 input-format error, 4 invariant
// violation, 1 anything else.

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <numbers>

#include "graspgen/cloud.hpp"
#include "graspgen/config.hpp"
#include "graspgen/error.hpp"
#include "graspgen/lattice.hpp"
#include "graspgen/pipeline.hpp"
#include "graspgen/primitives.hpp"
#include "graspgen/refine.hpp"
#include "graspgen/scene.hpp"

namespace {

using namespace graspgen;
using nlohmann::json;

bool verbose_logging() {
  const char* level = std::getenv("GRASPGEN_LOG");
  return level != nullptr && std::string(level) != "quiet";
}

void log_line(const std::string& message) {
  if (verbose_logging()) std::cerr << "[graspgen] " << message << "\n";
}

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
};

PipelineConfig load(const CommonArgs& args) {
  return load_config(args.config_path, args.overrides);
}

int run_sample(const std::string& scene_path, const CommonArgs& args,
               const std::string& out_path) {
  const PipelineConfig config = load(args);
  const Scene scene = Scene::load(scene_path);
  std::vector<std::pair<int, int>> counts;
  const auto candidates = sample_scene(scene, config, &counts);
  write_candidates_jsonl(candidates, out_path);
  for (const auto& [instance, count] : counts) {
    std::cout << "instance " << instance << ": " << count << " candidates\n";
  }
  std::cout << "total: " << candidates.size() << " candidates -> " << out_path
            << "\n";
  return 0;
}

int run_annotate(const std::string& candidates_path, const std::string& scene_path,
                 const CommonArgs& args, const std::string& out_path) {
  const PipelineConfig config = load(args);
  const Scene scene = Scene::load(scene_path);
  auto candidates = read_candidates_jsonl(candidates_path);
  annotate_candidates(candidates, scene, config);
  write_candidates_jsonl(candidates, out_path);
  long positives = 0;
  for (const auto& c : candidates) positives += c.sim_score.value_or(0);
  std::cout << "annotated " << candidates.size() << " candidates, " << positives
            << " successful -> " << out_path << "\n";
  return 0;
}

int run_aggregate(const std::string& evaluated_path, const std::string& cloud_path,
                  const std::string& out_path, std::string scene_id,
                  const CommonArgs& args) {
  PipelineConfig config;
  if (!args.config_path.empty()) {
    config = load(args);
  } else {
    config.seed = 0;  // aggregation itself draws no randomness
  }
  if (scene_id.empty()) {
    scene_id = std::filesystem::path(evaluated_path).stem().string();
  }
  const auto candidates = read_candidates_jsonl(evaluated_path);
  const LabelRecord record =
      aggregate_labels(scene_id, cloud_path, candidates, config);
  write_label_records({record}, out_path);
  std::cout << "labels: " << record.groups.size() << " groups, "
            << record.ads.size() << " direction cells, "
            << record.candidates.size() << " candidates -> " << out_path << "\n";
  return 0;
}

int run_refine(const std::string& grasps_path, const std::string& cloud_path,
               const CommonArgs& args, const std::string& out_path,
               const std::string& markers_path) {
  const PipelineConfig config = load(args);
  const auto grasps = read_grasps_jsonl(grasps_path);
  const PointCloud cloud = load_ply_cloud(cloud_path);
  const auto refined = refine_grasps(grasps, cloud, config);
  write_grasps_jsonl(refined, out_path);
  if (!markers_path.empty()) {
    save_ply_cloud(grasp_markers(refined), markers_path);
  }
  std::cout << "refined " << grasps.size() << " -> " << refined.size()
            << " grasps -> " << out_path << "\n";
  return 0;
}

int run_eval_ap(const std::string& outcomes_path, const std::string& out_path) {
  std::ifstream in(outcomes_path);
  if (!in) throw InputError("unreadable file: '" + outcomes_path + "'");
  std::vector<bool> outcomes;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      outcomes.push_back(json::parse(line).at("success").get<bool>());
    } catch (const json::exception& e) {
      throw InputError("outcomes '" + outcomes_path + "' line " +
                       std::to_string(lineno) + ": " + e.what());
    }
  }
  const double ap = average_precision(outcomes);
  const long successes =
      std::count(outcomes.begin(), outcomes.end(), true);
  std::cout << "AP: " << ap << " (" << successes << "/" << outcomes.size()
            << ")\n";
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw InputError("cannot open for write: '" + out_path + "'");
    json doc;
    doc["ap"] = ap;
    doc["successes"] = successes;
    doc["total"] = outcomes.size();
    out << doc.dump() << "\n";
  }
  return 0;
}

int run_cloud(const std::string& scene_path, const CommonArgs& args,
              const std::string& out_path, bool ascii) {
  const PipelineConfig config = load(args);
  const Scene scene = Scene::load(scene_path);
  const PointCloud cloud = build_scene_cloud(scene, config);
  save_ply_cloud(cloud, out_path, !ascii);
  std::cout << "cloud: " << cloud.size() << " points -> " << out_path << "\n";
  return 0;
}

int run_lattice_dump(int classes, const std::string& out_path) {
  const DirectionLattice lattice = build_lattice(classes);
  PointCloud cloud;
  for (const auto& v : lattice.vectors) {
    cloud.points.push_back(v);
    cloud.normals.push_back(v);
  }
  save_ply_cloud(cloud, out_path, /*binary=*/false);
  std::cout << "lattice: " << classes << " classes -> " << out_path << "\n";
  return 0;
}

// Writes a ready-to-run desk scene: three primitive meshes, a scene file,
// and a default config.
int run_demo_scene(const std::string& out_dir, std::uint64_t seed) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  const fs::path dir(out_dir);

  save_obj(make_box_mesh(Vec3(0.04, 0.04, 0.04)), (dir / "box.obj").string());
  save_obj(make_cylinder_mesh(0.025, 0.06, 48), (dir / "cylinder.obj").string());
  save_obj(make_icosphere_mesh(0.03, 2), (dir / "sphere.obj").string());

  json scene;
  auto object = [](const std::string& mesh, double x, double y, double z, int id) {
    return json{{"mesh", mesh},
                {"pose",
                 {{"rotation", {1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0}},
                  {"translation", {x, y, z}}}},
                {"scale", 1.0},
                {"instance_id", id}};
  };
  scene["objects"] = {object("box.obj", 0.0, 0.0, 0.02, 0),
                      object("cylinder.obj", 0.15, 0.0, 0.03, 1),
                      object("sphere.obj", 0.0, 0.15, 0.03, 2)};
  {
    std::ofstream out(dir / "scene.json");
    out << scene.dump(2) << "\n";
  }

  PipelineConfig config;
  config.seed = seed;
  config.worker_count = 4;
  {
    std::ofstream out(dir / "config.json");
    out << config_to_json(config).dump(2) << "\n";
  }
  std::cout << "demo scene -> " << out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"6-DOF two-finger grasp candidate generation, annotation, "
               "scoring, and refinement over meshes and point clouds"};
  app.require_subcommand(1);

  CommonArgs common;
  std::string scene_path, candidates_path, cloud_path, out_path, markers_path;
  std::string scene_id, outcomes_path, ap_out, demo_dir;
  std::uint64_t demo_seed = 20240613;
  int lattice_classes = 800;
  bool cloud_ascii = false;

  auto add_config = [&](CLI::App* cmd, bool required = true) {
    auto* opt = cmd->add_option("config", common.config_path, "pipeline config JSON");
    if (required) opt->required();
    cmd->add_option("--set", common.overrides,
                    "override config fields, e.g. --set sampler.num_fps_points=32");
  };

  auto* sample = app.add_subcommand("sample", "generate collision-gated candidates");
  sample->add_option("scene", scene_path, "scene JSON")->required();
  add_config(sample);
  sample->add_option("out", out_path, "output candidates JSONL")->required();

  auto* annotate = app.add_subcommand("annotate", "evaluate candidates to binary scores");
  annotate->add_option("candidates", candidates_path, "candidates JSONL")->required();
  annotate->add_option("scene", scene_path, "scene JSON")->required();
  add_config(annotate);
  annotate->add_option("out", out_path, "output evaluated JSONL")->required();

  auto* aggregate = app.add_subcommand("aggregate", "build center/direction/grasp scores");
  aggregate->add_option("evaluated", candidates_path, "evaluated candidates JSONL")->required();
  aggregate->add_option("cloud", cloud_path, "labeled cloud PLY (referenced in the record)")->required();
  aggregate->add_option("out", out_path, "output labels JSONL")->required();
  aggregate->add_option("--scene-id", scene_id, "scene id (default: input stem)");
  aggregate->add_option("--config", common.config_path, "pipeline config JSON");
  aggregate->add_option("--set", common.overrides, "config overrides");

  auto* refine = app.add_subcommand("refine", "assign instances, filter, NMS, top cut");
  refine->add_option("grasps", candidates_path, "grasps JSONL")->required();
  refine->add_option("cloud", cloud_path, "labeled cloud PLY")->required();
  add_config(refine);
  refine->add_option("out", out_path, "output refined JSONL")->required();
  refine->add_option("--markers", markers_path, "optional marker cloud PLY");

  auto* eval_ap = app.add_subcommand("eval-ap", "average precision of outcome list");
  eval_ap->add_option("outcomes", outcomes_path, "outcomes JSONL ({\"success\": bool})")->required();
  eval_ap->add_option("out", ap_out, "optional JSON result path");

  auto* cloud_cmd = app.add_subcommand("cloud", "sample a labeled scene cloud");
  cloud_cmd->add_option("scene", scene_path, "scene JSON")->required();
  add_config(cloud_cmd);
  cloud_cmd->add_option("out", out_path, "output PLY")->required();
  cloud_cmd->add_flag("--ascii", cloud_ascii, "write ASCII PLY instead of binary");

  auto* lattice_dump = app.add_subcommand("lattice-dump", "write the direction lattice as PLY");
  lattice_dump->add_option("out", out_path, "output PLY")->required();
  lattice_dump->add_option("--classes", lattice_classes, "class count (default 800)");

  auto* demo = app.add_subcommand("demo-scene", "write a runnable 3-primitive desk scene");
  demo->add_option("dir", demo_dir, "output directory")->required();
  demo->add_option("--seed", demo_seed, "seed to store in the generated config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (sample->parsed()) return run_sample(scene_path, common, out_path);
    if (annotate->parsed())
      return run_annotate(candidates_path, scene_path, common, out_path);
    if (aggregate->parsed())
      return run_aggregate(candidates_path, cloud_path, out_path, scene_id, common);
    if (refine->parsed())
      return run_refine(candidates_path, cloud_path, common, out_path, markers_path);
    if (eval_ap->parsed()) return run_eval_ap(outcomes_path, ap_out);
    if (cloud_cmd->parsed()) return run_cloud(scene_path, common, out_path, cloud_ascii);
    if (lattice_dump->parsed()) return run_lattice_dump(lattice_classes, out_path);
    if (demo->parsed()) return run_demo_scene(demo_dir, demo_seed);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const std::out_of_range& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  log_line("no subcommand executed");
  return 1;
}
