#include "graspgen/scores.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <unordered_map>

#include "graspgen/error.hpp"

namespace graspgen {

using nlohmann::json;

namespace {

// Bit-exact center key; centers from one FPS pick share the exact doubles.
struct CenterKey {
  std::uint64_t bits[3];
  bool operator==(const CenterKey&) const = default;
};

struct CenterKeyHash {
  std::size_t operator()(const CenterKey& key) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t b : key.bits) {
      h ^= b;
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};

CenterKey key_of(const Vec3& center) {
  CenterKey key;
  static_assert(sizeof(double) == sizeof(std::uint64_t));
  std::memcpy(&key.bits[0], &center.x(), sizeof(double));
  std::memcpy(&key.bits[1], &center.y(), sizeof(double));
  std::memcpy(&key.bits[2], &center.z(), sizeof(double));
  return key;
}

double sim_score_of(const GraspCandidate& candidate) {
  if (!candidate.sim_score.has_value()) {
    throw InvariantViolation("score aggregation: unevaluated candidate");
  }
  return static_cast<double>(*candidate.sim_score);
}

}  // namespace

std::vector<CenterGroup> group_by_center(const std::vector<GraspCandidate>& candidates) {
  std::vector<CenterGroup> groups;
  std::unordered_map<CenterKey, int, CenterKeyHash> index;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const CenterKey key = key_of(candidates[i].center);
    auto [it, inserted] = index.emplace(key, static_cast<int>(groups.size()));
    if (inserted) {
      CenterGroup group;
      group.k = it->second;
      group.center = candidates[i].center;
      groups.push_back(group);
    }
    groups[it->second].members.push_back(static_cast<int>(i));
  }
  return groups;
}

std::vector<ScorePair> compute_gcs(const std::vector<CenterGroup>& groups,
                                   const std::vector<GraspCandidate>& candidates) {
  std::vector<ScorePair> out(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    double raw = 0.0;
    for (int idx : groups[g].members) raw += sim_score_of(candidates[idx]);
    out[g].raw = raw;
  }
  if (!out.empty()) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& s : out) {
      lo = std::min(lo, s.raw);
      hi = std::max(hi, s.raw);
    }
    for (auto& s : out) {
      s.norm = hi > lo ? (s.raw - lo) / (hi - lo) : 0.0;
    }
  }
  return out;
}

std::vector<AdsCell> compute_ads(const std::vector<CenterGroup>& groups,
                                 const std::vector<GraspCandidate>& candidates,
                                 const DirectionLattice& lattice) {
  // (k, v) -> raw sum; absent cells stay absent and take no part in the
  // min/max normalization.
  std::map<std::pair<int, int>, double> cells;
  for (const auto& group : groups) {
    for (int idx : group.members) {
      const int v = encode_direction(lattice, candidates[idx].approach);
      cells[{group.k, v}] += sim_score_of(candidates[idx]);
    }
  }

  std::vector<AdsCell> out;
  out.reserve(cells.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& [kv, raw] : cells) {
    lo = std::min(lo, raw);
    hi = std::max(hi, raw);
    out.push_back({kv.first, kv.second, raw, 0.0});
  }
  for (auto& cell : out) {
    cell.norm = hi > lo ? (cell.raw - lo) / (hi - lo) : 0.0;
  }
  return out;
}

double compute_igs(const GraspCandidate& candidate) {
  return sim_score_of(candidate);
}

void LabelRecord::validate() const {
  std::map<std::pair<int, int>, bool> ads_cells;
  for (const auto& cell : ads) {
    if (cell.norm < 0.0 || cell.norm > 1.0) {
      throw InvariantViolation("label record: ADS norm outside [0, 1]");
    }
    ads_cells[{cell.k, cell.v}] = true;
  }
  for (const auto& group : groups) {
    if (group.gcs < 0.0 || group.gcs > 1.0) {
      throw InvariantViolation("label record: GCS norm outside [0, 1]");
    }
  }
  for (const auto& row : candidates) {
    if (row.igs < 0.0 || row.igs > 1.0) {
      throw InvariantViolation("label record: IGS outside [0, 1]");
    }
    if (row.collision < 0.0 || row.collision > 1.0) {
      throw InvariantViolation("label record: collision score outside [0, 1]");
    }
    if (!ads_cells.count({row.k, row.v})) {
      throw InvariantViolation("label record: candidate (k, v) missing from ADS table");
    }
  }
}

LabelRecord build_label_record(const std::string& scene_id,
                               const std::string& cloud_path,
                               const std::vector<GraspCandidate>& candidates,
                               const DirectionLattice& lattice) {
  LabelRecord record;
  record.scene_id = scene_id;
  record.cloud_path = cloud_path;

  const auto groups = group_by_center(candidates);
  const auto gcs = compute_gcs(groups, candidates);
  record.ads = compute_ads(groups, candidates, lattice);

  record.groups.reserve(groups.size());
  std::vector<int> group_of(candidates.size(), -1);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    record.groups.push_back({groups[g].k, groups[g].center, gcs[g].raw, gcs[g].norm});
    for (int idx : groups[g].members) group_of[idx] = groups[g].k;
  }

  record.candidates.reserve(candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const auto& c = candidates[i];
    LabelRecord::CandidateRow row;
    row.k = group_of[i];
    row.v = encode_direction(lattice, c.approach);
    row.a = c.inplane_angle;
    row.d = c.depth;
    row.collision = c.collision_score;
    row.igs = compute_igs(c);
    record.candidates.push_back(row);
  }
  record.validate();
  return record;
}

namespace {

json record_to_json(const LabelRecord& record) {
  json doc;
  doc["scene_id"] = record.scene_id;
  doc["cloud"] = record.cloud_path;
  auto& groups = doc["groups"] = json::array();
  for (const auto& g : record.groups) {
    groups.push_back({{"k", g.k},
                      {"center", {g.center.x(), g.center.y(), g.center.z()}},
                      {"gcs_raw", g.gcs_raw},
                      {"gcs", g.gcs}});
  }
  auto& ads = doc["ads"] = json::array();
  for (const auto& cell : record.ads) {
    ads.push_back({{"k", cell.k}, {"v", cell.v}, {"raw", cell.raw}, {"norm", cell.norm}});
  }
  auto& candidates = doc["candidates"] = json::array();
  for (const auto& row : record.candidates) {
    candidates.push_back({{"k", row.k},
                          {"v", row.v},
                          {"a", row.a},
                          {"d", row.d},
                          {"collision", row.collision},
                          {"igs", row.igs}});
  }
  return doc;
}

LabelRecord record_from_json(const json& doc) {
  LabelRecord record;
  record.scene_id = doc.at("scene_id").get<std::string>();
  record.cloud_path = doc.at("cloud").get<std::string>();
  for (const auto& g : doc.at("groups")) {
    LabelRecord::Group group;
    group.k = g.at("k").get<int>();
    const auto center = g.at("center").get<std::vector<double>>();
    if (center.size() != 3) throw InputError("label record: center wants 3 reals");
    group.center = Vec3(center[0], center[1], center[2]);
    group.gcs_raw = g.at("gcs_raw").get<double>();
    group.gcs = g.at("gcs").get<double>();
    record.groups.push_back(group);
  }
  for (const auto& cell : doc.at("ads")) {
    record.ads.push_back({cell.at("k").get<int>(), cell.at("v").get<int>(),
                          cell.at("raw").get<double>(), cell.at("norm").get<double>()});
  }
  for (const auto& row : doc.at("candidates")) {
    record.candidates.push_back({row.at("k").get<int>(), row.at("v").get<int>(),
                                 row.at("a").get<double>(), row.at("d").get<double>(),
                                 row.at("collision").get<double>(),
                                 row.at("igs").get<double>()});
  }
  return record;
}

}  // namespace

void write_label_records(const std::vector<LabelRecord>& records,
                         const std::string& path) {
  for (const auto& record : records) record.validate();
  std::ofstream out(path);
  if (!out) throw InputError("cannot open for write: '" + path + "'");
  for (const auto& record : records) {
    out << record_to_json(record).dump() << '\n';
  }
  if (!out) throw InputError("write failed: '" + path + "'");
}

std::vector<LabelRecord> read_label_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("unreadable file: '" + path + "'");
  std::vector<LabelRecord> records;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      records.push_back(record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw InputError("label file '" + path + "' line " + std::to_string(lineno) +
                       ": " + e.what());
    }
  }
  return records;
}

}  // namespace graspgen
