#include "gsnforge/dataset.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gsnforge/errors.hpp"
#include "gsnforge/predicate_codec.hpp"
#include "gsnforge/prose_codec.hpp"

namespace gsnforge {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, std::string_view content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    out << content;
  }
  fs::rename(tmp, path);
}

Dataset Dataset::load(const fs::path& dir, const std::vector<std::string>& systems) {
  Dataset ds;
  ds.root_ = dir;
  std::vector<std::string> missing;
  auto need = [&](const fs::path& p) {
    if (!fs::is_regular_file(p)) missing.push_back(p.lexically_relative(dir).string());
    return fs::is_regular_file(p);
  };
  if (need(dir / "context.txt")) ds.context_ = read_file(dir / "context.txt");
  if (need(dir / "predicate_rules.txt")) ds.rules_ = read_file(dir / "predicate_rules.txt");

  std::vector<std::string> keys = systems;
  if (keys.empty() && fs::is_directory(dir)) {
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_directory()) keys.push_back(entry.path().filename().string());
    }
    std::sort(keys.begin(), keys.end());
  }
  for (const std::string& key : keys) {
    fs::path sd = dir / key;
    SystemData s;
    s.key = key;
    s.display_name = key;
    if (need(sd / "domain.txt")) s.domain_text = read_file(sd / "domain.txt");
    if (need(sd / "pattern.gsnp")) s.pattern_text = read_file(sd / "pattern.gsnp");
    if (need(sd / "groundtruth.gsnt")) s.groundtruth_text = read_file(sd / "groundtruth.gsnt");
    if (fs::is_regular_file(sd / "plan.json")) s.plan_text = read_file(sd / "plan.json");
    if (fs::is_regular_file(sd / "system.json")) {
      try {
        auto j = nlohmann::json::parse(read_file(sd / "system.json"));
        s.display_name = j.value("display_name", key);
        s.case_kind = j.value("case_kind", std::string("safety"));
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::kDatasetIncomplete, key + "/system.json: " + e.what());
      }
    }
    ds.systems_.emplace(key, std::move(s));
  }
  if (!missing.empty()) {
    std::string list;
    for (const std::string& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw Error(ErrorCode::kDatasetIncomplete, "missing " + list);
  }
  return ds;
}

std::vector<std::string> Dataset::system_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, _] : systems_) out.push_back(k);
  return out;
}

const SystemData& Dataset::system(const std::string& key) const {
  auto it = systems_.find(key);
  if (it == systems_.end()) {
    throw Error(ErrorCode::kDatasetIncomplete, "unknown system '" + key + "'");
  }
  return it->second;
}

GsnGraph Dataset::pattern(const std::string& key) const {
  return parse_document(system(key).pattern_text).graph;
}

GsnGraph Dataset::ground_truth(const std::string& key) const {
  return parse_prose(system(key).groundtruth_text, ProseMode::kStrict).graph;
}

std::string Dataset::ground_truth_prose(const std::string& key) const {
  return render_prose(ground_truth(key));
}

}  // namespace gsnforge
