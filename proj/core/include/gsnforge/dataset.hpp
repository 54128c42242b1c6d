#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gsnforge/graph.hpp"

namespace gsnforge {

struct SystemData {
  std::string key;           ///< directory name, e.g. acas_xu
  std::string display_name;  ///< from system.json, defaults to key
  std::string case_kind = "safety";
  std::string domain_text;
  std::string pattern_text;      ///< pattern.gsnp
  std::string groundtruth_text;  ///< groundtruth.gsnt
  std::optional<std::string> plan_text;  ///< plan.json
};

/// Layout: `context.txt`, `predicate_rules.txt`, and one directory per system
/// holding `domain.txt`, `pattern.gsnp`, `groundtruth.gsnt` and optionally
/// `plan.json` and `system.json` ({"display_name", "case_kind"}).
class Dataset {
 public:
  /// Loads every system directory, or only `systems` when non-empty.
  /// Throws DatasetIncomplete naming every missing file.
  static Dataset load(const std::filesystem::path& dir,
                      const std::vector<std::string>& systems = {});

  const std::filesystem::path& root() const { return root_; }
  const std::string& context_text() const { return context_; }
  const std::string& predicate_rules_text() const { return rules_; }

  std::vector<std::string> system_keys() const;
  bool has_system(const std::string& key) const { return systems_.count(key) != 0; }
  const SystemData& system(const std::string& key) const;

  GsnGraph pattern(const std::string& key) const;
  GsnGraph ground_truth(const std::string& key) const;
  /// render_prose of the parsed ground truth.
  std::string ground_truth_prose(const std::string& key) const;

 private:
  std::filesystem::path root_;
  std::string context_;
  std::string rules_;
  std::map<std::string, SystemData> systems_;
};

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace gsnforge
