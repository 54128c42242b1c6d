#include "gsnforge/transcript_store.hpp"

#include "gsnforge/dataset.hpp"
#include "gsnforge/text.hpp"

namespace gsnforge {

namespace fs = std::filesystem;

std::string sanitize_component(const std::string& name) {
  std::string out;
  for (char c : name) {
    bool keep = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                c == '-' || c == '_' || c == '.' || c == '@';
    out.push_back(keep ? c : '_');
  }
  if (out.empty() || out == "." || out == "..") out = "_" + out;
  return out;
}

fs::path TranscriptStore::cell_dir(const CellKey& key) const {
  return root_ / "runs" / sanitize_component(key.experiment) / sanitize_component(key.system) /
         sanitize_component(key.model);
}

fs::path TranscriptStore::transcript_path(const CellKey& key) const {
  return cell_dir(key) / "transcript.jsonl";
}

std::vector<GenerationRecord> TranscriptStore::load(const CellKey& key) const {
  std::lock_guard lock(mu_);
  fs::path p = transcript_path(key);
  std::vector<GenerationRecord> out;
  if (!fs::is_regular_file(p)) return out;
  std::string content = read_file(p);
  for (std::string_view line : text::split_lines(content)) {
    if (text::trim(line).empty()) continue;
    out.push_back(record_from_json(line));
  }
  return out;
}

std::optional<std::vector<GenerationRecord>> TranscriptStore::load_complete(
    const CellKey& key, const std::string& digest, int k) const {
  std::vector<GenerationRecord> recs;
  try {
    recs = load(key);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (static_cast<int>(recs.size()) != k) return std::nullopt;
  for (int i = 0; i < k; ++i) {
    const auto& r = recs[static_cast<std::size_t>(i)];
    if (r.request_digest != digest || r.run_index != i + 1) return std::nullopt;
  }
  return recs;
}

void TranscriptStore::write_cell(const CellKey& key, const std::vector<GenerationRecord>& records) {
  std::string content;
  for (const auto& r : records) content += record_to_json(r) + "\n";
  std::lock_guard lock(mu_);
  write_file(transcript_path(key), content);
}

void TranscriptStore::write_artifact(const CellKey& key, const std::string& name,
                                     const std::string& content) {
  std::lock_guard lock(mu_);
  write_file(cell_dir(key) / sanitize_component(name), content);
}

std::size_t TranscriptStore::count_records() const {
  std::lock_guard lock(mu_);
  std::size_t n = 0;
  fs::path runs = root_ / "runs";
  if (!fs::is_directory(runs)) return 0;
  for (const auto& entry : fs::recursive_directory_iterator(runs)) {
    if (!entry.is_regular_file() || entry.path().filename() != "transcript.jsonl") continue;
    std::string content = read_file(entry.path());
    for (std::string_view line : text::split_lines(content)) {
      if (!text::trim(line).empty()) ++n;
    }
  }
  return n;
}

}  // namespace gsnforge
