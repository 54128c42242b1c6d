#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gsnforge/llm_gateway.hpp"

namespace gsnforge {

struct CellKey {
  std::string experiment;  ///< e.g. E3, or E3@deepmind for a LOOCV fold
  std::string system;
  std::string model;
  friend bool operator==(const CellKey&, const CellKey&) = default;
};

/// `<root>/runs/<experiment>/<system>/<model>/transcript.jsonl`; each file is
/// written once per completed cell, atomically, under a store-wide lock.
class TranscriptStore {
 public:
  explicit TranscriptStore(std::filesystem::path root) : root_(std::move(root)) {}

  std::filesystem::path cell_dir(const CellKey& key) const;
  std::filesystem::path transcript_path(const CellKey& key) const;

  /// The stored records when the cell holds exactly `k` of them, all with
  /// `digest`; otherwise nullopt.
  std::optional<std::vector<GenerationRecord>> load_complete(const CellKey& key,
                                                             const std::string& digest,
                                                             int k) const;
  std::vector<GenerationRecord> load(const CellKey& key) const;

  void write_cell(const CellKey& key, const std::vector<GenerationRecord>& records);
  /// Extra per-cell artifact (parsed graphs) written next to the transcript.
  void write_artifact(const CellKey& key, const std::string& name, const std::string& content);

  /// Total records across every transcript under the root.
  std::size_t count_records() const;

 private:
  std::filesystem::path root_;
  mutable std::mutex mu_;
};

/// Filesystem-safe form of a model or experiment name.
std::string sanitize_component(const std::string& name);

}  // namespace gsnforge
