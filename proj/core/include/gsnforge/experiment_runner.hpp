#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gsnforge/dataset.hpp"
#include "gsnforge/llm_gateway.hpp"
#include "gsnforge/metrics.hpp"
#include "gsnforge/prompt_engine.hpp"
#include "gsnforge/transcript_store.hpp"

namespace gsnforge {

enum class ExampleMode { kFixed, kLoocv };

struct RunMatrix {
  std::vector<std::string> systems;
  std::vector<ModelSpec> models;
  std::vector<ExperimentConfig> experiments;
  int k = 5;
  ExampleMode mode = ExampleMode::kFixed;
  std::string example_system = "deepmind";  ///< fixed mode only
  int parallelism = 2;                       ///< concurrent cells

  friend bool operator==(const RunMatrix&, const RunMatrix&) = default;
};

/// {"systems": [...], "models": ["gpt-4o" | {"model_name", ...}],
///  "experiments": ["E1", ...] | "all", "k": 5,
///  "example_system": "<key>" | "loocv", "parallelism": 2}
/// Throws InvalidMatrix.
RunMatrix parse_matrix_json(std::string_view text);
std::string matrix_to_json(const RunMatrix& matrix);

struct RunScore {
  int run_index = 0;
  std::map<MetricKind, double> values;
  std::optional<std::string> error;
  std::size_t anomalies = 0;
  bool raw_fallback = false;  ///< parsed graph could not be rendered; raw text scored
  friend bool operator==(const RunScore&, const RunScore&) = default;
};

struct CellResult {
  std::string experiment;
  std::string system;
  std::string model;
  std::optional<std::string> example;
  bool null_cell = false;
  std::string transcript;  ///< path relative to the output root
  std::vector<RunScore> runs;
  std::map<MetricKind, Aggregate> summary;
  friend bool operator==(const CellResult&, const CellResult&) = default;
};

struct EvaluationReport {
  ExampleMode mode = ExampleMode::kFixed;
  int k = 5;
  bool partial = false;
  std::vector<std::string> experiments;  ///< column order
  std::vector<std::string> systems;
  std::vector<std::string> models;
  std::vector<CellResult> cells;
  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;

  const CellResult* find(const std::string& experiment, const std::string& system,
                         const std::string& model,
                         const std::optional<std::string>& example = std::nullopt) const;
};

/// Chooses the backend for a cell.
using BackendProvider = std::function<std::shared_ptr<Backend>(const CellKey& cell)>;

/// Echoes each target system's ground-truth prose.
BackendProvider echo_mock(const Dataset& dataset);
/// Deterministic per-run edits of the ground truth (dropped, reworded and
/// duplicated lines), so runs differ.
BackendProvider perturbing_mock(const Dataset& dataset, unsigned seed = 7);

struct RunOptions {
  GatewayOptions gateway;
  /// Stop after this many freshly generated cells (0 = no limit).
  std::size_t max_cells = 0;
};

/// A planned cell before generation.
struct CellPlan {
  CellKey key;
  ExperimentConfig config;
  std::string system;
  std::optional<std::string> example;
  const ModelSpec* model = nullptr;
  bool null_cell = false;
};

std::vector<CellPlan> plan_cells(const RunMatrix& matrix);

/// Scores one generation against the reference prose.
RunScore score_generation(const GenerationRecord& record, const std::string& reference_prose,
                          std::string* scored_text = nullptr);

EvaluationReport run_matrix(const RunMatrix& matrix, const Dataset& dataset,
                            const std::filesystem::path& out_dir, const BackendProvider& backends,
                            const RunOptions& options = {});

/// Every stored median and sigma equals a recomputation from its runs.
bool verify_medians(const EvaluationReport& report);

std::string report_to_json(const EvaluationReport& report);
EvaluationReport report_from_json(std::string_view text);
std::string report_to_csv(const EvaluationReport& report);
std::string report_to_markdown(const EvaluationReport& report);

/// Writes report.json, report.csv and report.md under `out_dir`.
void emit_report(const EvaluationReport& report, const std::filesystem::path& out_dir);

std::string_view to_string(ExampleMode mode);

}  // namespace gsnforge
