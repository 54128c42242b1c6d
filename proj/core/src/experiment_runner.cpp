#include "gsnforge/experiment_runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <json.hpp>
#include <mutex>
#include <random>
#include <thread>

#include "gsnforge/errors.hpp"
#include "gsnforge/prose_codec.hpp"
#include "gsnforge/text.hpp"

namespace gsnforge {

using nlohmann::json;

std::string_view to_string(ExampleMode mode) {
  return mode == ExampleMode::kFixed ? "fixed" : "loocv";
}

namespace {

[[noreturn]] void bad_matrix(const std::string& msg) { throw Error(ErrorCode::kInvalidMatrix, msg); }

ModelSpec model_from_json(const json& j) {
  ModelSpec m;
  if (j.is_string()) {
    m.model_name = j.get<std::string>();
  } else if (j.is_object()) {
    m.model_name = j.at("model_name").get<std::string>();
    m.temperature = j.value("temperature", m.temperature);
    m.max_tokens = j.value("max_tokens", m.max_tokens);
    m.endpoint = j.value("endpoint", m.endpoint);
    m.timeout_seconds = j.value("timeout_seconds", m.timeout_seconds);
  } else {
    bad_matrix("a model must be a name or an object");
  }
  try {
    m.validate();
  } catch (const Error& e) {
    bad_matrix(e.what());
  }
  return m;
}

}  // namespace

RunMatrix parse_matrix_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    bad_matrix(std::string("matrix is not JSON: ") + e.what());
  }
  if (!j.is_object()) bad_matrix("matrix must be a JSON object");
  RunMatrix m;
  try {
    for (const auto& s : j.at("systems")) m.systems.push_back(s.get<std::string>());
    for (const auto& x : j.at("models")) m.models.push_back(model_from_json(x));
    m.k = j.value("k", 5);
    m.parallelism = j.value("parallelism", 2);
    std::string ex = j.value("example_system", std::string("deepmind"));
    if (ex == "loocv") {
      m.mode = ExampleMode::kLoocv;
      m.example_system.clear();
    } else {
      m.example_system = ex;
    }
    json exps = j.value("experiments", json("all"));
    if (exps.is_string() && exps.get<std::string>() == "all") {
      for (const auto& c : experiment_matrix()) {
        if (m.mode == ExampleMode::kFixed || c.use_example) m.experiments.push_back(c);
      }
    } else {
      for (const auto& e : exps) {
        auto c = find_experiment(e.get<std::string>());
        if (!c) bad_matrix("unknown experiment " + e.get<std::string>());
        m.experiments.push_back(*c);
      }
    }
  } catch (const json::exception& e) {
    bad_matrix(e.what());
  }
  if (m.systems.empty()) bad_matrix("no systems");
  if (m.models.empty()) bad_matrix("no models");
  if (m.experiments.empty()) bad_matrix("no experiments");
  if (m.k < 1) bad_matrix("k must be >= 1");
  if (m.parallelism < 1) bad_matrix("parallelism must be >= 1");
  if (m.mode == ExampleMode::kLoocv) {
    for (const auto& c : m.experiments) {
      if (!c.use_example) bad_matrix(c.id + " has no one-shot example to rotate");
    }
    if (m.systems.size() < 2) bad_matrix("LOOCV needs at least two systems");
  } else if (std::any_of(m.experiments.begin(), m.experiments.end(),
                         [](const auto& c) { return c.use_example; }) &&
             std::find(m.systems.begin(), m.systems.end(), m.example_system) == m.systems.end()) {
    bad_matrix("example system " + m.example_system + " is not among the systems");
  }
  return m;
}

std::string matrix_to_json(const RunMatrix& m) {
  json j;
  j["systems"] = m.systems;
  j["models"] = json::array();
  for (const auto& x : m.models) {
    j["models"].push_back({{"model_name", x.model_name},
                           {"temperature", x.temperature},
                           {"max_tokens", x.max_tokens},
                           {"endpoint", x.endpoint},
                           {"timeout_seconds", x.timeout_seconds}});
  }
  j["experiments"] = json::array();
  for (const auto& c : m.experiments) j["experiments"].push_back(c.id);
  j["k"] = m.k;
  j["example_system"] = m.mode == ExampleMode::kLoocv ? std::string("loocv") : m.example_system;
  j["parallelism"] = m.parallelism;
  return j.dump(2) + "\n";
}

const CellResult* EvaluationReport::find(const std::string& experiment, const std::string& system,
                                         const std::string& model,
                                         const std::optional<std::string>& example) const {
  for (const auto& c : cells) {
    if (c.experiment == experiment && c.system == system && c.model == model &&
        c.example == example) {
      return &c;
    }
  }
  return nullptr;
}

BackendProvider echo_mock(const Dataset& dataset) {
  return [&dataset](const CellKey& cell) -> std::shared_ptr<Backend> {
    std::string text = dataset.system(cell.system).groundtruth_text;
    return std::make_shared<MockBackend>([text](const ChatRequest&) { return text; });
  };
}

BackendProvider perturbing_mock(const Dataset& dataset, unsigned seed) {
  return [&dataset, seed](const CellKey& cell) -> std::shared_ptr<Backend> {
    std::string truth = dataset.ground_truth_prose(cell.system);
    std::string tag = cell.experiment + "|" + cell.system + "|" + cell.model;
    return std::make_shared<MockBackend>([truth, tag, seed](const ChatRequest& req) {
      std::seed_seq seq{seed, static_cast<unsigned>(req.run_index),
                        static_cast<unsigned>(std::hash<std::string>{}(tag))};
      std::mt19937 rng(seq);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      std::string out;
      for (std::string_view line : text::split_lines(truth)) {
        double r = u(rng);
        if (r < 0.08) continue;
        std::string l(line);
        if (r < 0.2) {
          auto colon = l.find(": ");
          if (colon != std::string::npos) l = l.substr(0, colon + 2) + "the system is acceptably safe";
        }
        out += l + "\n";
        if (r > 0.95) out += l + "\n";
      }
      return out;
    });
  };
}

std::vector<CellPlan> plan_cells(const RunMatrix& m) {
  std::vector<CellPlan> out;
  for (const auto& exp : m.experiments) {
    for (const auto& model : m.models) {
      if (m.mode == ExampleMode::kFixed) {
        for (const auto& s : m.systems) {
          if (exp.uses_knowledge() && s == m.example_system) continue;
          CellPlan p;
          p.config = exp;
          p.system = s;
          p.model = &model;
          if (exp.use_example) p.example = m.example_system;
          p.key = {exp.id, s, model.model_name};
          out.push_back(std::move(p));
        }
      } else {
        for (const auto& x : m.systems) {
          for (const auto& s : m.systems) {
            CellPlan p;
            p.config = exp;
            p.system = s;
            p.model = &model;
            p.example = x;
            p.null_cell = s == x;
            p.key = {exp.id + "@" + x, s, model.model_name};
            out.push_back(std::move(p));
          }
        }
      }
    }
  }
  return out;
}

RunScore score_generation(const GenerationRecord& record, const std::string& reference,
                          std::string* scored_text) {
  RunScore rs;
  rs.run_index = record.run_index;
  auto zero = [&](const std::string& why) {
    rs.error = why;
    for (MetricKind k : kTextMetrics) rs.values[k] = 0.0;
    return rs;
  };
  if (record.error) return zero(*record.error);
  std::string candidate;
  try {
    ProseParse parsed = parse_prose(record.raw_text, ProseMode::kLenient);
    rs.anomalies = parsed.anomalies.size();
    if (parsed.graph.elements().empty()) {
      candidate = record.raw_text;
      rs.raw_fallback = true;
    } else {
      try {
        candidate = render_prose(parsed.graph);
      } catch (const Error&) {
        candidate = record.raw_text;
        rs.raw_fallback = true;
      }
    }
  } catch (const Error& e) {
    return zero(e.what());
  }
  if (scored_text != nullptr) *scored_text = candidate;
  for (const MetricValue& v : score_text(candidate, reference)) rs.values[v.metric] = v.value;
  return rs;
}

namespace {

std::map<MetricKind, Aggregate> summarize(const std::vector<RunScore>& runs) {
  std::map<MetricKind, Aggregate> out;
  for (MetricKind k : kTextMetrics) {
    std::vector<double> v;
    for (const auto& r : runs) v.push_back(r.values.at(k));
    out[k] = aggregate(v);
  }
  return out;
}

std::string relative_to(const std::filesystem::path& p, const std::filesystem::path& root) {
  return p.lexically_relative(root).generic_string();
}

}  // namespace

EvaluationReport run_matrix(const RunMatrix& matrix, const Dataset& dataset,
                            const std::filesystem::path& out_dir, const BackendProvider& backends,
                            const RunOptions& options) {
  {
    std::vector<std::string> missing;
    for (const auto& s : matrix.systems) {
      if (!dataset.has_system(s)) missing.push_back(s);
    }
    if (!missing.empty()) {
      std::string list;
      for (const auto& s : missing) list += (list.empty() ? "" : ", ") + s;
      throw Error(ErrorCode::kDatasetIncomplete, "systems not in dataset: " + list);
    }
  }
  std::vector<CellPlan> plans = plan_cells(matrix);
  TranscriptStore store(out_dir);

  std::map<std::string, std::string> references;
  for (const auto& s : matrix.systems) references[s] = dataset.ground_truth_prose(s);

  EvaluationReport report;
  report.mode = matrix.mode;
  report.k = matrix.k;
  for (const auto& c : matrix.experiments) report.experiments.push_back(c.id);
  report.systems = matrix.systems;
  for (const auto& m : matrix.models) report.models.push_back(m.model_name);

  std::vector<std::optional<CellResult>> results(plans.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> fresh{0};
  std::mutex err_mu;
  std::exception_ptr failure;

  auto work = [&](std::size_t i) {
    const CellPlan& p = plans[i];
    CellResult cell;
    cell.experiment = p.config.id;
    cell.system = p.system;
    cell.model = p.model->model_name;
    cell.example = p.example;
    if (p.null_cell) {
      cell.null_cell = true;
      results[i] = std::move(cell);
      return;
    }
    PromptBundle bundle = build_prompts(dataset, p.config, p.system, p.example);
    const std::string digest = request_digest(bundle, *p.model);
    cell.transcript = relative_to(store.transcript_path(p.key), out_dir);
    std::vector<GenerationRecord> records;
    if (auto cached = store.load_complete(p.key, digest, matrix.k)) {
      records = std::move(*cached);
    } else {
      if (options.max_cells != 0 && fresh.fetch_add(1) >= options.max_cells) {
        return;
      }
      std::shared_ptr<Backend> backend = backends(p.key);
      records = generate(*backend, bundle, *p.model, matrix.k, options.gateway);
      for (const auto& r : records) {
        std::string scored;
        score_generation(r, references.at(p.system), &scored);
        store.write_artifact(p.key, "run" + std::to_string(r.run_index) + ".gsnt", scored);
      }
      store.write_cell(p.key, records);
    }
    for (const auto& r : records) cell.runs.push_back(score_generation(r, references.at(p.system)));
    cell.summary = summarize(cell.runs);
    results[i] = std::move(cell);
  };

  auto worker = [&] {
    for (std::size_t i = next++; i < plans.size(); i = next++) {
      try {
        work(i);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int threads = std::max(1, std::min<int>(matrix.parallelism, static_cast<int>(plans.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& r : results) {
    if (r) {
      report.cells.push_back(std::move(*r));
    } else {
      report.partial = true;
    }
  }
  return report;
}

bool verify_medians(const EvaluationReport& report) {
  for (const auto& c : report.cells) {
    if (c.null_cell) continue;
    if (c.runs.empty()) return false;
    for (const auto& [k, agg] : c.summary) {
      std::vector<double> v;
      for (const auto& r : c.runs) v.push_back(r.values.at(k));
      Aggregate again = aggregate(v);
      if (std::abs(again.median - agg.median) > 1e-12 || std::abs(again.stddev - agg.stddev) > 1e-12) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace gsnforge
