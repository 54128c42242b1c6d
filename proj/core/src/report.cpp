#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <set>

#include "gsnforge/errors.hpp"
#include "gsnforge/experiment_runner.hpp"

namespace gsnforge {

using nlohmann::json;

namespace {

json cell_to_json(const CellResult& c) {
  json j = {{"experiment", c.experiment},
            {"system", c.system},
            {"model", c.model},
            {"example", c.example ? json(*c.example) : json(nullptr)},
            {"null", c.null_cell},
            {"transcript", c.transcript}};
  j["runs"] = json::array();
  for (const auto& r : c.runs) {
    json values = json::object();
    for (const auto& [k, v] : r.values) values[std::string(to_string(k))] = v;
    j["runs"].push_back({{"run_index", r.run_index},
                         {"values", values},
                         {"error", r.error ? json(*r.error) : json(nullptr)},
                         {"anomalies", r.anomalies},
                         {"raw_fallback", r.raw_fallback}});
  }
  j["summary"] = json::object();
  for (const auto& [k, a] : c.summary) {
    j["summary"][std::string(to_string(k))] = {{"median", a.median}, {"stddev", a.stddev}};
  }
  return j;
}

MetricKind metric_key(const std::string& name) {
  auto k = parse_metric(name);
  if (!k) throw Error(ErrorCode::kIo, "unknown metric '" + name + "' in report");
  return *k;
}

CellResult cell_from_json(const json& j) {
  CellResult c;
  c.experiment = j.at("experiment").get<std::string>();
  c.system = j.at("system").get<std::string>();
  c.model = j.at("model").get<std::string>();
  if (j.at("example").is_string()) c.example = j["example"].get<std::string>();
  c.null_cell = j.at("null").get<bool>();
  c.transcript = j.at("transcript").get<std::string>();
  for (const auto& r : j.at("runs")) {
    RunScore rs;
    rs.run_index = r.at("run_index").get<int>();
    for (const auto& [name, v] : r.at("values").items()) rs.values[metric_key(name)] = v.get<double>();
    if (r.at("error").is_string()) rs.error = r["error"].get<std::string>();
    rs.anomalies = r.at("anomalies").get<std::size_t>();
    rs.raw_fallback = r.at("raw_fallback").get<bool>();
    c.runs.push_back(std::move(rs));
  }
  for (const auto& [name, a] : j.at("summary").items()) {
    c.summary[metric_key(name)] = {a.at("median").get<double>(), a.at("stddev").get<double>()};
  }
  return c;
}

std::string num(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return ec == std::errc() ? std::string(buf, end) : std::to_string(v);
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string_view metric_title(MetricKind k) {
  switch (k) {
    case MetricKind::kExactMatch: return "Exact match";
    case MetricKind::kBleu: return "BLEU";
    case MetricKind::kCosineSim: return "Cosine similarity";
    case MetricKind::kKendallTau: return "Kendall tau";
  }
  return "?";
}

// One markdown row; cells without a value print their placeholder text.
struct MdCell {
  std::optional<Aggregate> value;
  std::string placeholder;
};

std::string md_row(const std::vector<std::string>& lead, const std::vector<MdCell>& cells) {
  double best = -1.0;
  for (const auto& c : cells) {
    if (c.value) best = std::max(best, c.value->median);
  }
  std::string out = "|";
  for (const auto& l : lead) out += " " + l + " |";
  for (const auto& c : cells) {
    if (!c.value) {
      out += " " + c.placeholder + " |";
      continue;
    }
    std::string v = fixed2(c.value->median);
    if (std::abs(c.value->median - best) <= 1e-12) v = "**" + v + "**";
    out += " " + v + " ±" + fixed2(c.value->stddev) + " |";
  }
  return out + "\n";
}

std::string md_header(const std::vector<std::string>& cols) {
  std::string out = "|";
  std::string rule = "|";
  for (const auto& c : cols) {
    out += " " + c + " |";
    rule += "---|";
  }
  return out + "\n" + rule + "\n";
}

MdCell md_cell(const CellResult* c, MetricKind k) {
  if (c == nullptr) return {std::nullopt, "n/a"};
  if (c->null_cell) return {std::nullopt, "Null"};
  auto it = c->summary.find(k);
  if (it == c->summary.end()) return {std::nullopt, "n/a"};
  return {it->second, ""};
}

}  // namespace

std::string report_to_json(const EvaluationReport& r) {
  json j = {{"mode", std::string(to_string(r.mode))},
            {"k", r.k},
            {"partial", r.partial},
            {"experiments", r.experiments},
            {"systems", r.systems},
            {"models", r.models}};
  j["cells"] = json::array();
  for (const auto& c : r.cells) j["cells"].push_back(cell_to_json(c));
  return j.dump(2) + "\n";
}

EvaluationReport report_from_json(std::string_view text) {
  try {
    json j = json::parse(text);
    EvaluationReport r;
    std::string mode = j.at("mode").get<std::string>();
    if (mode != "fixed" && mode != "loocv") throw Error(ErrorCode::kIo, "bad report mode " + mode);
    r.mode = mode == "fixed" ? ExampleMode::kFixed : ExampleMode::kLoocv;
    r.k = j.at("k").get<int>();
    r.partial = j.at("partial").get<bool>();
    r.experiments = j.at("experiments").get<std::vector<std::string>>();
    r.systems = j.at("systems").get<std::vector<std::string>>();
    r.models = j.at("models").get<std::vector<std::string>>();
    for (const auto& c : j.at("cells")) r.cells.push_back(cell_from_json(c));
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kIo, std::string("bad report JSON: ") + e.what());
  }
}

std::string report_to_csv(const EvaluationReport& r) {
  std::string out = "experiment,example,system,model,metric,median,stddev,runs,errors\n";
  for (const auto& c : r.cells) {
    for (MetricKind k : kTextMetrics) {
      out += csv_field(c.experiment) + "," + csv_field(c.example.value_or("")) + "," +
             csv_field(c.system) + "," + csv_field(c.model) + "," + std::string(to_string(k)) + ",";
      if (c.null_cell) {
        out += "Null,Null,,0\n";
        continue;
      }
      const Aggregate& a = c.summary.at(k);
      std::string runs;
      std::size_t errors = 0;
      for (const auto& run : c.runs) {
        runs += (runs.empty() ? "" : ";") + num(run.values.at(k));
        if (run.error) ++errors;
      }
      out += num(a.median) + "," + num(a.stddev) + "," + runs + "," + std::to_string(errors) + "\n";
    }
  }
  return out;
}

std::string report_to_markdown(const EvaluationReport& r) {
  std::string out = "# Evaluation report\n\nmode: " + std::string(to_string(r.mode)) +
                    ", k = " + std::to_string(r.k) + (r.partial ? ", partial" : "") +
                    "\n\nCells show the median over runs, then the population standard deviation. "
                    "Bold marks each row's maximum.\n";
  if (r.mode == ExampleMode::kFixed) {
    std::vector<std::string> without;
    std::vector<std::string> with;
    for (const auto& e : r.experiments) {
      auto cfg = find_experiment(e);
      (cfg && !cfg->uses_knowledge() ? without : with).push_back(e);
    }
    for (MetricKind k : kTextMetrics) {
      out += "\n## " + std::string(metric_title(k)) + "\n";
      for (const auto* group : {&without, &with}) {
        if (group->empty()) continue;
        out += std::string("\n### ") +
               (group == &without ? "Without SE knowledge" : "With SE knowledge") + "\n\n";
        std::vector<std::string> cols = {"System", "Model"};
        cols.insert(cols.end(), group->begin(), group->end());
        std::string body;
        for (const auto& s : r.systems) {
          for (const auto& m : r.models) {
            std::vector<MdCell> cells;
            bool any = false;
            for (const auto& e : *group) {
              const CellResult* c = nullptr;
              for (const auto& cell : r.cells) {
                if (cell.experiment == e && cell.system == s && cell.model == m) c = &cell;
              }
              any = any || c != nullptr;
              cells.push_back(md_cell(c, k));
            }
            if (any) body += md_row({s, m}, cells);
          }
        }
        out += md_header(cols) + body;
      }
    }
  } else {
    for (MetricKind k : kTextMetrics) {
      out += "\n## " + std::string(metric_title(k)) + "\n";
      for (const auto& m : r.models) {
        for (const auto& e : r.experiments) {
          out += "\n### " + m + ", " + e + "\n\nRows are target systems; columns are the one-shot "
                 "example system.\n\n";
          std::vector<std::string> cols = {"System"};
          cols.insert(cols.end(), r.systems.begin(), r.systems.end());
          out += md_header(cols);
          for (const auto& s : r.systems) {
            std::vector<MdCell> cells;
            for (const auto& x : r.systems) cells.push_back(md_cell(r.find(e, s, m, x), k));
            out += md_row({s}, cells);
          }
        }
      }
    }
  }
  return out;
}

void emit_report(const EvaluationReport& report, const std::filesystem::path& out_dir) {
  write_file(out_dir / "report.json", report_to_json(report));
  write_file(out_dir / "report.csv", report_to_csv(report));
  write_file(out_dir / "report.md", report_to_markdown(report));
}

}  // namespace gsnforge
