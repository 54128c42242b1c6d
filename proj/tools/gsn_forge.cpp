#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "gsnforge/binding_plan.hpp"
#include "gsnforge/dataset.hpp"
#include "gsnforge/errors.hpp"
#include "gsnforge/experiment_runner.hpp"
#include "gsnforge/instantiator.hpp"
#include "gsnforge/metrics.hpp"
#include "gsnforge/predicate_codec.hpp"
#include "gsnforge/prompt_engine.hpp"
#include "gsnforge/prose_codec.hpp"
#include "gsnforge/validator.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gsnforge;

namespace {

bool is_prose_path(const fs::path& p) {
  auto ext = p.extension().string();
  return ext == ".gsnt" || ext == ".txt" || ext == ".prose";
}

GsnGraph load_graph(const fs::path& p, bool lenient = false) {
  std::string src = read_file(p);
  if (is_prose_path(p)) {
    ProseParse parsed = parse_prose(src, lenient ? ProseMode::kLenient : ProseMode::kStrict);
    for (const auto& a : parsed.anomalies) {
      std::cerr << p.string() << ":" << a.line << ": " << to_string(a.kind) << ": " << a.detail
                << "\n";
    }
    return std::move(parsed.graph);
  }
  PredicateParse parsed = parse_document(src);
  for (const auto& w : parsed.warnings) {
    std::cerr << p.string() << ":" << w.line << ": warning: " << w.message << "\n";
  }
  return std::move(parsed.graph);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_file(out, text);
  }
}

std::string render_as(const GsnGraph& g, const std::string& format) {
  if (format == "dot") return render_dot(g);
  if (format == "prose") return render_prose(g);
  if (format == "predicate") return serialize_predicates(g);
  throw Error(ErrorCode::kInvalidArgument, "unknown format '" + format + "'");
}

json metric_json(const MetricValue& v) {
  return {{"metric", std::string(to_string(v.metric))}, {"value", v.value}, {"details", v.details}};
}

std::vector<double> read_ratings(const fs::path& p) {
  std::vector<double> out;
  std::string src = read_file(p);
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    try {
      std::size_t used = 0;
      double v = std::stod(tok, &used);
      if (used == tok.size()) out.push_back(v);
    } catch (const std::exception&) {
      // header cells
    }
    tok.clear();
  };
  for (char c : src) {
    if (c == ',' || c == ';' || c == '\n' || c == '\r' || c == '\t' || c == ' ') {
      flush();
    } else {
      tok.push_back(c);
    }
  }
  flush();
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gsn-forge: GSN assurance case pattern tooling"};
  app.require_subcommand(1);
  int exit_code = 0;

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "Check a pattern or case against the GSN rules");
  std::string v_file;
  std::string v_profile = "either";
  bool v_json = false;
  validate_cmd->add_option("file", v_file, "predicate (.gsnp) or prose (.gsnt) file")->required();
  validate_cmd->add_option("--profile", v_profile, "case | pattern | either");
  validate_cmd->add_flag("--json", v_json, "machine-readable output");
  validate_cmd->callback([&] {
    auto profile = parse_profile(v_profile);
    if (!profile) throw Error(ErrorCode::kInvalidArgument, "unknown profile '" + v_profile + "'");
    GsnGraph g = load_graph(v_file);
    auto diags = validate(g, *profile);
    if (v_json) {
      json arr = json::array();
      for (const auto& d : diags) {
        arr.push_back({{"rule", d.rule},
                       {"severity", std::string(to_string(d.severity))},
                       {"subject", d.subject},
                       {"message", d.message}});
      }
      std::cout << arr.dump(2) << "\n";
    } else {
      for (const auto& d : diags) {
        std::cout << d.rule << " " << to_string(d.severity) << " " << d.subject << ": "
                  << d.message << "\n";
      }
      std::cout << error_count(diags) << " error(s), " << diags.size() - error_count(diags)
                << " warning(s)\n";
    }
    exit_code = has_errors(diags) ? 1 : 0;
  });

  // instantiate
  auto* inst_cmd = app.add_subcommand("instantiate", "Instantiate a pattern with a binding plan");
  std::string i_pattern, i_plan, i_out, i_format = "prose";
  inst_cmd->add_option("pattern", i_pattern, "pattern predicate file")->required();
  inst_cmd->add_option("--plan", i_plan, "binding plan JSON")->required();
  inst_cmd->add_option("--out", i_out, "output file (stdout when omitted)");
  inst_cmd->add_option("--format", i_format, "prose | predicate | dot");
  inst_cmd->callback([&] {
    GsnGraph pattern = load_graph(i_pattern);
    BindingPlan plan = parse_plan_json(read_file(i_plan));
    emit(render_as(instantiate(pattern, plan), i_format), i_out);
  });

  // prompt
  auto* prompt_cmd = app.add_subcommand("prompt", "Print the prompts for one experiment cell");
  std::string p_exp, p_system, p_example = "deepmind", p_dataset = "dataset";
  bool p_json = false;
  prompt_cmd->add_option("--experiment", p_exp, "E1 ... E9")->required();
  prompt_cmd->add_option("--system", p_system, "target system key")->required();
  prompt_cmd->add_option("--example", p_example, "one-shot example system key");
  prompt_cmd->add_option("--dataset", p_dataset, "dataset directory");
  prompt_cmd->add_flag("--json", p_json);
  prompt_cmd->callback([&] {
    auto cfg = find_experiment(p_exp);
    if (!cfg) throw Error(ErrorCode::kInvalidArgument, "unknown experiment '" + p_exp + "'");
    Dataset ds = Dataset::load(p_dataset);
    std::optional<std::string> ex;
    if (cfg->use_example) ex = p_example;
    PromptBundle b = build_prompts(ds, *cfg, p_system, ex);
    if (p_json) {
      std::cout << json{{"system", b.system}, {"user", b.user}}.dump(2) << "\n";
    } else {
      std::cout << "=== system ===\n" << b.system << "\n\n=== user ===\n" << b.user << "\n";
    }
  });

  // score
  auto* score_cmd = app.add_subcommand("score", "Score a candidate case or rater agreement");
  std::string s_cand, s_ref, s_metric = "all";
  bool s_per_element = false;
  std::vector<std::string> s_tau;
  score_cmd->add_option("--candidate", s_cand, "candidate prose");
  score_cmd->add_option("--reference", s_ref, "reference prose");
  score_cmd->add_option("--metric", s_metric, "all | exact_match | bleu | cosine");
  score_cmd->add_flag("--per-element", s_per_element, "score matching elements separately");
  score_cmd->add_option("--tau", s_tau, "two rating files")->expected(2);
  score_cmd->callback([&] {
    if (!s_tau.empty()) {
      MetricValue v = kendall_tau_detailed(read_ratings(s_tau[0]), read_ratings(s_tau[1]));
      std::cout << metric_json(v).dump(2) << "\n";
      return;
    }
    if (s_cand.empty() || s_ref.empty()) {
      throw Error(ErrorCode::kInvalidArgument, "--candidate and --reference are required");
    }
    std::string cand = read_file(s_cand);
    std::string ref = read_file(s_ref);
    json out = json::object();
    if (s_per_element) {
      GsnGraph cg = parse_prose(cand, ProseMode::kLenient).graph;
      GsnGraph rg = parse_prose(ref, ProseMode::kLenient).graph;
      json arr = json::array();
      for (const auto& e : score_per_element(cg, rg)) {
        json vals = json::array();
        for (const auto& v : e.values) vals.push_back(metric_json(v));
        arr.push_back({{"id", e.id},
                       {"in_candidate", e.in_candidate},
                       {"in_reference", e.in_reference},
                       {"values", vals}});
      }
      out["elements"] = arr;
    } else {
      json vals = json::array();
      if (s_metric == "all") {
        for (const auto& v : score_text(cand, ref)) vals.push_back(metric_json(v));
      } else {
        auto k = parse_metric(s_metric);
        if (!k) throw Error(ErrorCode::kInvalidArgument, "unknown metric '" + s_metric + "'");
        vals.push_back(metric_json(score(*k, cand, ref)));
      }
      out["values"] = vals;
    }
    std::cout << out.dump(2) << "\n";
  });

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "Run an experiment matrix");
  std::string e_matrix, e_dataset = "dataset", e_out;
  bool e_mock = false, e_loocv = false;
  std::size_t e_max_cells = 0;
  exp_cmd->add_option("--matrix", e_matrix, "matrix JSON")->required();
  exp_cmd->add_option("--dataset", e_dataset, "dataset directory");
  exp_cmd->add_option("--out", e_out, "output directory")->required();
  exp_cmd->add_flag("--mock", e_mock, "offline backend echoing each ground truth");
  exp_cmd->add_flag("--loocv", e_loocv, "rotate the one-shot example over all systems");
  exp_cmd->add_option("--max-cells", e_max_cells, "stop after generating this many cells");
  exp_cmd->callback([&] {
    RunMatrix m = parse_matrix_json(read_file(e_matrix));
    if (e_loocv) {
      m.mode = ExampleMode::kLoocv;
      std::erase_if(m.experiments, [](const ExperimentConfig& c) { return !c.use_example; });
      if (m.experiments.empty()) {
        throw Error(ErrorCode::kInvalidMatrix, "no experiment with a one-shot example to rotate");
      }
    }
    Dataset ds = Dataset::load(e_dataset, m.systems);
    BackendProvider provider;
    if (e_mock) {
      provider = echo_mock(ds);
    } else {
      std::shared_ptr<Backend> http = HttpBackend::from_env();
      provider = [http](const CellKey&) { return http; };
    }
    RunOptions opts;
    opts.max_cells = e_max_cells;
    EvaluationReport rep = run_matrix(m, ds, e_out, provider, opts);
    emit_report(rep, e_out);
    std::size_t runs = 0;
    for (const auto& c : rep.cells) runs += c.runs.size();
    std::cout << rep.cells.size() << " cells, " << runs << " scored runs"
              << (rep.partial ? " (partial)" : "") << "; report in " << e_out << "\n";
    exit_code = rep.partial ? 3 : 0;
  });

  // render
  auto* render_cmd = app.add_subcommand("render", "Convert between predicate, prose and DOT");
  std::string r_file, r_format = "prose", r_out;
  bool r_lenient = false;
  render_cmd->add_option("file", r_file)->required();
  render_cmd->add_option("--format", r_format, "dot | prose | predicate");
  render_cmd->add_option("--out", r_out);
  render_cmd->add_flag("--lenient", r_lenient, "tolerate malformed prose");
  render_cmd->callback([&] { emit(render_as(load_graph(r_file, r_lenient), r_format), r_out); });

  // count
  auto* count_cmd = app.add_subcommand("count", "Element, relationship, decorator and placeholder counts");
  std::string c_file;
  count_cmd->add_option("file", c_file)->required();
  count_cmd->callback([&] {
    Summary s = count_summary(load_graph(c_file));
    std::cout << json{{"elements", s.elements},
                      {"relationships", s.relationships},
                      {"decorators", s.decorators},
                      {"placeholders", s.placeholders}}
                     .dump(2)
              << "\n";
  });

  // diff
  auto* diff_cmd = app.add_subcommand("diff", "Structural difference between two graphs");
  std::string d_a, d_b;
  diff_cmd->add_option("a", d_a)->required();
  diff_cmd->add_option("b", d_b)->required();
  diff_cmd->callback([&] {
    StructureDiff d = diff_structure(load_graph(d_a), load_graph(d_b));
    json edges_missing = json::array();
    json edges_extra = json::array();
    for (const auto& e : d.missing_edges) {
      edges_missing.push_back({std::string(to_string(e.kind)), e.source, e.target});
    }
    for (const auto& e : d.extra_edges) {
      edges_extra.push_back({std::string(to_string(e.kind)), e.source, e.target});
    }
    json kinds = json::array();
    for (const auto& k : d.kind_mismatch) {
      kinds.push_back({k.a_id, std::string(to_string(k.a_kind)), k.b_id, std::string(to_string(k.b_kind))});
    }
    std::cout << json{{"equal", d.empty()},
                      {"missing", d.missing},
                      {"extra", d.extra},
                      {"kind_mismatch", kinds},
                      {"missing_edges", edges_missing},
                      {"extra_edges", edges_extra},
                      {"net_missing", d.net_missing()}}
                     .dump(2)
              << "\n";
    exit_code = d.empty() ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const ProseParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    for (const auto& a : e.anomalies()) {
      std::cerr << "  line " << a.line << ": " << to_string(a.kind) << ": " << a.detail << "\n";
    }
    return 2;
  } catch (const SourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
