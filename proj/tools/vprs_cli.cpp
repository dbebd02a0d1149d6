// Command-line front end: simulate | quantize | train | classify | evaluate.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vprs/vprs.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode : int { kOk = 0, kUsage = 2, kDegenerate = 3, kSchema = 4, kCorruptModel = 5 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool g_verbose = false;

void log(const std::string& msg) {
  if (g_verbose) std::cerr << "[vprs] " << msg << '\n';
}

void require_file(const std::string& path, const char* what) {
  if (path.empty() || !fs::is_regular_file(path)) throw UsageError(std::string(what) + " '" + path + "' does not exist");
}

void require_parent(const std::string& path) {
  const auto parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) throw UsageError("output directory '" + parent.string() + "' does not exist");
}

// Loaded input: raw events (when the file uses the raw header) and the quantized table.
struct Dataset {
  std::optional<std::vector<vprs::RawEvent>> raw;
  vprs::DecisionTable table;
};

Dataset load_dataset(const std::string& path, const std::string& decision) {
  const auto csv = vprs::csv::read_file(path);
  Dataset ds;
  if (vprs::is_raw_header(csv.header)) {
    ds.raw = vprs::parse_raw_events(csv);
    std::vector<vprs::QuantizedRecord> records;
    records.reserve(ds.raw->size());
    for (std::size_t i = 0; i < ds.raw->size(); ++i) {
      try {
        records.push_back(vprs::quantize_event((*ds.raw)[i]));
      } catch (const vprs::DomainError& e) {
        throw vprs::DomainError("row " + std::to_string(i + 1) + ": " + e.what());
      }
    }
    ds.table = vprs::to_decision_table(records);
  } else {
    ds.table = vprs::table_from_csv(csv, decision);
  }
  if (ds.table.empty()) throw UsageError("input '" + path + "' contains no records");
  return ds;
}

vprs::VprsModel load_model_checked(const std::string& path) {
  require_file(path, "model file");
  return vprs::load_model(path);
}

std::vector<vprs::Prediction> predict(const vprs::VprsModel& model, const vprs::DecisionTable& table) {
  const auto missing = vprs::missing_attributes(model, table);
  if (!missing.empty()) {
    std::string list;
    for (const auto& n : missing) list += (list.empty() ? "" : ", ") + n;
    throw SchemaError("data is missing reduct attributes: " + list);
  }
  return vprs::classify_table(model, table);
}

std::string label_of(const vprs::VprsModel& model, vprs::Level code) {
  return model.decision_labels.at(static_cast<std::size_t>(code));
}

int run_simulate(const std::string& config, std::optional<std::uint64_t> seed, const std::string& out) {
  require_file(config, "config file");
  require_parent(out);
  auto cfg = vprs::synth::load_sim_config(config);
  if (seed) cfg.seed = *seed;
  const auto events = vprs::synth::generate(cfg);
  log("generated " + std::to_string(events.size()) + " events with seed " + std::to_string(cfg.seed));
  vprs::csv::write_atomic(out, vprs::format_raw_events(events));
  return kOk;
}

int run_quantize(const std::string& in, const std::string& out) {
  require_file(in, "input");
  require_parent(out);
  const auto csv = vprs::csv::read_file(in);
  const auto events = vprs::parse_raw_events(csv);
  std::vector<vprs::QuantizedRecord> records;
  records.reserve(events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    try {
      records.push_back(vprs::quantize_event(events[i]));
    } catch (const vprs::DomainError& e) {
      throw vprs::DomainError("row " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  vprs::csv::write_atomic(out, vprs::format_quantized(records));
  return kOk;
}

int run_train(const std::string& in, const std::string& out, const std::string& beta_text, const std::string& decision,
              std::size_t cap) {
  vprs::TrainOptions options;
  options.exhaustive_cap = cap;
  if (beta_text != "auto") {
    try {
      const auto beta = vprs::Ratio::parse_decimal(beta_text);
      (void)vprs::VprsParams(beta);
      options.beta = beta;
    } catch (const vprs::DomainError& e) {
      throw UsageError(std::string("--beta: ") + e.what());
    }
  }
  require_file(in, "input");
  require_parent(out);
  const auto ds = load_dataset(in, decision);
  const auto result = vprs::train(ds.table, options);
  if (!options.beta) {
    std::cerr << "beta auto: bound " << result.raw_bound.str() << " ("
              << vprs::csv::format_g(result.raw_bound.value(), 12) << "), clamped into (0.5, 1] -> "
              << result.model.beta.str() << '\n';
  } else {
    log("beta " + result.model.beta.str() + " (explicit); bound of full condition set " + result.raw_bound.str());
  }
  std::string reduct;
  for (const auto& n : result.model.reduct) reduct += (reduct.empty() ? "" : ",") + n;
  log("reduct {" + reduct + "} via " +
      std::string(result.reduct.method == vprs::ReductMethod::exhaustive ? "exhaustive" : "greedy") + " search, " +
      std::to_string(result.model.rules.size()) + " rules");
  vprs::save_model(out, result.model);
  return kOk;
}

int run_classify(const std::string& model_path, const std::string& in, const std::string& out, const std::string& decision) {
  const auto model = load_model_checked(model_path);
  require_file(in, "input");
  require_parent(out);
  const auto ds = load_dataset(in, decision);
  const auto preds = predict(model, ds.table);
  std::string text = "id,decision,belief,matched,similarity,score\n";
  for (std::size_t i = 0; i < preds.size(); ++i) {
    const auto& p = preds[i];
    text += ds.table.object_id(i) + ',' + label_of(model, p.decision) + ',' + vprs::csv::format_g(p.belief) + ',' +
            std::string(vprs::to_string(p.matched)) + ',' + vprs::csv::format_g(p.similarity_score) + ',' +
            vprs::csv::format_g(p.risk_score) + '\n';
  }
  vprs::csv::write_atomic(out, text);
  return kOk;
}

int run_evaluate(const std::string& model_path, const std::string& in, const std::string& out_dir,
                 const std::string& decision, double warn_threshold) {
  const auto model = load_model_checked(model_path);
  require_file(in, "input");
  if (!fs::is_directory(out_dir)) throw UsageError("output directory '" + out_dir + "' does not exist");
  const auto ds = load_dataset(in, decision);
  const auto preds = predict(model, ds.table);

  std::vector<vprs::Level> labels(ds.table.size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = ds.table.decision(i);

  std::vector<vprs::eval::MethodOutput> methods;
  vprs::eval::MethodOutput vprs_out{"vprs", {}, {}};
  for (const auto& p : preds) {
    vprs_out.predictions.push_back(p.decision);
    vprs_out.scores.push_back(p.risk_score);
  }
  methods.push_back(std::move(vprs_out));
  if (ds.raw) {
    vprs::eval::MethodOutput ttc_out{"ttc", {}, {}};
    for (const auto& e : *ds.raw) {
      const auto v = vprs::kinematics::ttc_baseline_classify(e.ttc_occupied, warn_threshold);
      ttc_out.predictions.push_back(static_cast<vprs::Level>(v.positive ? vprs::RiskLevel::Moderate : vprs::RiskLevel::Low));
      ttc_out.scores.push_back(v.score);
    }
    methods.push_back(std::move(ttc_out));
  } else {
    log("input has no raw TTC fields; TTC baseline skipped");
  }

  std::vector<std::string> level_labels = ds.table.decision_labels();
  if (level_labels.size() < model.decision_labels.size()) level_labels = model.decision_labels;
  const auto report = vprs::eval::compare_models(methods, labels, level_labels);
  const fs::path dir(out_dir);
  vprs::csv::write_atomic(dir / "report.txt", vprs::eval::format_report_text(report));
  vprs::csv::write_atomic(dir / "report.csv", vprs::eval::format_report_csv(report));
  for (const auto& row : report.rows) {
    vprs::csv::write_atomic(dir / ("roc_" + row.name + ".csv"), vprs::eval::format_roc_csv(row.roc));
  }
  std::cout << vprs::eval::format_report_text(report);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rough-set near-crash risk toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "Random seed (overrides the config file)");
  app.add_flag("--verbose", g_verbose, "Log progress to stderr");

  std::string config, in, out, model, out_dir, beta = "auto", decision;
  std::size_t cap = vprs::kExhaustiveReductCap;
  double warn = vprs::kinematics::kDefaultWarnThreshold;

  auto* sim = app.add_subcommand("simulate", "Generate synthetic near-crash events");
  sim->add_option("--config", config, "Simulation config file")->required();
  sim->add_option("--out", out, "Output raw-event CSV")->required();

  auto* quant = app.add_subcommand("quantize", "Quantize raw events into attribute levels");
  quant->add_option("--in", in, "Raw-event CSV")->required();
  quant->add_option("--out", out, "Output quantized CSV")->required();

  auto* tr = app.add_subcommand("train", "Learn reduct, weights and rules");
  tr->add_option("--in", in, "Raw, quantized or generic decision-table CSV")->required();
  tr->add_option("--out", out, "Output model JSON")->required();
  tr->add_option("--beta", beta, "Precision in (0.5, 1] or 'auto'");
  tr->add_option("--decision", decision, "Decision column (default: risk, else last column)");
  tr->add_option("--exhaustive-cap", cap, "Largest attribute count searched exhaustively");

  auto* cl = app.add_subcommand("classify", "Predict risk levels with a trained model");
  cl->add_option("--model", model, "Model JSON")->required();
  cl->add_option("--in", in, "Data CSV")->required();
  cl->add_option("--out", out, "Output predictions CSV")->required();
  cl->add_option("--decision", decision, "Decision column");

  auto* ev = app.add_subcommand("evaluate", "Score a model against labels and the TTC baseline");
  ev->add_option("--model", model, "Model JSON")->required();
  ev->add_option("--in", in, "Labelled data CSV (raw events enable the TTC baseline)")->required();
  ev->add_option("--out-dir", out_dir, "Directory for report and ROC files")->required();
  ev->add_option("--decision", decision, "Decision column");
  ev->add_option("--warn-threshold", warn, "TTC warning threshold in seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*sim) return run_simulate(config, seed, out);
    if (*quant) return run_quantize(in, out);
    if (*tr) return run_train(in, out, beta, decision, cap);
    if (*cl) return run_classify(model, in, out, decision);
    if (*ev) return run_evaluate(model, in, out_dir, decision, warn);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const vprs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kDegenerate;
  } catch (const vprs::DegenerateDataError& e) {
    std::cerr << "degenerate data: " << e.what() << '\n';
    return kDegenerate;
  } catch (const vprs::UndefinedMetricError& e) {
    std::cerr << "degenerate data: " << e.what() << '\n';
    return kDegenerate;
  } catch (const SchemaError& e) {
    std::cerr << "schema mismatch: " << e.what() << '\n';
    return kSchema;
  } catch (const vprs::ModelFormatError& e) {
    std::cerr << "corrupt model: " << e.what() << '\n';
    return kCorruptModel;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
