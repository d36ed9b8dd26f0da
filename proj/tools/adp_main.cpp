// Copyright 2026 The AlphaDP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// adp: command-line front end for the alpha-DP accounting library.
//
// Subcommands: mech-eval, compose, convert, optimize-alpha, optimize-sigma,
// sweep.  Single results are emitted as JSON records; sweeps as CSV tables
// (or JSON with --format json).  Exit codes: 0 success, 2 validation
// failure, 3 numeric overflow, 4 infeasible search.  Errors are reported as
// machine-readable JSON on stderr.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "adp/accounting.hpp"
#include "adp/errors.hpp"
#include "adp/mechanisms.hpp"
#include "adp/optimizer.hpp"
#include "adp/sweep.hpp"

namespace adp {
namespace {

std::string FormatShort(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string RenderValue(double v) { return FormatShort(v); }
std::string RenderValue(bool v) { return v ? "true" : "false"; }
std::string RenderValue(std::int64_t v) { return std::to_string(v); }
std::string RenderValue(const std::string& v) { return v; }
std::string RenderValue(const std::vector<double>& v) {
  std::string out;
  for (double x : v) {
    if (!out.empty()) out += ",";
    out += FormatShort(x);
  }
  return out;
}

// Merges a JSON config file under the parsed command line: a config value
// applies only when the matching flag was not given.  Config keys that do
// not correspond to a registered parameter are rejected rather than
// silently ignored.
class FlagSet {
 public:
  template <typename T>
  void Bind(CLI::Option* opt, std::string key, T* target) {
    entries_.push_back(
        {opt, std::move(key),
         [target](const nlohmann::json& v) { *target = v.get<T>(); },
         [target] { return RenderValue(*target); }});
  }

  // Registers a config-only key handled by the command itself.
  void AllowKey(std::string key) { allowed_.push_back(std::move(key)); }

  void ApplyConfig(const std::string& path) {
    if (!path.empty()) {
      std::ifstream in(path);
      if (!in) {
        throw DomainError("cannot read config file: " + path);
      }
      try {
        config_ = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw DomainError("config file is not valid JSON: " +
                          std::string(e.what()));
      }
      if (!config_.is_object()) {
        throw DomainError("config must be a JSON object");
      }
    }
    for (const auto& item : config_.items()) {
      bool known = false;
      for (const auto& e : entries_) known = known || e.key == item.key();
      for (const auto& k : allowed_) known = known || k == item.key();
      if (!known) {
        throw DomainError("unknown config field: " + item.key());
      }
    }
    for (auto& e : entries_) {
      if (e.opt->count() == 0 && config_.contains(e.key)) {
        try {
          e.absorb(config_.at(e.key));
        } catch (const nlohmann::json::exception&) {
          throw DomainError("config field " + e.key + " has the wrong type");
        }
      }
    }
  }

  // True when the parameter came from the command line or the config file
  // (as opposed to holding its built-in default).
  bool WasSet(const std::string& key) const {
    for (const auto& e : entries_) {
      if (e.key == key) return e.opt->count() > 0 || config_.contains(key);
    }
    return config_.contains(key);
  }

  bool HasConfigKey(const std::string& key) const {
    return config_.contains(key);
  }
  const nlohmann::json& ConfigAt(const std::string& key) const {
    return config_.at(key);
  }

  std::map<std::string, std::string> Effective() const {
    std::map<std::string, std::string> out;
    for (const auto& e : entries_) {
      std::string value = e.render();
      if (!value.empty()) out[e.key] = std::move(value);
    }
    return out;
  }

 private:
  struct Entry {
    CLI::Option* opt;
    std::string key;
    std::function<void(const nlohmann::json&)> absorb;
    std::function<std::string()> render;
  };
  std::vector<Entry> entries_;
  std::vector<std::string> allowed_;
  nlohmann::json config_ = nlohmann::json::object();
};

void WriteText(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DomainError("cannot open output file: " + path);
  }
  out << text;
  if (!out) {
    throw DomainError("failed writing output file: " + path);
  }
}

// Inserts a suffix before the file extension: out.csv -> out_p0.55.csv.
std::string WithSuffix(const std::string& path, const std::string& suffix) {
  if (suffix.empty()) return path;
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos ||
      (slash != std::string::npos && dot < slash)) {
    return path + suffix;
  }
  return path.substr(0, dot) + suffix + path.substr(dot);
}

ConversionForm ParseForm(const std::string& name) {
  if (name == "proof") return ConversionForm::kProof;
  if (name == "statement") return ConversionForm::kStatement;
  throw DomainError("conversion must be proof or statement, got " + name);
}

// Options present on every subcommand.
struct SharedOpts {
  std::string config_path;
  std::string output_path;
  std::string format;
  double delta = 1e-5;
  double sensitivity = 1.0;
  double alpha_min = 2.0;
  double alpha_max = 300.0;
  double alpha_step = 1.0;
  std::string conversion = "proof";
  FlagSet flags;

  void Register(CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "JSON config file; command-line flags take precedence");
    flags.Bind(sub->add_option("--output", output_path,
                               "Output file path (stdout when omitted)"),
               "output", &output_path);
    flags.Bind(sub->add_option("--format", format,
                               "Output format: csv (sweeps only) or json")
                   ->check(CLI::IsMember({"csv", "json"})),
               "format", &format);
    flags.Bind(sub->add_option("--delta", delta,
                               "Target failure probability delta"),
               "delta", &delta);
    flags.Bind(
        sub->add_option("--sensitivity", sensitivity, "Query sensitivity"),
        "sensitivity", &sensitivity);
    flags.Bind(sub->add_option("--alpha-min", alpha_min,
                               "Smallest alpha on the search grid"),
               "alpha_min", &alpha_min);
    flags.Bind(sub->add_option("--alpha-max", alpha_max,
                               "Largest alpha on the search grid"),
               "alpha_max", &alpha_max);
    flags.Bind(
        sub->add_option("--alpha-step", alpha_step, "Alpha grid spacing"),
        "alpha_step", &alpha_step);
    flags.Bind(sub->add_option("--conversion", conversion,
                               "Conversion form: proof or statement")
                   ->check(CLI::IsMember({"proof", "statement"})),
               "conversion", &conversion);
  }

  // Loads the config file, merges it, and re-validates choice values that
  // may have arrived through the config rather than the checked flags.
  void Finalize() {
    flags.ApplyConfig(config_path);
    if (!format.empty() && format != "csv" && format != "json") {
      throw DomainError("format must be csv or json, got " + format);
    }
    ParseForm(conversion);
  }

  ConversionForm Form() const { return ParseForm(conversion); }

  void RequireJsonRecord() const {
    if (format == "csv") {
      throw DomainError(
          "format must be json for this command; csv applies to sweep "
          "tables");
    }
  }
};

// Single-result commands emit one JSON object with the effective
// configuration echoed under "metadata".
void EmitRecord(nlohmann::json record,
                std::map<std::string, std::string> effective,
                const std::string& output_path) {
  effective.erase("output");  // routing, not part of the computation
  record["metadata"] = effective;
  WriteText(output_path, record.dump(2) + "\n");
}

void EmitTable(SweepTable table, std::map<std::string, std::string> effective,
               const std::string& format, const std::string& output_path,
               const std::string& suffix) {
  effective.erase("output");  // routing, not part of the computation
  for (const auto& [key, value] : effective) {
    table.metadata.emplace(key, value);
  }
  const std::string fmt = format.empty() ? "csv" : format;
  const std::string text =
      fmt == "csv" ? ToCsv(table) : ToJson(table).dump(2) + "\n";
  WriteText(output_path.empty() ? output_path
                                : WithSuffix(output_path, suffix),
            text);
}

// ---------------------------------------------------------------------------
// mech-eval

struct MechEvalCmd {
  SharedOpts shared;
  std::string mechanism;
  double p = 0.75;
  double scale_b = 1.0;
  double sigma = 1.0;
  double alpha = 2.0;

  void Register(CLI::App* sub) {
    shared.Register(sub);
    shared.flags.Bind(sub->add_option("--mechanism", mechanism,
                                      "Mechanism: rr, laplace, or gaussian"),
                      "mechanism", &mechanism);
    shared.flags.Bind(
        sub->add_option("--p", p, "Randomized-response truth probability"),
        "p", &p);
    shared.flags.Bind(sub->add_option("--scale-b", scale_b,
                                      "Laplace noise scale b"),
                      "scale_b", &scale_b);
    shared.flags.Bind(sub->add_option("--sigma", sigma,
                                      "Gaussian noise standard deviation"),
                      "sigma", &sigma);
    shared.flags.Bind(sub->add_option("--alpha", alpha, "Divergence order"),
                      "alpha", &alpha);
    sub->callback([this] { Run(); });
  }

  void Run() {
    shared.Finalize();
    shared.RequireJsonRecord();
    if (mechanism.empty()) {
      throw DomainError("mechanism is required: rr, laplace, or gaussian");
    }

    nlohmann::json record;
    record["mechanism"] = mechanism;
    record["alpha"] = alpha;
    record["delta"] = shared.delta;

    MechanismSpec mech;
    if (mechanism == "rr") {
      mech = RandomizedResponse{p};
      record["p"] = p;
      record["pure_epsilon"] = RrPureEpsilon(p);
    } else if (mechanism == "laplace") {
      mech = LaplaceMech{scale_b, shared.sensitivity};
      record["scale_b"] = scale_b;
      record["l1_sensitivity"] = shared.sensitivity;
      record["pure_epsilon"] = LaplacePureEpsilon(scale_b, shared.sensitivity);
    } else if (mechanism == "gaussian") {
      mech = GaussianMech{sigma, shared.sensitivity};
      record["sigma"] = sigma;
      record["l2_sensitivity"] = shared.sensitivity;
      record["rdp_epsilon"] = GaussianRdpEpsilon(sigma, shared.sensitivity,
                                                 alpha);
      record["zcdp_rho"] = GaussianZcdpRho(sigma, shared.sensitivity);
      record["approx_epsilon"] =
          GaussianApproxEpsilon(sigma, shared.sensitivity, shared.delta);
    } else {
      throw DomainError("unknown mechanism: " + mechanism);
    }

    const double adp_epsilon = MechanismAdpEpsilon(mech, alpha);
    record["adp_epsilon"] = adp_epsilon;
    record["adp_converted_epsilon"] =
        AdpToApprox({alpha, adp_epsilon}, shared.delta, shared.Form()).epsilon;

    EmitRecord(std::move(record), shared.flags.Effective(),
               shared.output_path);
  }
};

// ---------------------------------------------------------------------------
// compose

struct ComposeCmd {
  SharedOpts shared;
  std::string framework;
  double alpha = 2.0;
  std::vector<double> steps;
  double step_delta = 0.0;
  double delta_slack = 0.0;
  std::int64_t repeat = 1;
  CLI::Option* step_opt = nullptr;
  CLI::Option* alpha_opt = nullptr;

  void Register(CLI::App* sub) {
    shared.Register(sub);
    shared.flags.Bind(
        sub->add_option("--framework", framework,
                        "Composition framework: adp, rdp, zcdp, or advanced"),
        "framework", &framework);
    alpha_opt = sub->add_option("--alpha", alpha,
                                "Shared divergence order (adp and rdp)");
    shared.flags.Bind(alpha_opt, "alpha", &alpha);
    step_opt = sub->add_option(
        "--step", steps,
        "Per-step value (epsilon, or rho for zcdp); repeatable");
    shared.flags.AllowKey("steps");
    shared.flags.Bind(sub->add_option("--step-delta", step_delta,
                                      "Per-step delta (advanced only)"),
                      "step_delta", &step_delta);
    shared.flags.Bind(sub->add_option("--delta-slack", delta_slack,
                                      "Slack delta (advanced only)"),
                      "delta_slack", &delta_slack);
    shared.flags.Bind(sub->add_option("--repeat", repeat,
                                      "Repeat the step list this many times"),
                      "repeat", &repeat);
    sub->callback([this] { Run(); });
  }

  // Steps may arrive as numbers or as {alpha, epsilon} objects in the
  // config.  Objects must agree on a single alpha.
  void LoadConfigSteps() {
    if (step_opt->count() > 0 || !shared.flags.HasConfigKey("steps")) return;
    const auto& json_steps = shared.flags.ConfigAt("steps");
    if (!json_steps.is_array()) {
      throw DomainError("config field steps must be an array");
    }
    double shared_alpha = 0.0;
    bool have_alpha = false;
    for (const auto& s : json_steps) {
      if (s.is_number()) {
        steps.push_back(s.get<double>());
        continue;
      }
      if (!s.is_object()) {
        throw DomainError("steps entries must be numbers or objects");
      }
      const double value = s.at("epsilon").get<double>();
      steps.push_back(value);
      if (s.contains("alpha")) {
        const double a = s.at("alpha").get<double>();
        if (have_alpha && a != shared_alpha) {
          throw DomainError(
              "composition requires a single shared alpha; steps carry "
              "mixed alphas");
        }
        shared_alpha = a;
        have_alpha = true;
      }
    }
    if (have_alpha) {
      if (alpha_opt->count() > 0 && alpha != shared_alpha) {
        throw DomainError(
            "composition requires a single shared alpha; --alpha conflicts "
            "with the alphas carried by steps");
      }
      alpha = shared_alpha;
    }
  }

  void Run() {
    shared.Finalize();
    shared.RequireJsonRecord();
    LoadConfigSteps();
    if (framework.empty()) {
      throw DomainError(
          "framework is required: adp, rdp, zcdp, or advanced");
    }
    if (repeat < 1) {
      throw DomainError("repeat must be >= 1");
    }
    if (steps.empty()) {
      throw DomainError("steps must be nonempty");
    }

    const Framework f = FrameworkFromName(framework);
    CompositionLedger ledger = [&] {
      switch (f) {
        case Framework::kAdp:
          return CompositionLedger::Adp(alpha);
        case Framework::kRdp:
          return CompositionLedger::Rdp(alpha);
        case Framework::kZcdp:
          return CompositionLedger::Zcdp();
        case Framework::kAdvanced:
        default:
          return CompositionLedger::Advanced(delta_slack);
      }
    }();
    for (std::int64_t r = 0; r < repeat; ++r) {
      for (double value : steps) {
        ledger.AddStep(value, f == Framework::kAdvanced ? step_delta : 0.0);
      }
    }

    nlohmann::json record = ledger.ToJson();
    if (f != Framework::kAdvanced && shared.flags.WasSet("delta")) {
      const ApproxDpGuarantee conv =
          ledger.ToApprox(shared.delta, shared.Form());
      record["converted"] = {{"epsilon", conv.epsilon},
                             {"delta", conv.delta}};
    }
    EmitRecord(std::move(record), shared.flags.Effective(),
               shared.output_path);
  }
};

// ---------------------------------------------------------------------------
// convert

struct ConvertCmd {
  SharedOpts shared;
  std::string from;
  double alpha = 2.0;
  double epsilon = 0.0;
  double rho = 0.0;

  void Register(CLI::App* sub) {
    shared.Register(sub);
    shared.flags.Bind(sub->add_option("--from", from,
                                      "Source guarantee: adp, rdp, or zcdp"),
                      "from", &from);
    shared.flags.Bind(sub->add_option("--alpha", alpha, "Divergence order"),
                      "alpha", &alpha);
    shared.flags.Bind(
        sub->add_option("--epsilon", epsilon,
                        "Source epsilon (adp) or epsilon-bar (rdp)"),
        "epsilon", &epsilon);
    shared.flags.Bind(sub->add_option("--rho", rho, "Source rho (zcdp)"),
                      "rho", &rho);
    sub->callback([this] { Run(); });
  }

  void Run() {
    shared.Finalize();
    shared.RequireJsonRecord();
    if (from.empty()) {
      throw DomainError("from is required: adp, rdp, or zcdp");
    }

    nlohmann::json record;
    record["from"] = from;
    ApproxDpGuarantee out;
    if (from == "adp") {
      out = AdpToApprox({alpha, epsilon}, shared.delta, shared.Form());
      record["alpha"] = alpha;
      record["input_epsilon"] = epsilon;
      record["conversion"] = shared.conversion;
    } else if (from == "rdp") {
      out = RdpToApprox({alpha, epsilon}, shared.delta);
      record["alpha"] = alpha;
      record["input_epsilon"] = epsilon;
    } else if (from == "zcdp") {
      out = ZcdpToApprox({rho}, shared.delta);
      record["rho"] = rho;
    } else {
      throw DomainError("unknown source guarantee: " + from);
    }
    record["epsilon"] = out.epsilon;
    record["delta"] = out.delta;
    EmitRecord(std::move(record), shared.flags.Effective(),
               shared.output_path);
  }
};

// ---------------------------------------------------------------------------
// optimize-alpha / optimize-sigma

struct OptimizeCmd {
  SharedOpts shared;
  bool min_sigma_mode = false;
  std::int64_t iterations = 1;
  double sigma = 1.0;
  double epsilon_bound = 1.0;
  double sigma_min = 1.0;
  double sigma_max = 500.0;
  double sigma_step = 1.0;

  void Register(CLI::App* sub, bool sigma_mode) {
    min_sigma_mode = sigma_mode;
    shared.Register(sub);
    shared.flags.Bind(sub->add_option("--iterations", iterations,
                                      "Number of composed queries"),
                      "iterations", &iterations);
    if (min_sigma_mode) {
      shared.flags.Bind(
          sub->add_option("--epsilon-bound", epsilon_bound,
                          "Largest acceptable converted epsilon"),
          "epsilon_bound", &epsilon_bound);
    } else {
      shared.flags.Bind(sub->add_option("--sigma", sigma,
                                        "Gaussian noise standard deviation"),
                        "sigma", &sigma);
    }
    shared.flags.Bind(sub->add_option("--sigma-min", sigma_min,
                                      "Smallest sigma on the search grid"),
                      "sigma_min", &sigma_min);
    shared.flags.Bind(sub->add_option("--sigma-max", sigma_max,
                                      "Largest sigma on the search grid"),
                      "sigma_max", &sigma_max);
    shared.flags.Bind(
        sub->add_option("--sigma-step", sigma_step, "Sigma grid spacing"),
        "sigma_step", &sigma_step);
    sub->callback([this] { Run(); });
  }

  void Run() {
    shared.Finalize();
    shared.RequireJsonRecord();
    const AlphaSearchConfig cfg{
        shared.alpha_min, shared.alpha_max, shared.alpha_step,
        sigma_min,        sigma_max,        sigma_step,
        shared.Form()};
    const OptimizationResult result =
        min_sigma_mode
            ? FindAlphaMinSigma(iterations, epsilon_bound, shared.delta,
                                shared.sensitivity, cfg)
            : FindAlphaMinEpsilon(iterations, sigma, shared.delta,
                                  shared.sensitivity, cfg);

    nlohmann::json record;
    record["mode"] = min_sigma_mode ? "min_sigma" : "min_epsilon";
    record["alpha_star"] = result.alpha_star;
    record["objective"] = result.objective;
    record["converted_epsilon"] = result.converted_epsilon;
    record["feasible"] = result.feasible;
    EmitRecord(std::move(record), shared.flags.Effective(),
               shared.output_path);
  }
};

// ---------------------------------------------------------------------------
// sweep

struct SweepCmd {
  SharedOpts shared;
  std::string preset;
  std::string op;
  std::string mechanism;
  std::string mode;
  double p = 0.75;
  double scale_b = 1.0;
  double sigma = 100.0;
  std::int64_t max_iterations = 100;
  std::int64_t iterations = 1000;
  std::vector<double> targets;
  bool reoptimize_per_step = false;
  double sigma_min = 1.0;
  double sigma_max = 500.0;
  double sigma_step = 1.0;

  void Register(CLI::App* sub) {
    shared.Register(sub);
    shared.flags.Bind(
        sub->add_option("--preset", preset, "Figure preset: fig1 .. fig8"),
        "preset", &preset);
    shared.flags.Bind(
        sub->add_option(
            "--op", op,
            "Sweep operation: mech-vs-alpha, cumulative, optimizer-curves"),
        "op", &op);
    shared.flags.Bind(sub->add_option("--mechanism", mechanism,
                                      "Mechanism: rr, laplace, or gaussian"),
                      "mechanism", &mechanism);
    shared.flags.Bind(
        sub->add_option("--p", p, "Randomized-response truth probability"),
        "p", &p);
    shared.flags.Bind(sub->add_option("--scale-b", scale_b,
                                      "Laplace noise scale b"),
                      "scale_b", &scale_b);
    shared.flags.Bind(sub->add_option("--sigma", sigma,
                                      "Gaussian noise standard deviation"),
                      "sigma", &sigma);
    shared.flags.Bind(sub->add_option("--max-iterations", max_iterations,
                                      "Cumulative sweep length"),
                      "max_iterations", &max_iterations);
    shared.flags.Bind(sub->add_option("--iterations", iterations,
                                      "Composed queries (optimizer curves)"),
                      "iterations", &iterations);
    shared.flags.Bind(
        sub->add_option("--targets", targets,
                        "Optimizer-curve targets: sigmas (epsilon-vs-alpha) "
                        "or epsilon bounds (sigma-vs-alpha)"),
        "targets", &targets);
    shared.flags.Bind(
        sub->add_option("--mode", mode,
                        "Optimizer-curve mode: epsilon-vs-alpha or "
                        "sigma-vs-alpha")
            ->check(CLI::IsMember({"epsilon-vs-alpha", "sigma-vs-alpha"})),
        "mode", &mode);
    shared.flags.Bind(
        sub->add_flag("--reoptimize-per-step", reoptimize_per_step,
                      "Re-optimize alpha at every iteration count"),
        "reoptimize_per_step", &reoptimize_per_step);
    shared.flags.Bind(sub->add_option("--sigma-min", sigma_min,
                                      "Smallest sigma on the search grid"),
               "sigma_min", &sigma_min);
    shared.flags.Bind(sub->add_option("--sigma-max", sigma_max,
                                      "Largest sigma on the search grid"),
               "sigma_max", &sigma_max);
    shared.flags.Bind(
        sub->add_option("--sigma-step", sigma_step, "Sigma grid spacing"),
        "sigma_step", &sigma_step);
    sub->callback([this] { Run(); });
  }

  AlphaSearchConfig SearchConfig() const {
    return {shared.alpha_min, shared.alpha_max, shared.alpha_step,
            sigma_min,        sigma_max,        sigma_step,
            shared.Form()};
  }

  std::vector<double> MechanismGrid() const {
    AlphaSearchConfig cfg = SearchConfig();
    // The single-query figures sweep alpha over [2, 200] unless the grid
    // was set explicitly.
    if (!shared.flags.WasSet("alpha_max")) cfg.alpha_max = 200.0;
    return AlphaGrid(cfg);
  }

  void Emit(SweepTable table, const std::string& suffix) {
    if (!preset.empty()) table.metadata.emplace("preset", preset);
    EmitTable(std::move(table), shared.flags.Effective(), shared.format,
              shared.output_path, suffix);
  }

  void RunMechPreset(const std::string& which) {
    const ConversionForm form = shared.Form();
    const std::vector<double> grid = MechanismGrid();
    if (which == "fig1") {
      const std::vector<double> ps = shared.flags.WasSet("p")
                                         ? std::vector<double>{p}
                                         : std::vector<double>{0.55, 0.75,
                                                               0.9};
      for (double value : ps) {
        Emit(SweepMechanismVsAlpha(RandomizedResponse{value}, grid,
                                   shared.delta, form),
             ps.size() > 1 ? "_p" + FormatShort(value) : "");
      }
    } else if (which == "fig2") {
      const std::vector<double> bs = shared.flags.WasSet("scale_b")
                                         ? std::vector<double>{scale_b}
                                         : std::vector<double>{1.0, 2.0, 4.0};
      for (double value : bs) {
        Emit(SweepMechanismVsAlpha(LaplaceMech{value, shared.sensitivity},
                                   grid, shared.delta, form),
             bs.size() > 1 ? "_b" + FormatShort(value) : "");
      }
    } else {
      const std::vector<double> sigmas =
          shared.flags.WasSet("sigma")
              ? std::vector<double>{sigma}
              : std::vector<double>{1.0, 10.0, 100.0};
      for (double value : sigmas) {
        Emit(SweepMechanismVsAlpha(GaussianMech{value, shared.sensitivity},
                                   grid, shared.delta, form),
             sigmas.size() > 1 ? "_sigma" + FormatShort(value) : "");
      }
    }
  }

  void RunCumulativePreset(const std::string& which) {
    const AlphaSearchConfig cfg = SearchConfig();
    std::int64_t length = max_iterations;
    if (!shared.flags.WasSet("max_iterations")) {
      length = which == "fig4" ? 100 : which == "fig5" ? 5000 : 1000;
    }
    if (which == "fig6") {
      const double delta =
          shared.flags.WasSet("delta") ? shared.delta : 1e-25;
      const std::vector<double> sigmas =
          shared.flags.WasSet("sigma")
              ? std::vector<double>{sigma}
              : std::vector<double>{10.0, 50.0, 100.0};
      for (double value : sigmas) {
        Emit(SweepCumulativeVsIterations(value, shared.sensitivity, delta,
                                         length, cfg, reoptimize_per_step),
             sigmas.size() > 1 ? "_sigma" + FormatShort(value) : "");
      }
      return;
    }
    const double sweep_sigma = shared.flags.WasSet("sigma") ? sigma : 100.0;
    const std::vector<double> deltas =
        shared.flags.WasSet("delta")
            ? std::vector<double>{shared.delta}
            : std::vector<double>{1e-5, 1e-10, 1e-15};
    for (double value : deltas) {
      Emit(SweepCumulativeVsIterations(sweep_sigma, shared.sensitivity,
                                       value, length, cfg,
                                       reoptimize_per_step),
           deltas.size() > 1 ? "_delta" + FormatShort(value) : "");
    }
  }

  void RunOptimizerPreset(const std::string& which) {
    const AlphaSearchConfig cfg = SearchConfig();
    const OptimizerSweepMode sweep_mode =
        which == "fig7" ? OptimizerSweepMode::kEpsilonVsAlpha
                        : OptimizerSweepMode::kSigmaVsAlpha;
    std::vector<double> curve_targets = targets;
    if (!shared.flags.WasSet("targets")) {
      curve_targets = which == "fig7" ? std::vector<double>{10.0, 50.0, 100.0}
                                      : std::vector<double>{1.0, 2.0, 4.0};
    }
    Emit(SweepOptimizerCurves(iterations, shared.delta, shared.sensitivity,
                              curve_targets, sweep_mode, cfg),
         "");
  }

  void RunExplicit() {
    if (op == "mech-vs-alpha") {
      MechanismSpec mech;
      if (mechanism == "rr") {
        mech = RandomizedResponse{p};
      } else if (mechanism == "laplace") {
        mech = LaplaceMech{scale_b, shared.sensitivity};
      } else if (mechanism == "gaussian") {
        mech = GaussianMech{sigma, shared.sensitivity};
      } else {
        throw DomainError(
            "mechanism is required for mech-vs-alpha: rr, laplace, or "
            "gaussian");
      }
      Emit(SweepMechanismVsAlpha(mech, MechanismGrid(), shared.delta,
                                 shared.Form()),
           "");
    } else if (op == "cumulative") {
      Emit(SweepCumulativeVsIterations(sigma, shared.sensitivity,
                                       shared.delta, max_iterations,
                                       SearchConfig(), reoptimize_per_step),
           "");
    } else if (op == "optimizer-curves") {
      if (mode.empty()) {
        throw DomainError(
            "mode is required for optimizer-curves: epsilon-vs-alpha or "
            "sigma-vs-alpha");
      }
      const OptimizerSweepMode sweep_mode =
          mode == "epsilon-vs-alpha" ? OptimizerSweepMode::kEpsilonVsAlpha
                                     : OptimizerSweepMode::kSigmaVsAlpha;
      Emit(SweepOptimizerCurves(iterations, shared.delta,
                                shared.sensitivity, targets, sweep_mode,
                                SearchConfig()),
           "");
    } else {
      throw DomainError(
          "op must be mech-vs-alpha, cumulative, or optimizer-curves, got " +
          op);
    }
  }

  void Run() {
    shared.Finalize();
    if (!preset.empty()) {
      if (preset == "fig1" || preset == "fig2" || preset == "fig3") {
        RunMechPreset(preset);
      } else if (preset == "fig4" || preset == "fig5" || preset == "fig6") {
        RunCumulativePreset(preset);
      } else if (preset == "fig7" || preset == "fig8") {
        RunOptimizerPreset(preset);
      } else {
        throw DomainError("unknown preset: " + preset);
      }
      return;
    }
    if (op.empty()) {
      throw DomainError("either preset or op is required");
    }
    RunExplicit();
  }
};

}  // namespace
}  // namespace adp

int main(int argc, char** argv) {
  CLI::App app{"Alpha-DP privacy accounting toolkit"};
  app.require_subcommand(1);

  auto mech_eval = std::make_shared<adp::MechEvalCmd>();
  mech_eval->Register(app.add_subcommand(
      "mech-eval",
      "Evaluate one mechanism's privacy consumption at a single order"));

  auto compose = std::make_shared<adp::ComposeCmd>();
  compose->Register(app.add_subcommand(
      "compose", "Fold per-step guarantees into a composition ledger"));

  auto convert = std::make_shared<adp::ConvertCmd>();
  convert->Register(app.add_subcommand(
      "convert", "Convert a guarantee to (epsilon, delta)-DP"));

  auto optimize_alpha = std::make_shared<adp::OptimizeCmd>();
  optimize_alpha->Register(
      app.add_subcommand("optimize-alpha",
                         "Search the alpha grid for the smallest converted "
                         "cumulative epsilon"),
      /*sigma_mode=*/false);

  auto optimize_sigma = std::make_shared<adp::OptimizeCmd>();
  optimize_sigma->Register(
      app.add_subcommand("optimize-sigma",
                         "Search for the smallest sigma meeting an epsilon "
                         "bound"),
      /*sigma_mode=*/true);

  auto sweep = std::make_shared<adp::SweepCmd>();
  sweep->Register(app.add_subcommand(
      "sweep", "Generate comparison tables across orders or iterations"));

  auto emit_error = [](const char* type, const std::string& message) {
    nlohmann::json err;
    err["error"] = {{"type", type}, {"message", message}};
    std::fputs((err.dump() + "\n").c_str(), stderr);
  };

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    emit_error("validation", e.what());
    return 2;
  } catch (const adp::NoFeasibleAlpha& e) {
    emit_error("infeasible", e.what());
    return 4;
  } catch (const adp::NoFeasibleSigma& e) {
    emit_error("infeasible", e.what());
    return 4;
  } catch (const adp::QuadratureDivergence& e) {
    emit_error("overflow", e.what());
    return 3;
  } catch (const adp::OverflowError& e) {
    emit_error("overflow", e.what());
    return 3;
  } catch (const adp::Error& e) {
    emit_error("validation", e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    emit_error("validation", e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error("validation", e.what());
    return 2;
  }
  return 0;
}
