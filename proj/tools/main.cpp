// Copyright 2026
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "qbayes/bayes.hpp"
#include "qbayes/channels.hpp"
#include "qbayes/eig.hpp"
#include "qbayes/errors.hpp"
#include "qbayes/exchangeability.hpp"
#include "qbayes/json_io.hpp"
#include "qbayes/povm.hpp"
#include "qbayes/states.hpp"
#include "qbayes/tensor.hpp"

namespace {

using namespace qbayes;

// Exit codes: 0 success/thresholds met, 1 thresholds unmet, 2 usage or
// validation failure, 3 degenerate runtime condition.
struct ErrorInfo {
  std::string kind;
  int code;
};

ErrorInfo classify(const std::exception& e) {
  if (dynamic_cast<const PriorSupportError*>(&e)) return {"prior-support", 3};
  if (dynamic_cast<const DegeneratePosteriorError*>(&e)) return {"degenerate-posterior", 3};
  if (dynamic_cast<const ResourceLimitError*>(&e)) return {"resource-limit", 3};
  if (dynamic_cast<const SingularityError*>(&e)) return {"singularity", 3};
  if (dynamic_cast<const NoWitnessError*>(&e)) return {"no-witness", 2};
  if (dynamic_cast<const CompletePositivityError*>(&e)) return {"not-cp", 2};
  if (dynamic_cast<const IsometryError*>(&e)) return {"isometry", 2};
  if (dynamic_cast<const OvercompletenessError*>(&e)) return {"overcompleteness", 2};
  if (dynamic_cast<const DimensionError*>(&e)) return {"dimension", 2};
  if (dynamic_cast<const ValidationError*>(&e)) return {"validation", 2};
  if (dynamic_cast<const Error*>(&e)) return {"error", 2};
  return {"internal", 3};
}

int emit_error(const std::string& kind, const std::string& message, int code) {
  const nlohmann::json j{{"error", {{"kind", kind}, {"message", message}}}};
  std::cerr << j.dump(2) << "\n";
  return code;
}

void print_json(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

std::string resolve_out(const std::string& explicit_path, const char* default_name) {
  if (!explicit_path.empty()) return explicit_path;
  const char* dir = std::getenv("QBAYES_OUT_DIR");
  if (dir != nullptr && *dir != '\0') return std::string(dir) + "/" + default_name;
  return default_name;
}

std::string csv_path_for(const std::string& json_path) {
  const std::string suffix = ".json";
  if (json_path.size() > suffix.size() &&
      json_path.compare(json_path.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return json_path.substr(0, json_path.size() - suffix.size()) + ".csv";
  }
  return json_path + ".csv";
}

// Paths are checked up front so a long simulation cannot fail at write time.
void ensure_writable(const std::string& path) {
  std::ofstream f(path, std::ios::app);
  if (!f.good()) throw ValidationError("cannot open output path '" + path + "' for writing");
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::trunc);
  if (!f.good()) throw ValidationError("cannot open output path '" + path + "' for writing");
  f << content;
  if (!f.good()) throw ValidationError("failed writing to '" + path + "'");
}

std::string format_row(std::initializer_list<double> values) {
  std::string out;
  char buf[64];
  bool first = true;
  for (double v : values) {
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    if (!first) out += ',';
    out += buf;
    first = false;
  }
  return out;
}

const nlohmann::json& require_object(const nlohmann::json& cfg) {
  if (!cfg.is_object()) throw ValidationError("config file must hold a JSON object");
  return cfg;
}

void merge_count(const nlohmann::json& cfg, const char* key, const CLI::Option* opt,
                 std::size_t& target) {
  if (opt->count() > 0 || !cfg.contains(key)) return;
  if (!cfg[key].is_number_unsigned()) {
    throw ValidationError(std::string("config key '") + key + "' must be a nonnegative integer");
  }
  target = cfg[key].get<std::size_t>();
}

void merge_seed(const nlohmann::json& cfg, const char* key, const CLI::Option* opt,
                std::uint64_t& target) {
  if (opt->count() > 0 || !cfg.contains(key)) return;
  if (!cfg[key].is_number_unsigned()) {
    throw ValidationError(std::string("config key '") + key + "' must be a nonnegative integer");
  }
  target = cfg[key].get<std::uint64_t>();
}

void merge_string(const nlohmann::json& cfg, const char* key, const CLI::Option* opt,
                  std::string& target) {
  if (opt->count() > 0 || !cfg.contains(key)) return;
  if (!cfg[key].is_string()) {
    throw ValidationError(std::string("config key '") + key + "' must be a string");
  }
  target = cfg[key].get<std::string>();
}

void merge_threshold(const nlohmann::json& cfg, double& target) {
  if (!cfg.contains("threshold")) return;
  if (!cfg["threshold"].is_number()) {
    throw ValidationError("config key 'threshold' must be a number");
  }
  target = cfg["threshold"].get<double>();
}

DensityOperator parse_state_truth(const std::string& text) {
  const std::string prefix = "bloch:";
  if (text.rfind(prefix, 0) == 0) {
    BlochVector s{};
    const std::string rest = text.substr(prefix.size());
    int parsed = 0;
    double x = 0, y = 0, z = 0;
    if (std::sscanf(rest.c_str(), "%lf,%lf,%lf%n", &x, &y, &z, &parsed) != 3 ||
        parsed != static_cast<int>(rest.size())) {
      throw ValidationError("truth preset must look like bloch:x,y,z");
    }
    s.s = {x, y, z};
    return bloch_to_rho(s);
  }
  return density_from_json(read_json_file(text));
}

KrausChannel parse_channel_truth(const std::string& text) {
  if (text == "identity") return identity_channel(2);
  const std::string prefix = "depolarizing:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string rest = text.substr(prefix.size());
    int parsed = 0;
    double p = 0;
    if (std::sscanf(rest.c_str(), "%lf%n", &p, &parsed) != 1 ||
        parsed != static_cast<int>(rest.size())) {
      throw ValidationError("truth preset must look like depolarizing:p");
    }
    return depolarizing_channel(p);
  }
  return channel_from_json(read_json_file(text));
}

std::size_t gram_rank(const Povm& p) {
  const std::size_t k = p.elements.size();
  ComplexMatrix gram(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      gram.at(a, b) = trace_of_product(p.elements[a], p.elements[b]);
  const EigResult eig = herm_eig(gram);
  std::size_t rank = 0;
  for (double v : eig.values) {
    if (v > 1e-10) ++rank;
  }
  return rank;
}

int run_povm(std::size_t dim, const std::string& out_flag) {
  if (dim < 2 || dim > 8) throw ValidationError("povm dimension must lie in [2, 8]");
  const std::string out = resolve_out(out_flag, "povm.json");
  ensure_writable(out);

  const Povm p = build_min_ic_povm(dim);
  ComplexMatrix sum(dim);
  for (const ComplexMatrix& e : p.elements) sum += e;
  const double residual = frobenius_diff(sum, ComplexMatrix::identity(dim));
  const std::size_t rank = gram_rank(p);

  write_json_file(out, povm_to_json(p));
  print_json({{"command", "povm"},
              {"dim", dim},
              {"elements", p.elements.size()},
              {"identity_residual", residual},
              {"gram_rank", rank},
              {"max_prob_bound", max_prob_bound(dim)},
              {"out", out}});
  return 0;
}

int run_state_tomo(const StateExperimentConfig& cfg, const std::string& truth_text,
                   const std::string& out_flag) {
  const std::string out = resolve_out(out_flag, "state_tomo.json");
  const std::string csv = csv_path_for(out);
  ensure_writable(out);
  ensure_writable(csv);

  const DensityOperator truth = parse_state_truth(truth_text);
  if (truth.dim() != cfg.dim) {
    throw DimensionError("truth state dimension does not match --dim");
  }
  const ConvergenceReport report = run_state_experiment(cfg, truth);

  nlohmann::json rows = nlohmann::json::array();
  std::string table = "shots,cross_prior_distance,prior1_truth,prior2_truth\n";
  for (const ConvergenceRow& row : report.rows) {
    rows.push_back({{"shots", row.shots},
                    {"cross_prior_distance", row.cross_prior_distance},
                    {"prior1_truth", row.prior1_truth},
                    {"prior2_truth", row.prior2_truth}});
    table += std::to_string(row.shots) + ',' +
             format_row({row.cross_prior_distance, row.prior1_truth, row.prior2_truth}) + '\n';
  }
  const nlohmann::json doc{
      {"command", "state-tomo"},
      {"config",
       {{"dim", cfg.dim},
        {"shots", cfg.shots},
        {"particles", cfg.particles},
        {"seed", cfg.seed},
        {"measure", state_measure_name(cfg.measure)},
        {"threshold", cfg.threshold},
        {"truth", truth_text}}},
      {"rows", rows},
      {"converged", report.converged}};
  write_json_file(out, doc);
  write_text_file(csv, table);

  const ConvergenceRow& last = report.rows.back();
  print_json({{"command", "state-tomo"},
              {"converged", report.converged},
              {"final_cross_prior_distance", last.cross_prior_distance},
              {"final_prior1_truth", last.prior1_truth},
              {"final_prior2_truth", last.prior2_truth},
              {"json", out},
              {"csv", csv}});
  return report.converged ? 0 : 1;
}

int run_process_tomo(const ProcessExperimentConfig& cfg, const std::string& truth_text,
                     const std::string& out_flag) {
  const std::string out = resolve_out(out_flag, "process_tomo.json");
  const std::string csv = csv_path_for(out);
  ensure_writable(out);
  ensure_writable(csv);

  const KrausChannel truth = parse_channel_truth(truth_text);
  const ProcessReport report = run_process_experiment(cfg, truth);

  nlohmann::json rows = nlohmann::json::array();
  std::string table = "shots,cross_prior_distance,prior1_truth,prior2_truth,choi_distance\n";
  for (const ProcessRow& row : report.rows) {
    rows.push_back({{"shots", row.shots},
                    {"cross_prior_distance", row.cross_prior_distance},
                    {"prior1_truth", row.prior1_truth},
                    {"prior2_truth", row.prior2_truth},
                    {"choi_distance", row.choi_distance}});
    table += std::to_string(row.shots) + ',' +
             format_row({row.cross_prior_distance, row.prior1_truth, row.prior2_truth,
                         row.choi_distance}) +
             '\n';
  }
  const nlohmann::json doc{
      {"command", "process-tomo"},
      {"config",
       {{"shots", cfg.shots},
        {"particles", cfg.particles},
        {"seed", cfg.seed},
        {"prior1", channel_measure_name(cfg.prior1)},
        {"prior2", channel_measure_name(cfg.prior2)},
        {"kraus_rank", cfg.kraus_rank},
        {"threshold", cfg.threshold},
        {"truth", truth_text}}},
      {"rows", rows},
      {"converged", report.converged}};
  write_json_file(out, doc);
  write_text_file(csv, table);

  const ProcessRow& last = report.rows.back();
  print_json({{"command", "process-tomo"},
              {"converged", report.converged},
              {"final_cross_prior_distance", last.cross_prior_distance},
              {"final_choi_distance", last.choi_distance},
              {"json", out},
              {"csv", csv}});
  return report.converged ? 0 : 1;
}

nlohmann::json demo_anticorrelated() {
  JointDistribution p;
  p.num_trials = 2;
  p.num_outcomes = 2;
  p.table = {0.0, 0.5, 0.5, 0.0};
  p.validate();
  const SymmetryVerdict sym = is_symmetric_distribution(p);
  const ExtendibilityResult ext = is_extendible_distribution(p, 1);
  return {{"command", "definetti-demo"},
          {"case", "anticorrelated"},
          {"symmetric", sym.symmetric},
          {"extendible_one_more", ext.feasible},
          {"certificate", ext.certificate},
          {"ok", sym.symmetric && !ext.feasible && !ext.certificate.empty()}};
}

nlohmann::json demo_ghz(std::uint64_t seed) {
  std::vector<cxd> amp(8, cxd(0.0));
  amp[0] = 1.0 / std::sqrt(2.0);
  amp[7] = 1.0 / std::sqrt(2.0);
  const DensityOperator ghz{outer(amp)};
  const SystemShape three = SystemShape::uniform(3, 2);
  const SymmetryVerdict sym = quantum_symmetric_check(ghz, three);

  Rng rng(seed);
  const std::size_t trials = 20;
  std::size_t rejected = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const DensityOperator sigma = sample_density(2, rng, StateMeasure::kHilbertSchmidt);
    const DensityOperator candidate{kron(ghz.matrix(), sigma.matrix())};
    if (!quantum_extendibility_probe(ghz, three, candidate)) ++rejected;
  }
  return {{"command", "definetti-demo"},
          {"case", "ghz"},
          {"symmetric", sym.symmetric},
          {"product_candidates_tested", trials},
          {"product_candidates_rejected", rejected},
          {"seed", seed},
          {"ok", sym.symmetric && rejected == trials}};
}

nlohmann::json demo_witness() {
  // Fixed mixture: 90% maximally mixed qubit, 10% unit-trace operator with a
  // negative eigenvalue. The growth sequence is 0.9 * 0.5^N + 0.1 * 1.2^N.
  ComplexMatrix half = ComplexMatrix::identity(2);
  half *= cxd(0.5);
  ComplexMatrix bad(2);
  bad.at(0, 0) = 1.2;
  bad.at(1, 1) = -0.2;
  OperatorMixture mix;
  mix.weights = {0.9, 0.1};
  mix.components = {half, bad};
  mix.validate();

  const NegativityWitness witness = negativity_witness(ReconstructedOperator{bad, false});
  std::vector<std::pair<std::size_t, double>> growth;
  std::size_t first_exceeds = 0;
  for (std::size_t n = 2; n <= 200; n += 2) {
    const double value = witness_growth(mix, witness.projector, n);
    growth.emplace_back(n, value);
    if (first_exceeds == 0 && value > 1.0) {
      first_exceeds = n;
      break;
    }
  }
  nlohmann::json doc = witness_report_to_json(witness, growth);
  doc["command"] = "definetti-demo";
  doc["case"] = "witness";
  doc["first_exceeds_one"] = first_exceeds;
  doc["ok"] = first_exceeds != 0;
  return doc;
}

nlohmann::json demo_tp_filter() {
  // Fixed mixture of the identity channel and a trace-inflating scaled map;
  // the mixture trace follows 0.5 + 0.5 * 1.1^N.
  ComplexMatrix scaled = ComplexMatrix::identity(2);
  scaled *= cxd(std::sqrt(1.1));
  const KrausChannel inflating{2, {std::move(scaled)}};
  const DensityOperator rho{[] {
    ComplexMatrix m = ComplexMatrix::identity(2);
    m *= cxd(0.5);
    return m;
  }()};
  const TpFilterReport report =
      tp_filter_demo({0.5, 0.5}, {identity_channel(2), inflating}, rho, 10);

  nlohmann::json rows = nlohmann::json::array();
  for (const TpFilterRow& row : report.rows) {
    rows.push_back(nlohmann::json::array({row.copies, row.value}));
  }
  return {{"command", "definetti-demo"},
          {"case", "tp-filter"},
          {"all_trace_preserving", report.all_trace_preserving},
          {"first_violation", report.first_violation},
          {"rows", rows},
          {"ok", !report.all_trace_preserving && report.first_violation != 0}};
}

int run_demo(const std::string& which, std::uint64_t seed, const std::string& out_flag) {
  nlohmann::json doc;
  if (which == "anticorrelated") {
    doc = demo_anticorrelated();
  } else if (which == "ghz") {
    doc = demo_ghz(seed);
  } else if (which == "witness") {
    doc = demo_witness();
  } else if (which == "tp-filter") {
    doc = demo_tp_filter();
  } else {
    throw ValidationError("unknown demo case '" + which +
                          "' (expected anticorrelated, ghz, witness, or tp-filter)");
  }
  if (!out_flag.empty()) {
    ensure_writable(out_flag);
    write_json_file(out_flag, doc);
  }
  print_json(doc);
  return doc["ok"].get<bool>() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bayesian quantum state and process tomography toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string truth_text;
  std::string out_path;

  auto* povm_cmd = app.add_subcommand("povm", "Build and validate a minimal IC POVM");
  std::size_t povm_dim = 2;
  auto* povm_dim_opt = povm_cmd->add_option("--dim", povm_dim, "Hilbert space dimension (2-8)");
  auto* povm_out_opt = povm_cmd->add_option("--out", out_path, "Output JSON path");
  povm_cmd->add_option("--config", config_path, "JSON config file");

  auto* state_cmd = app.add_subcommand("state-tomo", "Two-prior state tomography experiment");
  StateExperimentConfig state_cfg;
  std::string state_measure = state_measure_name(state_cfg.measure);
  auto* s_dim = state_cmd->add_option("--dim", state_cfg.dim, "Hilbert space dimension");
  auto* s_shots = state_cmd->add_option("--shots", state_cfg.shots, "Measurement count");
  auto* s_particles = state_cmd->add_option("--particles", state_cfg.particles, "Particle count");
  auto* s_seed = state_cmd->add_option("--seed", state_cfg.seed, "Deterministic seed");
  auto* s_measure =
      state_cmd->add_option("--measure", state_measure,
                            "Prior measure: hilbert-schmidt, bures-like, or pure-haar");
  auto* s_truth = state_cmd->add_option("--truth", truth_text,
                                        "Truth state: bloch:x,y,z or a density JSON path");
  auto* s_out = state_cmd->add_option("--out", out_path, "Report JSON path (CSV sits beside it)");
  state_cmd->add_option("--config", config_path, "JSON config file");

  auto* process_cmd =
      app.add_subcommand("process-tomo", "Entanglement-assisted process tomography experiment");
  ProcessExperimentConfig process_cfg;
  std::string process_measure = channel_measure_name(process_cfg.prior1);
  std::size_t process_dim = 2;
  auto* p_dim = process_cmd->add_option("--dim", process_dim, "Channel dimension (must be 2)");
  auto* p_shots = process_cmd->add_option("--shots", process_cfg.shots, "Measurement count");
  auto* p_particles =
      process_cmd->add_option("--particles", process_cfg.particles, "Particle count");
  auto* p_seed = process_cmd->add_option("--seed", process_cfg.seed, "Deterministic seed");
  auto* p_measure = process_cmd->add_option(
      "--measure", process_measure, "Primary channel prior: isometry, pauli, or mixed");
  auto* p_truth = process_cmd->add_option(
      "--truth", truth_text, "Truth channel: identity, depolarizing:p, or a channel JSON path");
  auto* p_out =
      process_cmd->add_option("--out", out_path, "Report JSON path (CSV sits beside it)");
  process_cmd->add_option("--config", config_path, "JSON config file");

  auto* demo_cmd = app.add_subcommand("definetti-demo", "Exchangeability demonstrations");
  std::string demo_case;
  std::uint64_t demo_seed = 42;
  demo_cmd->add_option("--case", demo_case,
                       "One of: anticorrelated, ghz, witness, tp-filter")
      ->required();
  demo_cmd->add_option("--seed", demo_seed, "Seed for randomized demo inputs");
  demo_cmd->add_option("--out", out_path, "Optional verdict JSON path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("usage", e.what(), 2);
  }

  try {
    nlohmann::json cfg = nlohmann::json::object();
    if (!config_path.empty()) cfg = require_object(read_json_file(config_path));

    if (povm_cmd->parsed()) {
      merge_count(cfg, "dim", povm_dim_opt, povm_dim);
      merge_string(cfg, "out", povm_out_opt, out_path);
      return run_povm(povm_dim, out_path);
    }
    if (state_cmd->parsed()) {
      merge_count(cfg, "dim", s_dim, state_cfg.dim);
      merge_count(cfg, "shots", s_shots, state_cfg.shots);
      merge_count(cfg, "particles", s_particles, state_cfg.particles);
      merge_seed(cfg, "seed", s_seed, state_cfg.seed);
      merge_string(cfg, "measure", s_measure, state_measure);
      merge_string(cfg, "truth", s_truth, truth_text);
      merge_string(cfg, "out", s_out, out_path);
      merge_threshold(cfg, state_cfg.threshold);
      state_cfg.measure = parse_state_measure(state_measure);
      if (truth_text.empty()) truth_text = "bloch:0,0,0.5";
      return run_state_tomo(state_cfg, truth_text, out_path);
    }
    if (process_cmd->parsed()) {
      merge_count(cfg, "dim", p_dim, process_dim);
      merge_count(cfg, "shots", p_shots, process_cfg.shots);
      merge_count(cfg, "particles", p_particles, process_cfg.particles);
      merge_seed(cfg, "seed", p_seed, process_cfg.seed);
      merge_string(cfg, "measure", p_measure, process_measure);
      merge_string(cfg, "truth", p_truth, truth_text);
      merge_string(cfg, "out", p_out, out_path);
      merge_threshold(cfg, process_cfg.threshold);
      merge_count(cfg, "kraus_rank", p_dim /* never set by flag */, process_cfg.kraus_rank);
      if (cfg.contains("prior2")) {
        if (!cfg["prior2"].is_string()) {
          throw ValidationError("config key 'prior2' must be a string");
        }
        process_cfg.prior2 = parse_channel_measure(cfg["prior2"].get<std::string>());
      }
      if (process_dim != 2) throw ValidationError("process tomography supports --dim 2 only");
      process_cfg.prior1 = parse_channel_measure(process_measure);
      if (truth_text.empty()) truth_text = "depolarizing:0.3";
      return run_process_tomo(process_cfg, truth_text, out_path);
    }
    return run_demo(demo_case, demo_seed, out_path);
  } catch (const std::exception& e) {
    const ErrorInfo info = classify(e);
    return emit_error(info.kind, e.what(), info.code);
  }
}
