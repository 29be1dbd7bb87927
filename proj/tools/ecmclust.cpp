// ecmclust: configuration-model clustering experiments.
//
//   ecmclust spectrum --n 100000 --tau 2.5 --replicas 20 --seed 7 --out runs/spectrum
//   ecmclust ingest --input graph.txt --out runs/real
//
// Every run writes CSV tables plus manifest.json into --out. Failures print a
// single JSON error record on stderr and exit non-zero.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ecm/edge_list.hpp"
#include "ecm/experiment.hpp"

namespace {

enum ExitCode { kOk = 0, kConfig = 2, kIo = 3, kInternal = 4 };

struct Flags {
  std::optional<std::int64_t> n;
  std::optional<double> tau;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> replicas;
  std::vector<double> epsilon;
  std::optional<double> bin_base;
  std::optional<std::string> out;
  std::optional<int> workers;
  std::string config;
  bool emit_raw = false;
  std::vector<std::int64_t> k;
  std::vector<double> b;
  std::optional<std::int64_t> k_min;
  std::optional<std::int64_t> k_max;
  std::optional<std::string> kernel;
  std::optional<std::string> weights;
  std::optional<std::string> input;
  bool lenient = false;
  bool allow_extra_columns = false;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--n", f.n, "number of vertices");
  cmd->add_option("--tau", f.tau, "degree exponent in (2,3)");
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--replicas", f.replicas, "number of independent replicas");
  cmd->add_option("--epsilon", f.epsilon, "window epsilon (repeatable)")->take_all();
  cmd->add_option("--bin-base", f.bin_base, "geometric bin ratio");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--workers", f.workers, "replica worker threads");
  cmd->add_option("--config", f.config, "JSON config file; flags override its values");
  cmd->add_flag("--emit-raw", f.emit_raw, "also write per-replica rows");
}

int fail(ExitCode code, const std::string& kind, const std::string& message) {
  nlohmann::json err{{"status", "error"}, {"kind", kind}, {"message", message}};
  std::cerr << err.dump() << '\n';
  return code;
}

ecm::ExperimentConfig build_config(ecm::ExperimentKind kind, const Flags& f) {
  ecm::ExperimentConfig c;
  c.experiment = kind;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw std::filesystem::filesystem_error("cannot open config", f.config,
                                              std::make_error_code(std::errc::no_such_file_or_directory));
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ecm::ConfigError("config is not valid JSON: " + std::string(e.what()));
    }
    c = ecm::config_from_json(j, c);
    if (c.experiment != kind) throw ecm::ConfigError("config experiment does not match the subcommand");
  }
  if (f.n) c.n = *f.n;
  if (f.tau) c.tau = *f.tau;
  if (kind == ecm::ExperimentKind::ingest && !f.tau && f.config.empty()) c.tau_given = false;
  if (f.seed) c.seed = *f.seed;
  if (f.replicas) c.replicas = *f.replicas;
  if (!f.epsilon.empty()) c.epsilon_sweep = f.epsilon;
  if (f.bin_base) c.bin_base = *f.bin_base;
  if (f.out) c.output_path = *f.out;
  if (f.workers) c.workers = *f.workers;
  if (f.emit_raw) c.emit_raw = true;
  if (!f.k.empty()) c.k_grid = f.k;
  if (!f.b.empty()) c.b_grid = f.b;
  if (f.k_min) c.k_min = f.k_min;
  if (f.k_max) c.k_max = f.k_max;
  nlohmann::json extra = nlohmann::json::object();
  if (f.kernel) extra["kernel"] = *f.kernel;
  if (f.weights) extra["weights"] = *f.weights;
  if (!extra.empty()) c = ecm::config_from_json(extra, c);
  if (f.input) c.input = *f.input;
  if (f.lenient) c.lenient = true;
  if (f.allow_extra_columns) c.allow_extra_columns = true;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clustering spectrum experiments on the erased configuration model"};
  app.set_version_flag("--version", std::string(ECM_VERSION));
  app.require_subcommand(1);
  Flags flags;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"spectrum", "pooled c(k) of erased configuration-model replicas"},
      {"regimes", "triangle decomposition by contributing-degree windows"},
      {"crossover", "c(k)/n^(2-tau) at k = B sqrt(n) against the range limits"},
      {"theory", "predicted c(k) on a k grid"},
      {"compare-hvm", "erased configuration model against a hidden-variable model"},
      {"connection-check", "empirical adjacency frequency against 1 - exp(-d_u d_v / L_n)"},
      {"ingest", "c(k) of a whitespace-separated edge list"}};
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, flags);
    subs.push_back(cmd);
  }
  app.get_subcommand("theory")->add_option("--k", flags.k, "k grid point (repeatable)")->take_all();
  app.get_subcommand("crossover")->add_option("--b", flags.b, "B grid point (repeatable)")->take_all();
  app.get_subcommand("regimes")->add_option("--k-min", flags.k_min, "smallest focal degree");
  app.get_subcommand("regimes")->add_option("--k-max", flags.k_max, "largest focal degree");
  app.get_subcommand("compare-hvm")->add_option("--kernel", flags.kernel, "exponential | truncated_product");
  app.get_subcommand("compare-hvm")->add_option("--weights", flags.weights, "reuse_degrees | fresh_powerlaw");
  auto* ingest = app.get_subcommand("ingest");
  ingest->add_option("--input", flags.input, "edge list path")->required();
  ingest->add_flag("--lenient", flags.lenient, "skip malformed lines instead of failing");
  ingest->add_flag("--allow-extra-columns", flags.allow_extra_columns, "ignore tokens after the first two");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail(kConfig, "usage", e.what());
  }

  try {
    ecm::ExperimentKind kind{};
    for (auto* cmd : subs)
      if (cmd->parsed()) kind = ecm::parse_experiment(cmd->get_name());
    const auto config = build_config(kind, flags);
    const auto result = ecm::run(config);
    for (const auto& o : result.outputs)
      std::cout << (config.output_path / o.file).string() << " rows=" << o.rows << '\n';
    return kOk;
  } catch (const ecm::ConfigError& e) {
    return fail(kConfig, "config", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kConfig, "config", e.what());
  } catch (const ecm::ParseError& e) {
    return fail(kIo, "parse", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(kIo, "io", e.what());
  } catch (const std::exception& e) {
    return fail(kInternal, "runtime", e.what());
  }
}
