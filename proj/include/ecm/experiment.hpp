#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecm/csv.hpp"
#include "ecm/degrees.hpp"
#include "ecm/hidden_variable.hpp"
#include "ecm/multigraph.hpp"
#include "ecm/params.hpp"
#include "ecm/simple_graph.hpp"

namespace ecm {

enum class ExperimentKind { spectrum, regimes, crossover, theory, compare_hvm, ingest, connection_check };

std::string to_string(ExperimentKind kind);
/// Accepts both "compare_hvm" and the CLI spelling "compare-hvm".
ExperimentKind parse_experiment(const std::string& name);

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::spectrum;
  double tau = 2.5;
  std::int64_t n = 10000;
  std::uint64_t seed = 1;
  std::int64_t replicas = 1;
  std::vector<double> epsilon_sweep{0.5, 0.2, 0.1, 0.05};
  double bin_base = 1.3;
  std::filesystem::path output_path = "out";
  bool emit_raw = false;
  int workers = 1;

  // theory / crossover grids; empty selects the default grid
  std::vector<std::int64_t> k_grid;
  std::vector<double> b_grid;
  // regimes: optional focal-degree window
  std::optional<std::int64_t> k_min;
  std::optional<std::int64_t> k_max;
  // compare-hvm
  HvmKernel kernel = HvmKernel::exponential;
  WeightSource weights = WeightSource::reuse_degrees;
  // ingest
  std::filesystem::path input;
  bool lenient = false;
  bool allow_extra_columns = false;
  bool tau_given = true;  // ingest normalizes by f(k,n) only when tau was supplied

  /// Throws ConfigError on any invalid field.
  void validate() const;
};

/// Reads the keys written by to_json; unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentConfig base = {});
nlohmann::json to_json(const ExperimentConfig& c);

/// One configuration-model replica and its erased projection.
struct EcmReplica {
  std::uint64_t replica = 0;
  std::uint64_t stream_seed = 0;
  std::shared_ptr<const DegreeSequence> degrees;
  MultiGraph multigraph;
  SimpleGraph graph;
};

/// Degrees, matching and erasure from the stream derived from (seed, replica).
/// `stream` is left positioned after the matching when supplied.
EcmReplica generate_ecm_replica(const ModelParams& params, std::uint64_t replica, Stream* stream = nullptr);

struct RunResult {
  std::vector<csv::OutputRecord> outputs;
  nlohmann::json manifest;
};

/// Runs the experiment, writes CSVs plus manifest.json into output_path.
RunResult run(const ExperimentConfig& config);

/// Default integer k grid, roughly log-spaced on [2, n^(1/(tau-1))].
std::vector<std::int64_t> default_k_grid(std::int64_t n, double tau, int points = 40);
std::vector<double> default_b_grid();

}  // namespace ecm
