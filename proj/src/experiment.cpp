#include "ecm/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <set>

#include <omp.h>

#include "ecm/asymptotics.hpp"
#include "ecm/edge_list.hpp"
#include "ecm/regimes.hpp"
#include "ecm/spectrum.hpp"
#include "ecm/triangles.hpp"

namespace ecm {

namespace {

using nlohmann::json;

const std::map<std::string, ExperimentKind>& experiment_names() {
  static const std::map<std::string, ExperimentKind> names{
      {"spectrum", ExperimentKind::spectrum},       {"regimes", ExperimentKind::regimes},
      {"crossover", ExperimentKind::crossover},     {"theory", ExperimentKind::theory},
      {"compare_hvm", ExperimentKind::compare_hvm}, {"ingest", ExperimentKind::ingest},
      {"connection_check", ExperimentKind::connection_check}};
  return names;
}

std::string kernel_name(HvmKernel k) { return k == HvmKernel::exponential ? "exponential" : "truncated_product"; }
std::string weights_name(WeightSource w) { return w == WeightSource::reuse_degrees ? "reuse_degrees" : "fresh_powerlaw"; }

// Runs body(r) for r in [0, count) over `workers` threads; results stay
// indexed by replica so merges are independent of scheduling.
template <class T, class Body>
std::vector<T> run_replicas(std::int64_t count, int workers, Body body) {
  std::vector<std::optional<T>> slots(static_cast<std::size_t>(count));
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
  for (std::int64_t r = 0; r < count; ++r) {
    try {
      slots[static_cast<std::size_t>(r)].emplace(body(static_cast<std::uint64_t>(r)));
    } catch (...) {
#pragma omp critical(ecm_replica_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<T> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

json replica_record(const EcmReplica& rep, const ModelParams& params) {
  return {{"replica", rep.replica},
          {"stream_seed", rep.stream_seed},
          {"l_n", rep.degrees->l_n},
          {"d_max", rep.degrees->d_max},
          {"parity_fixed", rep.degrees->parity_fixed},
          {"jn_holds", jn_holds(*rep.degrees, params)}};
}

std::string range_cell(std::int64_t k, std::int64_t n, double tau) {
  return std::string(to_string(classify_range(static_cast<double>(k), static_cast<double>(n), tau)));
}

double normalized(double c, std::int64_t k, std::int64_t n, const ModelParams& params) {
  try {
    return c / f_scale(k, n, params);
  } catch (const std::exception&) {
    return std::nan("");
  }
}

void spectrum_rows(csv::Table& t, const ClusteringSpectrum& s, const std::optional<ModelParams>& params,
                   std::int64_t replica) {
  const auto n = static_cast<std::int64_t>(s.n);
  for (const auto& [k, e] : s.per_k) {
    if (params)
      t.row(k, e.vertices, e.delta, e.c, normalized(e.c, k, n, *params), range_cell(k, n, params->tau), n,
            params->tau, replica);
    else
      t.row(k, e.vertices, e.delta, e.c, std::nan(""), "", n, std::nan(""), replica);
  }
}

void binned_rows(csv::Table& t, const BinnedSpectrum& b, std::int64_t replica) {
  for (const auto& bin : b.bins)
    t.row(bin.k_lo, bin.k_hi, bin.mean_k, bin.mean_c, bin.c_std_err, bin.vertices, replica);
}

struct SpectrumReplica {
  json record;
  ClusteringSpectrum spectrum;
};

void run_spectrum(const ExperimentConfig& c, const ModelParams& params, RunResult& result) {
  auto reps = run_replicas<SpectrumReplica>(c.replicas, c.workers, [&](std::uint64_t r) {
    const auto rep = generate_ecm_replica(params, r);
    return SpectrumReplica{replica_record(rep, params), clustering_spectrum(rep.graph)};
  });
  csv::Table table(csv::kSpectrumHeader);
  csv::Table binned(csv::kBinnedHeader);
  std::vector<ClusteringSpectrum> spectra;
  for (std::size_t r = 0; r < reps.size(); ++r) {
    result.manifest["replicas"].push_back(reps[r].record);
    if (c.emit_raw) {
      spectrum_rows(table, reps[r].spectrum, params, static_cast<std::int64_t>(r));
      binned_rows(binned, log_bin(reps[r].spectrum, c.bin_base), static_cast<std::int64_t>(r));
    }
    spectra.push_back(std::move(reps[r].spectrum));
  }
  const auto pooled = pool_spectra(spectra);
  spectrum_rows(table, pooled, params, -1);
  binned_rows(binned, log_bin(pooled, c.bin_base), -1);
  result.outputs.push_back(table.write(c.output_path, "spectrum.csv"));
  result.outputs.push_back(binned.write(c.output_path, "spectrum_binned.csv"));
}

struct RegimeReplica {
  json record;
  std::vector<std::int64_t> ks;
  std::vector<TriangleDecomposition> parts;  // ks.size() x epsilon_sweep.size()
};

void run_regimes(const ExperimentConfig& c, const ModelParams& params, RunResult& result) {
  auto reps = run_replicas<RegimeReplica>(c.replicas, c.workers, [&](std::uint64_t r) {
    const auto rep = generate_ecm_replica(params, r);
    std::set<std::int64_t> present;
    for (auto d : rep.graph.erased_degrees())
      if (d >= 2 && (!c.k_min || d >= *c.k_min) && (!c.k_max || d <= *c.k_max)) present.insert(d);
    RegimeReplica out{replica_record(rep, params), {present.begin(), present.end()}, {}};
    std::vector<RegimeWindow> windows;
    for (auto k : out.ks)
      for (double eps : c.epsilon_sweep) windows.push_back(RegimeWindow::make(k, params, eps));
    out.parts = decompose_triangles(rep.graph, *rep.degrees, windows);
    return out;
  });

  csv::Table table(csv::kRegimesHeader);
  std::map<std::pair<std::int64_t, std::size_t>, std::pair<std::uint64_t, std::uint64_t>> pooled;
  const std::size_t ne = c.epsilon_sweep.size();
  for (std::size_t r = 0; r < reps.size(); ++r) {
    result.manifest["replicas"].push_back(reps[r].record);
    for (std::size_t i = 0; i < reps[r].ks.size(); ++i)
      for (std::size_t e = 0; e < ne; ++e) {
        const auto& d = reps[r].parts[i * ne + e];
        table.row(reps[r].ks[i], c.epsilon_sweep[e], d.delta_k_total, d.delta_k_window, d.fraction,
                  static_cast<std::int64_t>(r));
        auto& acc = pooled[{reps[r].ks[i], e}];
        acc.first += d.delta_k_total;
        acc.second += d.delta_k_window;
      }
  }
  for (const auto& [key, acc] : pooled) {
    std::optional<double> fraction;
    if (acc.first > 0) fraction = static_cast<double>(acc.second) / static_cast<double>(acc.first);
    table.row(key.first, c.epsilon_sweep[key.second], acc.first, acc.second, fraction, std::int64_t{-1});
  }
  result.outputs.push_back(table.write(c.output_path, "regimes.csv"));
}

void run_crossover(const ExperimentConfig& c, const ModelParams& params, RunResult& result) {
  const auto grid = c.b_grid.empty() ? default_b_grid() : c.b_grid;
  std::vector<double> values(grid.size());
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(c.workers)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(grid.size()); ++i) {
    try {
      values[static_cast<std::size_t>(i)] = ck_crossover(grid[static_cast<std::size_t>(i)], params).value;
    } catch (...) {
#pragma omp critical(ecm_crossover_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  csv::Table table(csv::kCrossoverHeader);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double B = grid[i];
    const double two = B < 1.0 ? range_two_constant(params) * std::log(1.0 / (B * B)) : std::nan("");
    const double three = range_three_constant(params) * std::pow(B, 2.0 * params.tau - 6.0);
    table.row(B, values[i], two, three);
  }
  result.outputs.push_back(table.write(c.output_path, "crossover.csv"));
}

void run_theory(const ExperimentConfig& c, const ModelParams& params, RunResult& result) {
  const auto grid = c.k_grid.empty() ? default_k_grid(c.n, c.tau) : c.k_grid;
  const auto curve = theory_curve(c.n, grid, params);
  csv::Table table(csv::kTheoryHeader);
  for (const auto& p : curve.points) {
    double f = std::nan("");
    try {
      f = f_scale(p.k, c.n, params);
    } catch (const std::exception&) {
    }
    table.row(p.k, p.predicted_c, f, to_string(p.range),
              p.method == TheoryMethod::crossover ? "crossover" : "range_limit");
  }
  result.outputs.push_back(table.write(c.output_path, "theory.csv"));
}

struct CompareReplica {
  json record;
  ClusteringSpectrum ecm;
  ClusteringSpectrum hvm;
};

void run_compare_hvm(const ExperimentConfig& c, const ModelParams& params, RunResult& result) {
  HvmParams hp{c.kernel, c.weights, params};
  auto reps = run_replicas<CompareReplica>(c.replicas, c.workers, [&](std::uint64_t r) {
    Stream stream(0);
    const auto rep = generate_ecm_replica(params, r, &stream);
    const auto weights = hvm_weights(hp, rep.degrees.get(), stream);
    const auto hvm = generate_hvm(weights, hp, stream);
    return CompareReplica{replica_record(rep, params), clustering_spectrum(rep.graph), clustering_spectrum(hvm)};
  });
  std::vector<ClusteringSpectrum> ecm, hvm;
  for (auto& rep : reps) {
    result.manifest["replicas"].push_back(rep.record);
    ecm.push_back(std::move(rep.ecm));
    hvm.push_back(std::move(rep.hvm));
  }
  const auto cmp = compare_spectra(pool_spectra(ecm), pool_spectra(hvm), c.bin_base);
  csv::Table table(csv::kCompareHeader);
  for (const auto& row : cmp.rows)
    table.row(row.k_lo, row.k_hi, row.mean_k, row.ecm_c, row.hvm_c, row.ratio, row.std_err, row.ecm_vertices,
              row.hvm_vertices);
  result.manifest["omitted_bins"] = cmp.omitted;
  result.outputs.push_back(table.write(c.output_path, "compare_hvm.csv"));
}

void run_connection_check(const ExperimentConfig& c, const ModelParams& params, RunResult& result) {
  auto reps = run_replicas<EcmReplica>(c.replicas, c.workers,
                                       [&](std::uint64_t r) { return generate_ecm_replica(params, r); });
  std::vector<ReplicaView> views;
  Degree max_degree = 1;
  for (const auto& rep : reps) {
    result.manifest["replicas"].push_back(replica_record(rep, params));
    views.push_back({&rep.graph, rep.degrees.get()});
    max_degree = std::max(max_degree, rep.degrees->d_max);
  }
  const auto cells = default_degree_cells(max_degree);
  const auto rows = empirical_connection_probability(views, cells);
  csv::Table table(csv::kConnectionHeader);
  for (const auto& row : rows)
    table.row(row.cell.u.lo, row.cell.u.hi, row.cell.v.lo, row.cell.v.hi, row.pairs, row.empirical_p, row.model_p,
              row.std_err);
  result.outputs.push_back(table.write(c.output_path, "connection_check.csv"));
}

void run_ingest(const ExperimentConfig& c, RunResult& result) {
  const auto el = ingest_edge_list(c.input, IngestDirectives{!c.lenient, c.allow_extra_columns});
  const auto g = el.to_simple_graph();
  std::optional<ModelParams> params;
  const auto n = static_cast<std::int64_t>(g.num_vertices());
  if (c.tau_given && n >= 1) params = ModelParams::create(c.tau, n, c.seed);
  const auto spec = clustering_spectrum(g);
  csv::Table table(csv::kSpectrumHeader);
  spectrum_rows(table, spec, params, -1);
  csv::Table binned(csv::kBinnedHeader);
  binned_rows(binned, log_bin(spec, c.bin_base), -1);
  const auto& p = el.provenance;
  result.manifest["provenance"] = {{"source", p.source},         {"lines", p.lines},
                                   {"parsed", p.parsed},         {"comments", p.comments},
                                   {"blank", p.blank},           {"self_loops", p.self_loops},
                                   {"duplicates", p.duplicates}, {"malformed", p.malformed},
                                   {"vertices", g.num_vertices()}, {"edges", g.num_edges()}};
  result.outputs.push_back(table.write(c.output_path, "spectrum.csv"));
  result.outputs.push_back(binned.write(c.output_path, "spectrum_binned.csv"));
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [name, k] : experiment_names())
    if (k == kind) return name;
  return "unknown";
}

ExperimentKind parse_experiment(const std::string& name) {
  std::string key = name;
  std::replace(key.begin(), key.end(), '-', '_');
  const auto& names = experiment_names();
  auto it = names.find(key);
  if (it == names.end()) throw ConfigError("unknown experiment '" + name + "'");
  return it->second;
}

void ExperimentConfig::validate() const {
  const bool uses_model = experiment != ExperimentKind::ingest || tau_given;
  if (uses_model && !(tau > 2.0 && tau < 3.0)) throw ConfigError("tau must lie strictly inside (2,3)");
  if (experiment != ExperimentKind::ingest && n < 2) throw ConfigError("n must be at least 2");
  if (replicas < 1) throw ConfigError("replicas must be at least 1");
  if (workers < 1) throw ConfigError("workers must be at least 1");
  if (!(bin_base > 1.0)) throw ConfigError("bin_base must exceed 1");
  if (epsilon_sweep.empty()) throw ConfigError("epsilon sweep must not be empty");
  for (double e : epsilon_sweep)
    if (!(e > 0.0 && e < 1.0)) throw ConfigError("epsilon values must lie in (0,1)");
  for (auto k : k_grid)
    if (k < 2) throw ConfigError("k grid entries must be at least 2");
  for (double b : b_grid)
    if (!(b > 0.0) || !std::isfinite(b)) throw ConfigError("B grid entries must be positive");
  if (k_min && k_max && *k_min > *k_max) throw ConfigError("k_min exceeds k_max");
  if (experiment == ExperimentKind::ingest && input.empty()) throw ConfigError("ingest needs an input path");
  if (output_path.empty()) throw ConfigError("output path must not be empty");
}

ExperimentConfig config_from_json(const json& j, ExperimentConfig c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{
      "experiment", "tau",    "n",      "seed",   "replicas", "epsilon", "bin_base", "out",
      "emit_raw",   "workers", "k_grid", "b_grid", "k_min",    "k_max",   "kernel",   "weights",
      "input",      "lenient", "allow_extra_columns"};
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw ConfigError("unknown config key '" + key + "'");
  try {
    if (j.contains("experiment")) c.experiment = parse_experiment(j.at("experiment").get<std::string>());
    if (j.contains("tau")) c.tau = j.at("tau").get<double>();
    if (j.contains("n")) c.n = j.at("n").get<std::int64_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("replicas")) c.replicas = j.at("replicas").get<std::int64_t>();
    if (j.contains("epsilon")) c.epsilon_sweep = j.at("epsilon").get<std::vector<double>>();
    if (j.contains("bin_base")) c.bin_base = j.at("bin_base").get<double>();
    if (j.contains("out")) c.output_path = j.at("out").get<std::string>();
    if (j.contains("emit_raw")) c.emit_raw = j.at("emit_raw").get<bool>();
    if (j.contains("workers")) c.workers = j.at("workers").get<int>();
    if (j.contains("k_grid")) c.k_grid = j.at("k_grid").get<std::vector<std::int64_t>>();
    if (j.contains("b_grid")) c.b_grid = j.at("b_grid").get<std::vector<double>>();
    if (j.contains("k_min")) c.k_min = j.at("k_min").get<std::int64_t>();
    if (j.contains("k_max")) c.k_max = j.at("k_max").get<std::int64_t>();
    if (j.contains("kernel")) {
      const auto k = j.at("kernel").get<std::string>();
      if (k == "exponential") c.kernel = HvmKernel::exponential;
      else if (k == "truncated_product") c.kernel = HvmKernel::truncated_product;
      else throw ConfigError("unknown kernel '" + k + "'");
    }
    if (j.contains("weights")) {
      const auto w = j.at("weights").get<std::string>();
      if (w == "reuse_degrees") c.weights = WeightSource::reuse_degrees;
      else if (w == "fresh_powerlaw") c.weights = WeightSource::fresh_powerlaw;
      else throw ConfigError("unknown weight source '" + w + "'");
    }
    if (j.contains("input")) c.input = j.at("input").get<std::string>();
    if (j.contains("lenient")) c.lenient = j.at("lenient").get<bool>();
    if (j.contains("allow_extra_columns")) c.allow_extra_columns = j.at("allow_extra_columns").get<bool>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  }
  return c;
}

json to_json(const ExperimentConfig& c) {
  json j{{"experiment", to_string(c.experiment)},
         {"tau", c.tau},
         {"n", c.n},
         {"seed", c.seed},
         {"replicas", c.replicas},
         {"epsilon", c.epsilon_sweep},
         {"bin_base", c.bin_base},
         {"out", c.output_path.string()},
         {"emit_raw", c.emit_raw},
         {"workers", c.workers},
         {"k_grid", c.k_grid},
         {"b_grid", c.b_grid},
         {"kernel", kernel_name(c.kernel)},
         {"weights", weights_name(c.weights)},
         {"lenient", c.lenient},
         {"allow_extra_columns", c.allow_extra_columns}};
  if (c.k_min) j["k_min"] = *c.k_min;
  if (c.k_max) j["k_max"] = *c.k_max;
  if (!c.input.empty()) j["input"] = c.input.string();
  return j;
}

EcmReplica generate_ecm_replica(const ModelParams& params, std::uint64_t replica, Stream* stream) {
  const std::uint64_t seed = derive_seed(params.seed, replica);
  Stream local(seed);
  Stream& s = stream ? (*stream = Stream(seed), *stream) : local;
  auto degs = std::make_shared<const DegreeSequence>(sample_degrees(params, s));
  auto mg = pair_half_edges(degs, s);
  auto g = erase(mg);
  return EcmReplica{replica, seed, std::move(degs), std::move(mg), std::move(g)};
}

std::vector<std::int64_t> default_k_grid(std::int64_t n, double tau, int points) {
  const double hi = std::floor(std::pow(static_cast<double>(n), 1.0 / (tau - 1.0)));
  std::vector<std::int64_t> grid;
  if (hi < 2) return grid;
  for (int i = 0; i < points; ++i) {
    const double k = 2.0 * std::pow(hi / 2.0, static_cast<double>(i) / (points - 1));
    const auto kk = std::clamp<std::int64_t>(std::llround(k), 2, static_cast<std::int64_t>(hi));
    if (grid.empty() || grid.back() != kk) grid.push_back(kk);
  }
  return grid;
}

std::vector<double> default_b_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 30; ++i) grid.push_back(std::pow(10.0, -3.0 + 5.0 * i / 30.0));
  return grid;
}

RunResult run(const ExperimentConfig& config) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();
  std::filesystem::create_directories(config.output_path);

  RunResult result;
  result.manifest = {{"tool", "ecmclust"},
                     {"version", ECM_VERSION},
                     {"csv_schema_version", csv::kSchemaVersion},
                     {"experiment", to_string(config.experiment)},
                     {"config", to_json(config)},
                     {"replicas", json::array()}};

  if (config.experiment == ExperimentKind::ingest) {
    run_ingest(config, result);
  } else {
    const auto params = ModelParams::create(config.tau, config.n, config.seed);
    result.manifest["constants"] = {{"C", params.c_norm}, {"mu", params.mu}, {"A", params.a_const}};
    switch (config.experiment) {
      case ExperimentKind::spectrum:
        run_spectrum(config, params, result);
        break;
      case ExperimentKind::regimes:
        run_regimes(config, params, result);
        break;
      case ExperimentKind::crossover:
        run_crossover(config, params, result);
        break;
      case ExperimentKind::theory:
        run_theory(config, params, result);
        break;
      case ExperimentKind::compare_hvm:
        run_compare_hvm(config, params, result);
        break;
      case ExperimentKind::connection_check:
        run_connection_check(config, params, result);
        break;
      case ExperimentKind::ingest:
        break;
    }
  }

  json outputs = json::array();
  for (const auto& o : result.outputs) outputs.push_back({{"file", o.file}, {"rows", o.rows}, {"sha256", o.sha256}});
  result.manifest["outputs"] = outputs;
  result.manifest["wall_time_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  std::ofstream m(config.output_path / "manifest.json");
  if (!m) throw std::filesystem::filesystem_error("cannot write manifest", config.output_path / "manifest.json",
                                          std::make_error_code(std::errc::io_error));
  m << result.manifest.dump(2) << '\n';
  return result;
}

}  // namespace ecm
