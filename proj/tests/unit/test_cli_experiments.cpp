#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ecm/csv.hpp"
#include "ecm/edge_list.hpp"
#include "ecm/experiment.hpp"
#include "ecm/spectrum.hpp"

using namespace ecm;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("ecm_cli_" + std::to_string(::getpid())) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

int run_cli(const std::string& args, const fs::path& err_file) {
  const std::string cmd = std::string(ECMCLUST_BIN) + " " + args + " >/dev/null 2>" + err_file.string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

ExperimentConfig base_config(ExperimentKind kind, const fs::path& out) {
  ExperimentConfig c;
  c.experiment = kind;
  c.output_path = out;
  return c;
}

}  // namespace

TEST_CASE("experiment names") {
  CHECK(parse_experiment("compare-hvm") == ExperimentKind::compare_hvm);
  CHECK(parse_experiment("compare_hvm") == ExperimentKind::compare_hvm);
  CHECK(parse_experiment("connection-check") == ExperimentKind::connection_check);
  CHECK(to_string(ExperimentKind::regimes) == "regimes");
  CHECK_THROWS_AS(parse_experiment("plot"), ConfigError);
}

TEST_CASE("config validation") {
  ExperimentConfig c;
  CHECK_NOTHROW(c.validate());
  auto bad = [](auto mutate) {
    ExperimentConfig x;
    mutate(x);
    CHECK_THROWS_AS(x.validate(), ConfigError);
  };
  bad([](auto& x) { x.replicas = 0; });
  bad([](auto& x) { x.tau = 3.0; });
  bad([](auto& x) { x.epsilon_sweep = {0.5, 1.0}; });
  bad([](auto& x) { x.epsilon_sweep = {}; });
  bad([](auto& x) { x.bin_base = 1.0; });
  bad([](auto& x) { x.workers = 0; });
  bad([](auto& x) { x.k_grid = {1}; });
  bad([](auto& x) { x.b_grid = {0.0}; });
  bad([](auto& x) {
    x.k_min = 10;
    x.k_max = 5;
  });
  bad([](auto& x) { x.experiment = ExperimentKind::ingest; });
}

TEST_CASE("config json round trip and strictness") {
  ExperimentConfig c;
  c.experiment = ExperimentKind::compare_hvm;
  c.tau = 2.3;
  c.n = 12345;
  c.seed = 99;
  c.replicas = 3;
  c.epsilon_sweep = {0.4, 0.04};
  c.kernel = HvmKernel::truncated_product;
  c.k_grid = {2, 10};
  const auto back = config_from_json(to_json(c));
  CHECK(to_json(back) == to_json(c));
  CHECK(back.kernel == HvmKernel::truncated_product);

  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"replicas", 2}, {"typo", 1}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"n", "many"}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json{{"kernel", "gaussian"}}), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::array()), ConfigError);
}

TEST_CASE("csv formatting and hashing") {
  CHECK(csv::format_double(0.5) == "0.5");
  CHECK(csv::format_double(1e-300) == "1e-300");
  CHECK(csv::format_double(std::nan("")) == "nan");
  CHECK(csv::format_double(-INFINITY) == "-inf");
  CHECK(std::stod(csv::format_double(0.1 + 0.2)) == 0.1 + 0.2);
  CHECK(csv::format_optional(std::nullopt) == "nan");
  CHECK(csv::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

  csv::Table t("a,b,c");
  t.row(1, 2.5, "x");
  t.row(std::int64_t{-1}, std::optional<double>{}, std::string("y"));
  CHECK(t.str() == "a,b,c\n1,2.5,x\n-1,nan,y\n");
  CHECK(t.rows() == 2);
}

TEST_CASE("ingest examples") {
  {
    std::istringstream in("1 2\n2 1\n# c\n3 3\n");
    const auto g = ingest_edge_list(in);
    CHECK(g.vertex_ids == std::vector<std::uint64_t>{1, 2});
    CHECK(g.edges.size() == 1);
    CHECK(g.provenance.comments == 1);
    CHECK(g.provenance.self_loops == 1);
    CHECK(g.provenance.duplicates == 1);
    CHECK(g.provenance.parsed == 3);
    CHECK(g.provenance.lines == 4);
  }
  {
    std::istringstream in("");
    const auto g = ingest_edge_list(in);
    CHECK(g.vertex_ids.empty());
    CHECK(g.edges.empty());
    CHECK(g.provenance.lines == 0);
    CHECK(g.to_simple_graph().num_vertices() == 0);
  }
  {
    std::istringstream in("1 2\n2 3\n1 3\n");
    const auto spec = clustering_spectrum(ingest_edge_list(in).to_simple_graph());
    CHECK(spec.per_k.at(2).c == 1.0);
  }
  {
    // Sparse, large and unordered ids map onto [0, n) in ascending order.
    std::istringstream in("900000000000 7\n\n7\t42  \n");
    const auto g = ingest_edge_list(in);
    CHECK(g.vertex_ids == std::vector<std::uint64_t>{7, 42, 900000000000});
    CHECK(g.edges == std::vector<std::pair<Vertex, Vertex>>{{0, 1}, {0, 2}});
    CHECK(g.provenance.blank == 1);
  }
}

TEST_CASE("ingest malformed lines") {
  const std::string text = "1 2\nx y\n2 3\n3 4 0.5\n-1 4\n5\n";
  std::istringstream strict_in(text);
  try {
    (void)ingest_edge_list(strict_in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream lenient_in(text);
  const auto g = ingest_edge_list(lenient_in, IngestDirectives{false, false});
  CHECK(g.provenance.malformed == 4);
  CHECK(g.edges.size() == 2);

  std::istringstream extra_in("1 2 0.5\n2 3 7 8\n");
  const auto ge = ingest_edge_list(extra_in, IngestDirectives{true, true});
  CHECK(ge.edges.size() == 2);

  CHECK_THROWS_AS(ingest_edge_list(fs::path("/nonexistent/edges.txt")), std::runtime_error);
}

TEST_CASE("spectrum run is deterministic and independent of worker count") {
  auto c = base_config(ExperimentKind::spectrum, scratch("det_a"));
  c.n = 10'000;
  c.replicas = 2;
  c.seed = 7;
  c.emit_raw = true;
  const auto a = run(c);
  c.output_path = scratch("det_b");
  const auto b = run(c);
  c.output_path = scratch("det_c");
  c.workers = 2;
  const auto w = run(c);
  REQUIRE(a.outputs.size() == 2);
  for (std::size_t i = 0; i < a.outputs.size(); ++i) {
    CHECK(a.outputs[i].sha256 == b.outputs[i].sha256);
    CHECK(a.outputs[i].sha256 == w.outputs[i].sha256);
  }
  CHECK(slurp(scratch("det_a").parent_path() / "det_a" / "spectrum.csv") ==
        slurp(scratch("det_b").parent_path() / "det_b" / "spectrum.csv"));
}

TEST_CASE("manifest completeness") {
  const auto dir = scratch("manifest");
  auto c = base_config(ExperimentKind::spectrum, dir);
  c.n = 3000;
  c.replicas = 3;
  (void)run(c);
  const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(m.at("tool") == "ecmclust");
  CHECK(m.at("csv_schema_version") == csv::kSchemaVersion);
  CHECK(m.at("config").at("n") == 3000);
  CHECK(m.at("replicas").size() == 3);
  for (const auto& r : m.at("replicas")) CHECK(r.contains("jn_holds"));
  CHECK(m.at("wall_time_seconds").get<double>() >= 0.0);
  std::set<std::string> listed;
  for (const auto& o : m.at("outputs")) {
    const auto file = o.at("file").get<std::string>();
    listed.insert(file);
    const auto bytes = slurp(dir / file);
    CHECK(o.at("sha256") == csv::sha256_hex(bytes));
    CHECK(o.at("rows").get<std::uint64_t>() == std::uint64_t(std::count(bytes.begin(), bytes.end(), '\n') - 1));
  }
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".csv") CHECK(listed.contains(entry.path().filename().string()));
}

TEST_CASE("theory output does not depend on the seed") {
  auto c = base_config(ExperimentKind::theory, scratch("theory_a"));
  c.n = 1'000'000;
  c.k_grid = {2, 50, 300, 1000, 8000};
  c.seed = 1;
  const auto a = run(c);
  c.seed = 987654321;
  c.output_path = scratch("theory_b");
  const auto b = run(c);
  CHECK(a.outputs[0].sha256 == b.outputs[0].sha256);
  const auto rows = read_csv(c.output_path / "theory.csv");
  REQUIRE(rows.size() == 5);
  CHECK(rows[3][4] == "crossover");
  CHECK(rows[0][3] == "I");
  CHECK(rows[4][3] == "III");
}

TEST_CASE("regimes run: columns per epsilon and monotone fractions") {
  const auto dir = scratch("regimes");
  auto c = base_config(ExperimentKind::regimes, dir);
  c.n = 20'000;
  c.replicas = 3;
  c.epsilon_sweep = {0.5, 0.05};
  (void)run(c);
  const auto rows = read_csv(dir / "regimes.csv");
  REQUIRE(!rows.empty());
  // (k, replica) -> window count per epsilon
  std::map<std::pair<std::string, std::string>, std::map<std::string, std::uint64_t>> window;
  for (const auto& r : rows) {
    REQUIRE(r.size() == 6);
    CHECK((r[1] == "0.5" || r[1] == "0.05"));
    CHECK(std::stoull(r[3]) <= std::stoull(r[2]));
    window[{r[0], r[5]}][r[1]] = std::stoull(r[3]);
  }
  for (const auto& [key, by_eps] : window) {
    REQUIRE(by_eps.size() == 2);
    CHECK(by_eps.at("0.05") >= by_eps.at("0.5"));
  }
}

TEST_CASE("remaining experiments emit their tables") {
  {
    const auto dir = scratch("crossover");
    auto c = base_config(ExperimentKind::crossover, dir);
    c.b_grid = {0.1, 1.0, 10.0};
    (void)run(c);
    const auto rows = read_csv(dir / "crossover.csv");
    REQUIRE(rows.size() == 3);
    for (const auto& r : rows) CHECK(std::stod(r[1]) > 0.0);
  }
  {
    const auto dir = scratch("hvm");
    auto c = base_config(ExperimentKind::compare_hvm, dir);
    c.n = 5000;
    c.replicas = 2;
    (void)run(c);
    CHECK(!read_csv(dir / "compare_hvm.csv").empty());
  }
  {
    const auto dir = scratch("conn");
    auto c = base_config(ExperimentKind::connection_check, dir);
    c.n = 3000;
    c.replicas = 2;
    (void)run(c);
    for (const auto& r : read_csv(dir / "connection_check.csv")) {
      const double p = std::stod(r[5]);
      CHECK((p >= 0.0 && p <= 1.0));
    }
  }
}

TEST_CASE("golden CSV headers") {
  const fs::path golden = ECM_GOLDEN_DIR;
  const auto dir = scratch("golden");
  const std::pair<ExperimentKind, std::vector<std::string>> runs[] = {
      {ExperimentKind::spectrum, {"spectrum.csv", "spectrum_binned.csv"}},
      {ExperimentKind::regimes, {"regimes.csv"}},
      {ExperimentKind::crossover, {"crossover.csv"}},
      {ExperimentKind::theory, {"theory.csv"}},
      {ExperimentKind::compare_hvm, {"compare_hvm.csv"}},
      {ExperimentKind::connection_check, {"connection_check.csv"}}};
  for (const auto& [kind, files] : runs) {
    auto c = base_config(kind, dir / to_string(kind));
    c.n = 2000;
    c.b_grid = {1.0};
    c.k_grid = {2, 40};
    (void)run(c);
    for (const auto& f : files) {
      CAPTURE(f);
      CHECK(first_line(c.output_path / f) == first_line(golden / (f + ".header")));
    }
  }
}

TEST_CASE("command line interface") {
  const auto dir = scratch("cli");
  const auto err = dir / "stderr.txt";

  CHECK(run_cli("spectrum --n 3000 --replicas 2 --seed 7 --out " + (dir / "a").string(), err) == 0);
  CHECK(run_cli("spectrum --n 3000 --replicas 2 --seed 7 --workers 2 --out " + (dir / "b").string(), err) == 0);
  CHECK(slurp(dir / "a" / "spectrum.csv") == slurp(dir / "b" / "spectrum.csv"));

  // flags override the config file
  {
    std::ofstream cfg(dir / "cfg.json");
    cfg << R"({"experiment": "theory", "n": 1000000, "k_grid": [5, 50], "out": ")" << (dir / "cfg_out").string()
        << "\"}";
  }
  CHECK(run_cli("theory --config " + (dir / "cfg.json").string() + " --k 7 --k 70 --k 700", err) == 0);
  CHECK(read_csv(dir / "cfg_out" / "theory.csv").size() == 3);

  CHECK(run_cli("spectrum --tau 3.5 --out " + (dir / "bad").string(), err) == 2);
  const auto record = nlohmann::json::parse(slurp(err));
  CHECK(record.at("status") == "error");
  CHECK(record.at("kind") == "config");

  CHECK(run_cli("spectrum --epsilon 0.5 --epsilon 2 --out " + (dir / "bad").string(), err) == 2);
  CHECK(run_cli("bogus", err) == 2);
  CHECK(run_cli("ingest --out " + (dir / "bad").string(), err) == 2);
  CHECK(run_cli("ingest --input /nonexistent/file --out " + (dir / "bad").string(), err) == 3);

  {
    std::ofstream e(dir / "edges.txt");
    e << "# tiny\n1 2\n2 3\n3 1\n3 4\nbroken line\n";
  }
  CHECK(run_cli("ingest --input " + (dir / "edges.txt").string() + " --out " + (dir / "ing").string(), err) == 3);
  CHECK(nlohmann::json::parse(slurp(err)).at("kind") == "parse");
  CHECK(run_cli("ingest --lenient --input " + (dir / "edges.txt").string() + " --out " + (dir / "ing").string(),
                err) == 0);
  const auto m = nlohmann::json::parse(slurp(dir / "ing" / "manifest.json"));
  CHECK(m.at("provenance").at("malformed") == 1);
  const auto rows = read_csv(dir / "ing" / "spectrum.csv");
  REQUIRE(rows.size() == 2);  // k = 2 and k = 3
  CHECK(rows[0][3] == "1");
}
