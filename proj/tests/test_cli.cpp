#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "quadsuite/fock.hpp"
#include "quadsuite/phase_space.hpp"
#include "quadsuite/quadrature.hpp"
#include "quadsuite/state_io.hpp"
#include "quadsuite/tomography.hpp"
#include "quadsuite/wigner_radon.hpp"

using namespace quadsuite;
using cli::RunConfig;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const RunConfig& c) {
  std::ostringstream out, err;
  int code = cli::run(c, out, err);
  return {code, out.str(), err.str()};
}

RunConfig config(const std::string& command) {
  RunConfig c;
  c.command = command;
  return c;
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::vector<std::string>* header = nullptr) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (header) {
    std::istringstream h(line);
    std::string col;
    while (std::getline(h, col, ',')) header->push_back(col);
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::istringstream r(line);
    std::string cell;
    std::vector<double> row;
    while (std::getline(r, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("quadsuite_cli_test_" + name);
}

}  // namespace

TEST_CASE("quad-density samples the library density") {
  auto c = config("quad-density");
  c.state = "coherent:0.3,-0.2";
  c.dim = 20;
  c.theta = 0.785398;
  c.grid = "-2:2:0.5";
  auto r = invoke(c);
  REQUIRE(r.code == 0);
  std::vector<std::string> header;
  auto rows = parse_csv(r.out, &header);
  CHECK(header == std::vector<std::string>{"x", "density"});
  REQUIRE(rows.size() == 9);
  auto rho = make_state(CoherentSpec{{0.3, -0.2}}, 20);
  for (const auto& row : rows) {
    CHECK(row[1] == doctest::Approx(quadrature_density(rho, 0.785398, row[0])).epsilon(1e-11));
  }
  CHECK(r.out.find("e-01") != std::string::npos);
}

TEST_CASE("vacuum quadrature density is the gaussian at any angle") {
  auto c = config("quad-density");
  c.theta = 0.785398;
  c.grid = "-6:6:0.01";
  auto r = invoke(c);
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  CHECK(rows.size() == 1201);
  for (const auto& row : rows) {
    CHECK(row[1] == doctest::Approx(std::exp(-row[0] * row[0]) / std::sqrt(M_PI)).epsilon(1e-11).scale(1e-14));
  }
}

TEST_CASE("output is deterministic and json mirrors csv keys") {
  auto c = config("gk-density");
  c.state = "number:2";
  c.kernel = "squeezed:0.3,0.4";
  c.dim = 10;
  c.grid = "-2:2:0.25";
  c.threads = 3;
  auto a = invoke(c);
  c.threads = 1;
  auto b = invoke(c);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);

  auto q = config("quad-density");
  q.grid = "0:1:0.5";
  q.format = cli::Format::json;
  auto j = nlohmann::json::parse(invoke(q).out);
  REQUIRE(j.is_array());
  CHECK(j.size() == 3);
  CHECK(j[1].contains("x"));
  CHECK(j[1].contains("density"));
}

TEST_CASE("grid dumps use the documented header and row-major layout") {
  auto c = config("wigner");
  c.state = "number:1";
  c.dim = 3;
  c.grid = "-1:1:0.5";
  auto r = invoke(c);
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  std::string hash;
  double qmin, qmax, pmin, pmax, step;
  in >> hash >> qmin >> qmax >> pmin >> pmax >> step;
  CHECK(hash == "#");
  CHECK(qmin == -1.0);
  CHECK(pmax == 1.0);
  CHECK(step == 0.5);
  std::vector<double> values;
  for (double v; in >> v;) values.push_back(v);
  REQUIRE(values.size() == 25);
  auto rho = number_state(1, 3);
  // row i is q = -1 + 0.5 i, column j is p = -1 + 0.5 j
  CHECK(values[1 * 5 + 3] == doctest::Approx(wigner(rho, {-0.5, 0.5})).epsilon(1e-11));
  CHECK(values[2 * 5 + 2] == doctest::Approx(-1.0 / M_PI).epsilon(1e-11));

  c.format = cli::Format::json;
  auto j = nlohmann::json::parse(invoke(c).out);
  CHECK(j["values"].size() == 25);
  CHECK(j["q_min"].get<double>() == -1.0);
}

TEST_CASE("radon reports the identity error") {
  auto c = config("radon");
  c.state = "number:2";
  c.dim = 4;
  c.theta = 0.6;
  c.grid = "-3:3:0.5";
  auto r = invoke(c);
  REQUIRE(r.code == 0);
  for (const auto& row : parse_csv(r.out)) CHECK(row[3] < 1e-6);
}

TEST_CASE("strip probability") {
  auto c = config("strip-prob");
  c.interval = "0:inf";
  c.theta = 1.1;
  c.format = cli::Format::json;
  auto r = invoke(c);
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["probability"].get<double>() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(j["interval"] == "0:inf");
}

TEST_CASE("tomography round trip through files") {
  const auto data = temp_path("data.txt");
  const auto state = temp_path("state.json");
  auto g = config("tomo-generate");
  g.state = "number:1";
  g.dim = 6;
  g.angles = 16;
  g.output = data.string();
  REQUIRE(invoke(g).code == 0);

  auto r = config("tomo-reconstruct");
  r.input = data.string();
  r.dim = 6;
  r.state = "number:1";
  r.state_out = state.string();
  auto res = invoke(r);
  REQUIRE(res.code == 0);
  std::vector<std::string> header;
  auto rows = parse_csv(res.out, &header);
  REQUIRE(header.back() == "frobenius_error");
  CHECK(rows[0].back() <= 1e-6);

  auto back = read_state_file(state.string());
  CHECK(std::abs(back(1, 1) - Complex(1.0, 0.0)) < 1e-6);

  // The reconstructed state is itself a valid --state input.
  auto q = config("quad-density");
  q.state = "file:" + state.string();
  q.grid = "0:0:1";
  CHECK(invoke(q).code == 0);
  std::filesystem::remove(data);
  std::filesystem::remove(state);
}

TEST_CASE("markov kernel and moments demo") {
  auto m = config("markov-kernel");
  m.n = 1;
  m.q = 0.3;
  m.p = -0.4;
  m.theta = 0.7;
  m.grid = "-1:1:0.5";
  auto d = parse_csv(invoke(m).out);
  m.form = "series";
  auto s = parse_csv(invoke(m).out);
  REQUIRE(d.size() == 5);
  for (std::size_t i = 0; i < d.size(); ++i) {
    CHECK(d[i][1] == doctest::Approx(markov_kernel_number(1, {0.3, -0.4}, 0.7, d[i][0])).epsilon(1e-11));
    CHECK(std::abs(d[i][1] - s[i][1]) < 1e-6);
  }

  auto md = config("moments-demo");
  md.state = "number:1";
  md.dim = 4;
  md.theta = M_PI / 3;
  md.format = cli::Format::json;
  auto r = invoke(md);
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["first"]["max_relative_error"].get<double>() < 1e-9);
  CHECK(j["second"]["max_relative_error"].get<double>() < 1e-9);
}

TEST_CASE("complementarity report") {
  auto c = config("complementarity-report");
  c.dim = 200;
  c.theta = 1.5707963;
  c.format = cli::Format::json;
  auto r = invoke(c);
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["trace_pair"].get<double>() == doctest::Approx(0.1592).epsilon(0.01));
  CHECK(j["commutator_deviation"].get<double>() < 1e-10);
  CHECK(j["gaussian_product"].get<double>() == doctest::Approx(0.25).epsilon(1e-6));
}

TEST_CASE("exit codes") {
  auto bad_spec = config("quad-density");
  bad_spec.state = "number:x";
  auto r = invoke(bad_spec);
  CHECK(r.code == cli::kExitConfig);
  CHECK(r.err.find("state spec") != std::string::npos);

  auto bad_grid = config("quad-density");
  bad_grid.grid = "0:1:-0.1";
  CHECK(invoke(bad_grid).code == cli::kExitConfig);

  auto bad_dim = config("wigner");
  bad_dim.dim = 0;
  CHECK(invoke(bad_dim).code == cli::kExitConfig);

  CHECK(invoke(config("no-such-command")).code == cli::kExitConfig);

  const auto bad_file = temp_path("bad.json");
  std::ofstream(bad_file) << R"({"dim": 2, "matrix": [[0.5, 0], [0.5, 0], [0.1, 0], [0.5, 0]]})";
  auto invalid = config("quad-density");
  invalid.state = "file:" + bad_file.string();
  r = invoke(invalid);
  CHECK(r.code == cli::kExitValidation);
  CHECK(r.err.find("Hermitian") != std::string::npos);
  std::filesystem::remove(bad_file);

  auto series = config("markov-kernel");
  series.form = "series";
  series.grid = "20:20:1";
  CHECK(invoke(series).code == cli::kExitNumerical);

  auto coverage = config("radon");
  coverage.state = "squeezed:1.5,0";
  coverage.dim = 30;
  coverage.grid = "0:0:1";
  CHECK(invoke(coverage).code == cli::kExitNumerical);

  // A failed command writes nothing.
  const auto out = temp_path("never.csv");
  series.output = out.string();
  invoke(series);
  CHECK_FALSE(std::filesystem::exists(out));
}
