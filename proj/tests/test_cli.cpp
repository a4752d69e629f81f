#include <doctest.h>

#include "recoilq/cli.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace recoilq;

namespace {

RunConfig parse(std::vector<std::string> args) {
  args.insert(args.begin(), "recoilq");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return parse_config(static_cast<int>(argv.size()), argv.data());
}

std::string message(const std::function<void()>& f) {
  try {
    f();
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::filesystem::path scratch(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / "recoilq_cli_test";
  std::filesystem::create_directories(d);
  return d / name;
}

SweepResult tiny_sweep() {
  SweepResult r;
  r.params = ModelParams{};
  r.stationary_coh.gamma = 0.0015915453565576248;
  SweepPoint a;
  a.mstar = Mass::finite(10);
  a.coh.gamma = 0.1;
  a.pop.gamma = 0.2;
  a.pct_increase = -11.9;
  SweepPoint b;
  b.mstar = Mass::infinite();
  r.points = {a, b};
  return r;
}

}  // namespace

TEST_CASE("defaults") {
  RunConfig c = parse({});
  CHECK(c.mode == Mode::sweep);
  CHECK(c.params.lambda == 0.1);
  CHECK(c.params.sigma == 1.0);
  CHECK(c.params.cutoff == 50.0);
  CHECK(c.params.tmax == 40.0);
  CHECK(c.params.nsamples == 200);
  CHECK(c.log_min == 1.0);
  CHECK(c.log_max == 8.0);
  CHECK(c.points == 8);
  CHECK(c.format == Format::csv);
  CHECK_FALSE(c.mstar);
  // an empty config file changes nothing
  auto f = scratch("empty.conf");
  std::ofstream(f) << "# nothing\n\n";
  RunConfig e = parse({"--config", f.string()});
  CHECK(e.params.lambda == 0.1);
  CHECK(e.points == 8);
}

TEST_CASE("grid flags") {
  RunConfig c = parse({"--mstar-log-min=2", "--mstar-log-max", "6", "--mstar-points=5"});
  CHECK(c.log_min == 2.0);
  CHECK(c.log_max == 6.0);
  CHECK(c.points == 5);
}

TEST_CASE("flags override the file") {
  auto f = scratch("over.conf");
  std::ofstream(f) << "mode = trajectory\nmstar=50   # comment\nlambda=0.2\nformat=json\n";
  RunConfig c = parse({"--config", f.string(), "--lambda", "0.05"});
  CHECK(c.mode == Mode::trajectory);
  CHECK(c.mstar->value() == 50.0);
  CHECK(c.params.lambda == 0.05);
  CHECK(c.format == Format::json);
  CHECK(parse({"--mode", "oracle-compare", "--mstar", "inf"}).mstar->is_infinite());
}

TEST_CASE("named errors") {
  CHECK(message([] { config_from_text("mstar=abc\n"); }) == "invalid value for mstar: 'abc'");
  CHECK(message([] { config_from_text("lambda=0.1\ncolour=red\n"); }) == "unknown key 'colour'");
  CHECK(message([] { config_from_text("lambda=0.1\nsigma\n"); }) == "line 2: expected key=value");
  CHECK(message([] { config_from_text("nsamples=1.5\n"); }) == "invalid value for nsamples: '1.5'");
  CHECK(message([] { config_from_text("mstar=-3\n"); }) ==
        "invalid value for mstar: mstar must be positive");
  CHECK(message([] { parse({"--mode", "trajectory"}); }).find("missing required field: mstar") == 0);
  CHECK(message([] { parse({"--cutoff", "0.5"}); }) == "cutoff must exceed omega0");
  CHECK(message([] { parse({"--config", "/nonexistent/x.conf"}); }).find("cannot read config") == 0);
  CHECK_FALSE(message([] { parse({"--bogus", "1"}); }).empty());
  CHECK(message([] { parse({"--help"}); }).rfind("help:", 0) == 0);
}

TEST_CASE("shortest round-trip numbers") {
  for (double x : {0.1, 1.0 / 3.0, 1e-7, 12345.678, 1e8, 0.0015915453565576248}) {
    std::string s = format_double(x);
    CHECK(std::stod(s) == x);
  }
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(10.0) == "10");
  CHECK(format_mass(Mass::infinite()) == "inf");
}

TEST_CASE("csv headers") {
  std::ostringstream s;
  write_sweep(s, tiny_sweep(), Format::csv);
  CHECK(s.str() ==
        "mstar,sigma,lambda,cutoff,gamma_coh,gamma_pop,gamma_stationary,pct_increase\n"
        "10,1,0.1,50,0.1,0.2,0.0015915453565576248,-11.9\n"
        "inf,1,0.1,50,0,0,0.0015915453565576248,0\n");

  Trajectory tr;
  tr.times = {0.5};
  tr.rho10 = {cplx(0.6, -0.8)};
  tr.rho11 = {0.25};
  std::ostringstream t;
  write_trajectory(t, tr, Format::csv);
  CHECK(t.str() == "t,re_rho10,im_rho10,abs_rho10,rho11\n0.5,0.6,-0.8,1,0.25\n");

  Trajectory o = tr;
  o.rho10 = {cplx(0.5, 0.0)};
  std::ostringstream c;
  write_comparison(c, tr, o, Format::csv);
  CHECK(c.str() == "t,abs_rho10_pole,abs_rho10_oracle,abs_diff\n0.5,1,0.5,0.5\n");
}

TEST_CASE("json output parses") {
  std::ostringstream s;
  write_sweep(s, tiny_sweep(), Format::json);
  auto j = nlohmann::json::parse(s.str());
  CHECK(j["rows"].size() == 2);
  CHECK(j["rows"][0]["pct_increase"] == -11.9);
  CHECK(j["rows"][1]["mstar"] == "inf");
}

TEST_CASE("plotdata") {
  std::ostringstream s;
  emit_plotdata(tiny_sweep(), s);
  CHECK(s.str() == "1 -11.9\n");
}

TEST_CASE("run writes files and is independent of the thread count") {
  RunConfig c;
  c.log_min = 3;
  c.log_max = 5;
  c.points = 3;
  c.params.nsamples = 40;
  std::ostringstream err;
  std::string outs[2];
  for (int i = 0; i < 2; ++i) {
    setenv("RECOILQ_THREADS", i ? "3" : "1", 1);
    c.output = scratch("sweep" + std::to_string(i) + ".csv").string();
    REQUIRE(run(c, err) == 0);
    outs[i] = slurp(c.output);
  }
  unsetenv("RECOILQ_THREADS");
  CHECK(outs[0] == outs[1]);
  std::istringstream in(outs[0]);
  std::string line;
  int rows = -1;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 3);
  std::string plot = slurp(c.output + ".plotdata");
  CHECK(std::count(plot.begin(), plot.end(), '\n') == 3);
  CHECK(err.str().find("not non-increasing") != std::string::npos);
}

TEST_CASE("unwritable output is an I/O failure") {
  RunConfig c;
  c.mode = Mode::trajectory;
  c.mstar = Mass::infinite();
  c.params.nsamples = 4;
  c.output = "/nonexistent/dir/out.csv";
  std::ostringstream err;
  CHECK(run(c, err) == 3);
  CHECK(err.str().find("cannot open") != std::string::npos);
}
