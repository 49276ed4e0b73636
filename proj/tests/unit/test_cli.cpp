#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli_app.hpp"

namespace fs = std::filesystem;
using spinwire::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "spinwire_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  fs::remove(p);
  return p;
}

}  // namespace

TEST_CASE("walks golden output", "[cli]") {
  const Result r = invoke({"walks", "--n-max", "4"});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "# generated-by spinwire 0.1.0\n"
        "n,k,count\n"
        "2,0,1\n"
        "2,1,0\n"
        "4,0,1\n"
        "4,1,1\n");
}

TEST_CASE("alpha closed form at t = 0", "[cli]") {
  const Result r = invoke({"alpha", "--method", "closed", "--k0", "1", "--k", "1", "--tmax", "0",
                           "--steps", "1"});
  CHECK(r.code == 0);
  CHECK(r.out == "# generated-by spinwire 0.1.0\nt,alpha0,alphaZ,error_estimate\n0,1,1,0\n");
}

TEST_CASE("alpha formatting uses 17 significant digits", "[cli]") {
  const Result r = invoke({"alpha", "--method", "closed", "--k0", "1", "--k", "1", "--tmax", "1",
                           "--steps", "2"});
  REQUIRE(r.code == 0);
  const std::string expected_row =
      "1," + spinwire::format_double(spinwire::bessel_j1(2.0)) + "," +
      spinwire::format_double(spinwire::bessel_j1(2.0) * spinwire::bessel_j1(2.0)) + ",0\n";
  CHECK(r.out.find(expected_row) != std::string::npos);
  CHECK(spinwire::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("alpha matrix echoes the chosen chain length", "[cli]") {
  const Result r = invoke({"alpha", "--method", "matrix", "--k0", "1", "--k", "1", "--tmax", "2",
                           "--steps", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\n# n_sites=") != std::string::npos);
  const Result fixed = invoke({"alpha", "--method", "matrix", "--k0", "1", "--k", "1", "--tmax",
                               "2", "--steps", "3", "--n-sites", "40"});
  REQUIRE(fixed.code == 0);
  CHECK(fixed.out.find("n_sites") == std::string::npos);
}

TEST_CASE("alpha series", "[cli]") {
  const Result r = invoke({"alpha", "--method", "series", "--k0", "1", "--k", "1", "--order", "20",
                           "--tmax", "1", "--steps", "11"});
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int rows = 0;
  while (std::getline(lines, line)) {
    if (!line.empty() && line[0] != '#' && line[0] != 't') ++rows;
  }
  CHECK(rows == 11);
}

TEST_CASE("argument errors exit 2", "[cli]") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"walks"}).code == 2);
  CHECK(invoke({"walks", "--n-max", "7"}).code == 2);
  CHECK(invoke({"alpha", "--method", "bogus", "--k0", "1", "--k", "1", "--tmax", "1", "--steps",
                "2"})
            .code == 2);
  CHECK(invoke({"alpha", "--method", "closed", "--k0", "3", "--k", "1", "--tmax", "1", "--steps",
                "2"})
            .code == 2);
  CHECK(invoke({"alpha", "--method", "matrix", "--k0", "-1", "--k", "1", "--tmax", "1",
                "--steps", "2"})
            .code == 2);
  CHECK(invoke({"recurrence", "--freqs", "1"}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
}

TEST_CASE("computational errors exit 1", "[cli]") {
  const Result r = invoke({"alpha", "--method", "matrix", "--k0", "1", "--k", "1", "--tmax",
                           "10", "--steps", "2", "--tol", "1e-300"});
  CHECK(r.code == 1);
  CHECK(r.err.find("alpha") != std::string::npos);
}

TEST_CASE("failed runs leave no output file", "[cli]") {
  const fs::path out = scratch("failed.csv");
  CHECK(invoke({"--out", out.string(), "alpha", "--method", "matrix", "--k0", "1", "--k", "1",
                "--tmax", "10", "--steps", "2", "--tol", "1e-300"})
            .code == 1);
  CHECK_FALSE(fs::exists(out));
  CHECK(invoke({"--out", out.string(), "walks", "--n-max", "5"}).code == 2);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("--out and --plot write files", "[cli]") {
  const fs::path out = scratch("bloch.csv");
  const fs::path svg = scratch("bloch.svg");
  const Result r = invoke({"bloch", "--k0", "1.4142135623730951", "--k", "1", "--tmax", "5",
                           "--steps", "51", "--out", out.string(), "--plot", svg.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const std::string csv = slurp(out);
  const auto header = csv.find("t,v_sq\n0,");
  REQUIRE(header != std::string::npos);
  CHECK(std::stod(csv.substr(header + 9)) == Catch::Approx(1.0).margin(1e-12));
  CHECK(slurp(svg).rfind("<svg", 0) == 0);
}

TEST_CASE("walks refuses a plot", "[cli]") {
  CHECK(invoke({"walks", "--n-max", "4", "--plot", scratch("w.svg").string()}).code == 2);
}

TEST_CASE("witness writes a JSON sidecar", "[cli]") {
  const fs::path out = scratch("witness.csv");
  const Result r = invoke({"witness", "--k0a", "4", "--ka", "1", "--k0b", "4", "--kb", "1",
                           "--tmax", "10", "--steps", "2001", "--out", out.string()});
  REQUIRE(r.code == 0);
  const auto summary = nlohmann::json::parse(slurp(out.string() + ".json"));
  CHECK(summary.contains("death_time"));
  CHECK(summary["rebirth_times"].size() >= 1);
  CHECK(summary["intervals"].size() == summary["rebirth_times"].size() + 1);

  const Result inline_summary = invoke({"witness", "--k0a", "16", "--ka", "256", "--k0b", "16",
                                        "--kb", "256", "--tmax", "2", "--steps", "201"});
  REQUIRE(inline_summary.code == 0);
  CHECK(inline_summary.out.find("# sidecar {") != std::string::npos);
}

TEST_CASE("chi-scan warns when truncation dominates", "[cli]") {
  const Result r = invoke({"chi-scan", "--ratios", "1.4142135623730951,3.4641016151377544",
                           "--order", "20"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("ratio,chi,log_chi\n") != std::string::npos);
  CHECK(r.err.find("warning") != std::string::npos);
  CHECK(r.err.find("3.4641016151377544") != std::string::npos);
}

TEST_CASE("recurrence reports the first exceedance", "[cli]") {
  const Result r = invoke({"recurrence", "--freqs", "1,3.141592653589793", "--threshold", "0.9",
                           "--tmax", "50", "--dt", "0.01"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("# first_exceedance=") != std::string::npos);
  CHECK(r.out.find("t,p\n0,1\n") != std::string::npos);
}

TEST_CASE("config file supplies flags, command line wins", "[cli]") {
  const fs::path cfg = scratch("config.json");
  {
    std::ofstream f(cfg);
    f << R"({"method": "closed", "k0": 1, "k": 1, "tmax": 1.0, "steps": 2})";
  }
  const Result from_config = invoke({"alpha", "--config", cfg.string()});
  REQUIRE(from_config.code == 0);
  const Result explicit_flags = invoke({"alpha", "--method", "closed", "--k0", "1", "--k", "1",
                                        "--tmax", "1", "--steps", "2"});
  CHECK(from_config.out == explicit_flags.out);

  const Result overridden = invoke({"alpha", "--config", cfg.string(), "--tmax", "0", "--steps",
                                    "1"});
  REQUIRE(overridden.code == 0);
  CHECK(overridden.out.find("0,1,1,0\n") != std::string::npos);
  CHECK(overridden.out.find("\n1,") == std::string::npos);

  const fs::path bad = scratch("bad.json");
  {
    std::ofstream f(bad);
    f << "{not json";
  }
  CHECK(invoke({"alpha", "--config", bad.string()}).code == 2);
  CHECK(invoke({"alpha", "--config", scratch("missing.json").string()}).code == 2);
}

TEST_CASE("identical invocations are byte-identical", "[cli]") {
  const std::vector<std::string> args{"alpha", "--method", "matrix", "--k0", "1", "--k", "1",
                                      "--tmax", "10", "--steps", "1000"};
  const Result a = invoke(args);
  const Result b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}
