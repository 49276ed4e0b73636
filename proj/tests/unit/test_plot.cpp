#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "spinwire/plot.hpp"

using namespace spinwire;
namespace fs = std::filesystem;

TEST_CASE("emit_plot writes a self-contained SVG", "[plot]") {
  const fs::path path = fs::temp_directory_path() / "spinwire_test_plot.svg";
  fs::remove(path);
  emit_plot({{0.0, 1.0, 2.0}, {1.0, 0.5, 0.25}}, {"decay", "t", "a<b"}, path.string());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string svg = ss.str();
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("a&lt;b") != std::string::npos);
  fs::remove(path);
}

TEST_CASE("empty trace is rejected without creating a file", "[plot]") {
  const fs::path path = fs::temp_directory_path() / "spinwire_empty_plot.svg";
  fs::remove(path);
  CHECK_THROWS_AS(emit_plot({}, {}, path.string()), InvalidArgument);
  CHECK_FALSE(fs::exists(path));
}

TEST_CASE("unwritable path is an error", "[plot]") {
  CHECK_THROWS_AS(emit_plot({{0.0}, {1.0}}, {}, "/nonexistent-dir/x/plot.svg"), ComputationError);
}
