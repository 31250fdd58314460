#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "compsem/cli.hpp"

using namespace compsem;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "compsem");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "compsem-cli-tests";
  fs::create_directories(dir);
  return dir / name;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

const char* kIdioms = R"js({"kind": "language",
  "atoms": ["wall", "seas", "high"],
  "terms": ["wall", "seas", "high", "(high.wall)", "(high.seas)"],
  "pairs": [["high", "wall"], ["high", "seas"]],
  "meanings": {"wall": "wall", "seas": "seas", "high": "high",
               "(high.wall)": "high(wall)", "(high.seas)": "open(seas)"}})js";

}  // namespace

TEST_CASE("encode exit codes") {
  fs::path spec = scratch("idioms.spec");
  write(spec, kIdioms);
  auto r = run({"encode", spec.string(), "--table"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("[PASS]") != std::string::npos);
  CHECK(run({"encode", spec.string(), "--variant", "dollar"}).code == kExitOk);

  fs::path partial = scratch("partial.spec");
  std::string text = kIdioms;
  text.replace(text.find(R"js("(high.seas)": "open(seas)")js"), 26, R"js("x": "y")js");
  write(partial, text);
  r = run({"encode", partial.string()});
  CHECK(r.code == kExitInvalid);
  CHECK(r.err.find("error") != std::string::npos);

  CHECK(run({"encode", scratch("absent.spec").string()}).code == kExitResource);
  CHECK(run({"encode"}).code == kExitInvalid);
  CHECK(run({"frobnicate"}).code == kExitInvalid);
  CHECK(run({"encode", spec.string(), "--variant", "sideways"}).code == kExitInvalid);
}

TEST_CASE("machine output replays") {
  fs::path spec = scratch("idioms2.spec");
  fs::path bundle = scratch("idioms2.bundle");
  write(spec, kIdioms);
  REQUIRE(run({"encode", spec.string(), "--table", "--format", "machine", "--out", bundle.string()}).code ==
          kExitOk);
  CHECK(run({"replay", bundle.string(), spec.string()}).code == kExitOk);

  fs::path other = scratch("other.spec");
  std::string text = kIdioms;
  text.replace(text.find(R"js("wall": "wall")js"), 14, R"js("wall": "brick")js");
  write(other, text);
  CHECK(run({"replay", bundle.string(), other.string()}).code == kExitInvalid);

  write(scratch("garbage.bundle"), "{]");
  CHECK(run({"replay", scratch("garbage.bundle").string(), spec.string()}).code == kExitInvalid);
}

TEST_CASE("fit and refute exit codes") {
  fs::path coord = scratch("coord.spec");
  REQUIRE(run({"samples", "coord", "--out", coord.string()}).code == kExitOk);
  CHECK(run({"fit", coord.string(), "--class", "boolfun"}).code == kExitNegative);
  CHECK(run({"fit", coord.string(), "--class", "poly3"}).code == kExitInvalid);
  CHECK(run({"fit", coord.string(), "--class", "poly2"}).code == kExitInvalid);

  fs::path nd = scratch("nd.spec");
  REQUIRE(run({"samples", "nd", "--max-length", "2", "--out", nd.string()}).code == kExitOk);
  auto r = run({"fit", nd.string(), "--class", "poly2", "--degree", "1"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("10*x + y") != std::string::npos);
  CHECK(run({"fit", nd.string(), "--class", "poly2", "--budget", "3"}).code == kExitOk);
  CHECK(run({"fit", nd.string(), "--class", "poly2", "--budget", "2"}).code == kExitNegative);

  CHECK(run({"refute-dn", "--max-degree", "3"}).code == kExitOk);
  CHECK(run({"refute-dn", "--max-degree", "3", "--grammar", "nd"}).code == kExitNegative);
  CHECK(run({"refute-dn", "--max-degree", "9"}).code == kExitResource);
}

TEST_CASE("enumerate") {
  auto r = run({"enumerate", "dn", "--row", "3", "--pair", "0"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "<3, 3>\n");
  r = run({"enumerate", "dn", "--row", "3", "--pair", "2"});
  CHECK(r.out == "<mu(1), mu((3.1))>\n");
  CHECK(run({"enumerate", "dn", "--row", "3", "--pair", "0", "--variant", "dollar"}).out == "<$, 3>\n");

  fs::path spec = scratch("idioms3.spec");
  write(spec, kIdioms);
  CHECK(run({"enumerate", spec.string(), "--row", "2", "--pair", "2"}).out ==
        "<mu(seas), mu((high.seas))>\n");
  CHECK(run({"enumerate", spec.string(), "--row", "2", "--pair", "3"}).code == kExitNegative);
}
