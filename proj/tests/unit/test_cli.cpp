#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lpds/cli.hpp"
#include "lpds/pattern.hpp"

using namespace lpds;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("lpds_cli_test_" + name);
  std::ofstream(path) << text;
  return path;
}

bool has(const std::string& text, const std::string& piece) { return text.find(piece) != std::string::npos; }

}  // namespace

TEST_CASE("cli verify") {
  const Run ok = run({"verify", "catalog:L1"});
  CHECK(ok.code == 0);
  CHECK(has(ok.out, "valid LPDS"));
  CHECK(has(ok.out, "verdict dominated=true locating=true paired=true density=2/9"));

  CHECK(run({"verify", "catalog:LX", "--x", "set={0}"}).code == 2);
  const Run lx = run({"verify", "catalog:LX", "--x", "set={0}", "--window", "x=[-20..19] y=[-10..9]"});
  CHECK(lx.code == 0);
  CHECK(has(lx.out, "window verdict dominated=true locating=true paired=true"));
  CHECK(run({"verify", "catalog:LX", "--x", "period=3 bits=101"}).code == 0);

  const auto bad = write_temp("sparse.txt", "lattice u=(3,0) v=(0,3)\nbase (0,0)\n");
  const Run r = run({"verify", bad.string()});
  CHECK(r.code == 1);
  CHECK(has(r.out, "certificate unlocatable-pair"));
  std::filesystem::remove(bad);

  const Run missing = run({"verify", "/nonexistent/pattern.txt"});
  CHECK(missing.code == 2);
  CHECK_FALSE(missing.err.empty());

  const auto garbage = write_temp("garbage.txt", "lattice u=(1,2) v=(2,4)\nbase (0,0)\n");
  const Run degenerate = run({"verify", garbage.string()});
  CHECK(degenerate.code == 2);
  CHECK(has(degenerate.err, "degenerate lattice"));
  std::filesystem::remove(garbage);
}

TEST_CASE("cli density and catalog") {
  CHECK(run({"density", "catalog:L2"}).out == "density 2/9\n");
  const Run k = run({"density", "catalog:L1", "--k", "100"});
  CHECK(k.code == 0);
  CHECK(has(k.out, "window-density k=100 center=(0,0) "));
  CHECK(run({"density", "catalog:LX", "--x", "period=2 bits=10"}).out == "density 2/9\n");

  const Run cat = run({"catalog", "L1"});
  CHECK(cat.code == 0);
  CHECK(cat.out == serialize(catalog_l1()));
  CHECK(run({"catalog", "L7"}).code == 2);
}

TEST_CASE("cli search") {
  const Run r = run({"search", "--lattice", "u=(2,1) v=(-3,3)"});
  CHECK(r.code == 0);
  CHECK(r.out == "lattice u=(9,0) v=(2,1)\nbase (0,0) (3,0)\noptimum k=2 density=2/9 patterns=1 nodes=45\n");
  const Run unit = run({"search", "--lattice", "u=(1,0) v=(0,1)"});
  CHECK(unit.code == 0);
  CHECK(unit.out.rfind("infeasible", 0) == 0);
  CHECK(run({"search", "--lattice", "u=(4,0) v=(0,4)", "--budget", "10"}).code == 1);
  CHECK(run({"search", "--lattice", "u=(13,0) v=(0,5)"}).code == 2);
  CHECK(run({"search", "--lattice", "u=(1,2) v=(2,4)"}).code == 2);
  CHECK(run({"search", "--lattice", "u=(2,0) v=(0,2)", "--workers", "0"}).code == 2);
}

TEST_CASE("cli check and discharge") {
  const Run r = run({"check", "r-claims"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("Claim-r-half holds configs=182", 0) == 0);
  CHECK(has(r.out, "\nClaim-r-lowerbound holds configs=182"));
  CHECK(run({"check", "adjacent-sum", "--budget", "1000"}).code == 1);
  CHECK(run({"check", "lemma9"}).code == 2);

  CHECK(run({"discharge", "catalog:L2", "--theorem", "2"}).code == 0);
  CHECK(run({"discharge", "catalog:L1", "--theorem", "1"}).code == 0);
  CHECK(run({"discharge", "catalog:L1", "--theorem", "3"}).code == 2);
}

TEST_CASE("cli render") {
  const Run r = run({"render", "catalog:L1", "--window", "x=[-4..5] y=[-3..3]"});
  CHECK(r.code == 0);
  CHECK(parse_window(r.out) == to_window(catalog_l1(), {-4, 5, -3, 3}));

  const auto path = std::filesystem::temp_directory_path() / "lpds_cli_test_render.svg";
  CHECK(run({"render", "catalog:L2", "--format", "svg", "--window", "x=[0..8] y=[0..3]", "-o", path.string()})
            .code == 0);
  std::ifstream in(path);
  const std::string svg((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(has(svg, "<line"));
  std::filesystem::remove(path);

  CHECK(run({"render", "catalog:L1"}).code == 2);
}

TEST_CASE("cli usage") {
  CHECK(run({}).code == 2);
  const Run help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(has(help.out, "search"));
  CHECK(run({"frobnicate"}).code == 2);
}
