#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("tanlab-cli-test-" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Run run(const std::string& args) {
  const fs::path dir = scratch("io");
  const std::string cmd = std::string(TANLAB_CLI) + " " + args + " >" + (dir / "out").string() +
                          " 2>" + (dir / "err").string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(dir / "out"), slurp(dir / "err")};
}

}  // namespace

TEST_CASE("eval") {
  const Run r = run("eval --lambda 1+0i --z 0.7853981633974483");
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  const Json j = Json::parse(r.out);
  CHECK(std::fabs(j["value"][0].get<double>() - 1.0) < 1e-15);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1);

  const Run spaced = run("eval --lambda '0.5 + 0.25 i' --z 0.1");
  CHECK(spaced.code == 0);
  CHECK(Json::parse(spaced.out)["lambda"][1] == 0.25);

  const Run theta = run("eval --theta 0.6180339887498949 --z 0.1");
  CHECK(theta.code == 0);
  CHECK(std::fabs(Json::parse(theta.out)["value"][0].get<double>() -
                  (-0.7373688780783197 * 0.10033467208545055)) < 1e-15);

  const Run zero = run("eval --lambda 0 --z 1");
  CHECK(zero.code == 2);
  CHECK(zero.err.find("lambda must be nonzero") != std::string::npos);
  CHECK(run("eval --lambda 1+xi --z 1").code == 2);
  CHECK(run("eval --lambda 1").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("cf") {
  const Run g = run("cf --quadratic golden --depth 30");
  CHECK(g.code == 0);
  CHECK(g.err.empty());
  const Json j = Json::parse(g.out);
  CHECK(j["quotients"].size() == 30);
  for (const auto& a : j["quotients"]) CHECK(a == 1);
  const Json s = Json::parse(run("cf --quadratic sqrt2m1 --depth 20").out);
  for (const auto& a : s["quotients"]) CHECK(a == 2);
  const Run q = run("cf --x 0.25");
  CHECK(q.code == 0);
  CHECK(Json::parse(q.out)["rational"] == true);
}

TEST_CASE("siegel exit codes and outputs") {
  const fs::path dir = scratch("siegel");
  CHECK(run("siegel --theta 0.5 --out " + dir.string()).code == 3);
  const Run res = run("siegel --theta 0.5 --out " + dir.string());
  CHECK(res.err.find("n = 3") != std::string::npos);
  CHECK(run("siegel --quadratic golden --coeffs 10 --out " + dir.string()).code == 4);

  const std::string args = "siegel --quadratic golden --coeffs 300 --rhos 0.5,0.6,0.7 --samples 256 --out ";
  const Run ok = run(args + dir.string());
  CHECK(ok.code == 0);
  CHECK(ok.err.empty());
  const std::string json1 = slurp(dir / "siegel.json");
  const std::string csv1 = slurp(dir / "traces.csv");
  CHECK(Json::parse(json1)["heuristic"] == true);
  CHECK(csv1.rfind("rho,t,re,im\n", 0) == 0);
  const Json manifest = Json::parse(slurp(dir / "siegel.manifest.json"));
  CHECK(manifest["subcommand"] == "siegel");
  CHECK(manifest["config"]["coeffs"] == 300);
  CHECK(manifest.contains("wall_clock_seconds"));
  CHECK(manifest.contains("tool_version"));

  CHECK(run(args + dir.string()).code == 0);
  CHECK(slurp(dir / "siegel.json") == json1);
  CHECK(slurp(dir / "traces.csv") == csv1);
}

TEST_CASE("scan") {
  const fs::path a = scratch("scan-a");
  const fs::path b = scratch("scan-b");
  const std::string args = "scan --lambda 0.5+0i --rect -1.2,-1.2,1.2,1.2 --res 64 --out ";
  const Run r = run(args + a.string() + " --threads 1");
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  const Json hist = Json::parse(r.out);
  CHECK(hist["AttractedToCycle(1)"] == 64 * 64);
  CHECK(run(args + b.string() + " --threads 4").code == 0);
  CHECK(slurp(a / "scan.ppm") == slurp(b / "scan.ppm"));
  CHECK(slurp(a / "scan.legend.json") == slurp(b / "scan.legend.json"));
  CHECK(fs::exists(a / "scan.manifest.json"));

  const fs::path one = scratch("scan-one");
  CHECK(run("scan --lambda 0.5 --res 1 --out " + one.string()).code == 0);
  CHECK(slurp(one / "scan.ppm").rfind("P6\n1 1\n255\n", 0) == 0);

  CHECK(run("scan --lambda 0.5 --res 8 --out /proc/tanlab-unwritable").code == 5);
  CHECK(run("scan --lambda 0.5 --res 8 --rect 1,2,3 --out " + one.string()).code == 2);
}

TEST_CASE("param-scan") {
  const fs::path dir = scratch("param");
  const Run r = run("param-scan --theta-range 0,1 --res 16 --epsilon 0.5 --out " + dir.string());
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  const std::string csv = slurp(dir / "param_scan.csv");
  CHECK(csv.rfind("theta,period,multiplier_abs,siegel_flag,error\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 17);
  CHECK(fs::exists(dir / "param_scan.manifest.json"));
}

TEST_CASE("lift") {
  const fs::path dir = scratch("lift");
  {
    std::ofstream(dir / "seg.csv") << "re,im\n1,0\n2,0\n";
    std::ofstream(dir / "thru.csv") << "re,im\n0,0.5\n0,1.5\n";
  }
  const Run r = run("lift --lambda 1 --curve " + (dir / "seg.csv").string() +
                    " --base 0.7853981633974483 --out " + dir.string());
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  CHECK(std::fabs(Json::parse(r.out)["end"][0].get<double>() - std::atan(2.0)) < 1e-14);
  const Json manifest = Json::parse(slurp(dir / "lift.manifest.json"));
  CHECK(manifest["max_roundtrip_deviation"].get<double>() < 1e-12);
  CHECK(manifest["input_hashes"]["curve"].get<std::string>().rfind("fnv1a64:", 0) == 0);

  const Run shifted = run("lift --lambda 1 --curve " + (dir / "seg.csv").string() +
                          " --base 3.9269908169872414 --out " + dir.string());
  CHECK(std::fabs(Json::parse(shifted.out)["end"][0].get<double>() - (std::atan(2.0) + M_PI)) < 1e-13);

  const Run clear = run("lift --lambda 1 --curve " + (dir / "thru.csv").string() +
                        " --base 0+0.5493061443340549i --out " + dir.string());
  CHECK(clear.code == 6);
  CHECK(clear.err.find("nearest approach") != std::string::npos);
  CHECK(run("lift --lambda 1 --curve /nonexistent.csv --base 0 --out " + dir.string()).code == 5);
}

TEST_CASE("bounded-scan") {
  const fs::path dir = scratch("bounded");
  const Run r = run("bounded-scan --candidates golden,e-2@6 --coeffs 300 --rhos 0.5,0.6,0.7 --samples 256 --out " +
                    dir.string());
  CHECK(r.code == 0);
  CHECK(r.err.empty());
  const Json report = Json::parse(slurp(dir / "bounded_scan.json"));
  CHECK(report["heuristic"] == true);
  CHECK(report["candidates"].size() == 2);
  CHECK(Json::parse(r.out)["bounded_likely"] == 0);
}
