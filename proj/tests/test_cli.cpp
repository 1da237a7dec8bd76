#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const std::string& cli_bin() {
  static const std::string bin = [] {
    const char* e = std::getenv("UMG_CLI_BIN");
    return std::string(e ? e : "./umg_cli");
  }();
  return bin;
}

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  std::string cmd = cli_bin() + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  Run r;
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  if (st >= 0 && WIFEXITED(st)) r.code = WEXITSTATUS(st);
  return r;
}

fs::path tdir() {
  static const fs::path d = [] {
    fs::path p = fs::temp_directory_path() / "umg_cli_test";
    fs::create_directories(p);
    return p;
  }();
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("argument parsing: help and error exit codes") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("").code == 2);                       // subcommand required
  CHECK(run_cli("frobnicate").code == 2);             // unknown subcommand
  CHECK(run_cli("verify-sequence --n abc").code == 2);
  CHECK(run_cli("verify-planar --n 16 --m auto").code == 2);      // auto needs --seed
  CHECK(run_cli("verify-planar --n 16 --m 3").code == 2);         // sampling needs --seed
  CHECK(run_cli("verify-planar --m 3 --seed 1").code == 2);       // planar needs --n
  CHECK(run_cli("build-planar --n 8 --m 3").code == 2);           // needs --out
  CHECK(run_cli("build-planar --n 8 --m 3x --out " + (tdir() / "x.csv").string()).code == 2);
  CHECK(run_cli("build-planar --n 8 --m=-1 --out " + (tdir() / "x.csv").string()).code == 2);
  CHECK(run_cli("calibrate-planar --n 8 --seed 1 --alpha nope").code == 2);
  CHECK(run_cli("verify-sequence --n 20000000").code == 2);       // index cap guard
}

TEST_CASE("io failures exit with code 3") {
  CHECK(run_cli("build-planar --n 8 --m 3 --out /nonexistent_dir_xq/z.csv").code == 3);
  CHECK(run_cli("verify-sequence --n 100 --config /nonexistent_cfg_xq.json").code == 3);
}

TEST_CASE("verify-sequence: summary fields, determinism, output file") {
  fs::path out = tdir() / "seq.json";
  Run r1 = run_cli("verify-sequence --n 1000 --out " + out.string());
  Run r2 = run_cli("verify-sequence --n 1000 --out " + out.string());
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
  json j = json::parse(r1.out);
  CHECK(j.at("command") == "verify-sequence");
  CHECK(j.at("starts") == 1000);
  CHECK(j.at("m100").get<double>() > 0.0);
  CHECK(j.at("m10000").get<double>() <= 2.0 * j.at("m100").get<double>());
  CHECK(j.at("ok") == true);
  std::string f1 = slurp(out);
  run_cli("verify-sequence --n 1000 --out " + out.string());
  CHECK(slurp(out) == f1);
}

TEST_CASE("verify-profile: exit code mirrors the verdict") {
  Run r = run_cli("verify-profile --n 500");
  json j = json::parse(r.out);
  CHECK(r.code == (j.at("ok").get<bool>() ? 0 : 1));
  CHECK(j.at("c_hat").get<double>() > 0.0);
  CHECK(j.at("w1000").get<double>() > 0.0);
  CHECK(j.at("grid_points").get<long long>() > 2000);
}

TEST_CASE("verify-planar: passes, reports, and is byte-deterministic") {
  fs::path rep = tdir() / "planar_report.csv";
  std::string args = "verify-planar --n 48 --m 3 --seed 9 --samples 400 --out " + rep.string();
  Run r1 = run_cli(args);
  CHECK(r1.code == 0);
  json j = json::parse(r1.out);
  CHECK(j.at("ok") == true);
  CHECK(j.at("m") == 3.0);
  CHECK(j.at("c_hat").get<double>() > 0.0);
  CHECK(j.at("samples") == 400);
  std::string f1 = slurp(rep);
  CHECK(f1.rfind("px,py,player,qx,qy,qlayer,euclid,graph_dist,err\n", 0) == 0);

  Run r2 = run_cli(args);
  CHECK(r1.out == r2.out);
  CHECK(slurp(rep) == f1);

  Run r3 = run_cli("verify-planar --n 48 --m 3 --seed 10 --samples 400 --out " + rep.string());
  CHECK(r3.out != r1.out);
}

TEST_CASE("verify-planar with auto-calibrated glue length") {
  Run r = run_cli("verify-planar --n 48 --m auto --seed 4 --samples 300");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  double c = j.at("c_hat").get<double>();
  CHECK(c > 0.0);
  CHECK(j.at("m").get<double>() == std::ceil(2.0 * c + 1.0));
}

TEST_CASE("calibrate-planar: constants and the derived glue length") {
  fs::path out = tdir() / "calib.json";
  Run r = run_cli("calibrate-planar --n 32 --seed 5 --samples 500 --out " + out.string());
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  double c = j.at("c_hat").get<double>();
  CHECK(c > 0.2);
  CHECK(c < 1.5);
  CHECK(j.at("m").get<double>() == std::ceil(2.0 * c + 1.0));
  json jf = json::parse(slurp(out));
  CHECK(jf.at("c_hat") == j.at("c_hat"));

  Run g = run_cli("calibrate-planar --n 32 --seed 5 --samples 500 --alpha golden_conjugate");
  CHECK(g.code == 0);
  CHECK(json::parse(g.out).at("alpha") == "golden_conjugate");
}

TEST_CASE("build-planar: graph export") {
  fs::path out = tdir() / "planar_graph.csv";
  Run r1 = run_cli("build-planar --n 12 --m 2.5 --out " + out.string());
  CHECK(r1.code == 0);
  json j = json::parse(r1.out);
  CHECK(j.at("vertices") == 25 * 25);  // both layers partition one box by parity
  CHECK(j.at("max_degree") == 5);
  CHECK(j.at("max_length") == 2.5);
  std::string f1 = slurp(out);
  CHECK(f1.rfind("x1,y1,layer1,x2,y2,layer2,length\n", 0) == 0);
  run_cli("build-planar --n 12 --m 2.5 --out " + out.string());
  CHECK(slurp(out) == f1);
}

TEST_CASE("config file: merge, override, and error codes") {
  fs::path cfg = tdir() / "cfg.json";
  spit(cfg, "{\"n\": 12, \"m\": 3, \"seed\": 4, \"samples\": 100}\n");
  Run r = run_cli("verify-planar --config " + cfg.string());
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("n") == 12);
  CHECK(j.at("m") == 3.0);
  CHECK(j.at("seed") == 4);
  CHECK(j.at("samples") == 100);

  Run o = run_cli("verify-planar --config " + cfg.string() + " --samples 50");
  CHECK(o.code == 0);
  CHECK(json::parse(o.out).at("samples") == 50);

  fs::path bad = tdir() / "bad.json";
  spit(bad, "{\"bogus\": 1}\n");
  CHECK(run_cli("verify-planar --config " + bad.string()).code == 2);
  spit(bad, "{nope\n");
  CHECK(run_cli("verify-planar --config " + bad.string()).code == 2);
  spit(bad, "{\"n\": \"abc\"}\n");
  CHECK(run_cli("verify-planar --config " + bad.string()).code == 2);
}

TEST_CASE("build-hyperbolic and verify-hyperbolic: smoke and determinism") {
  fs::path net = tdir() / "net.csv";
  Run b1 = run_cli("build-hyperbolic --radius 5 --out " + net.string());
  CHECK(b1.code == 0);
  json jb = json::parse(b1.out);
  CHECK(jb.at("points").get<long long>() >= 150);
  CHECK(jb.at("points").get<long long>() <= 950);
  CHECK(jb.at("shortcuts_pruned") == true);
  CHECK(jb.at("integer_mode") == false);
  std::string f1 = slurp(net);
  CHECK(f1.rfind("idx,x,y,z,parent_idx,tree_len\n", 0) == 0);
  run_cli("build-hyperbolic --radius 5 --out " + net.string());
  CHECK(slurp(net) == f1);

  fs::path rep = tdir() / "hyper_report.csv";
  std::string vargs = "verify-hyperbolic --radius 5 --seed 3 --samples 200 --out " + rep.string();
  Run v1 = run_cli(vargs);
  CHECK(v1.code == 0);
  json jv = json::parse(v1.out);
  CHECK(jv.at("ok") == true);
  CHECK(jv.at("root_exact") == true);
  std::string rep1 = slurp(rep);
  CHECK(rep1.rfind("px,py,pz,qx,qy,qz,hyper,graph_dist,err\n", 0) == 0);
  Run v2 = run_cli(vargs);
  CHECK(v2.out == v1.out);
  CHECK(slurp(rep) == rep1);
}

TEST_CASE("integer regime engages exactly when both scales reach 10") {
  Run r = run_cli("verify-hyperbolic --radius 12 --epsilon 10 --delta 10 --seed 2 --samples 200");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j.at("integer_mode") == true);
  CHECK(j.at("ok") == true);

  Run r2 = run_cli("verify-hyperbolic --radius 12 --epsilon 10 --delta 11 --seed 2 --samples 200");
  CHECK(r2.code == 0);
  CHECK(json::parse(r2.out).at("integer_mode") == false);
}

TEST_CASE("export: planar or hyperbolic, never both") {
  fs::path out = tdir() / "export.csv";
  Run p = run_cli("export --n 10 --m 2 --out " + out.string());
  CHECK(p.code == 0);
  CHECK(json::parse(p.out).at("kind") == "planar");
  CHECK(slurp(out).rfind("x1,y1,layer1,x2,y2,layer2,length\n", 0) == 0);

  Run h = run_cli("export --radius 4 --out " + out.string());
  CHECK(h.code == 0);
  CHECK(json::parse(h.out).at("kind") == "hyperbolic");

  CHECK(run_cli("export --out " + out.string()).code == 2);
  CHECK(run_cli("export --n 10 --m 2 --radius 4 --out " + out.string()).code == 2);
}
