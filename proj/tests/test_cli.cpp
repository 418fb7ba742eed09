#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

struct TempDir {
  std::string path;
  TempDir() {
    char tmpl[] = "/tmp/qac_cli_XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    path = tmpl;
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

// `extra` goes in front of the binary, e.g. an environment assignment
RunResult run(const TempDir& dir, const std::string& args, const std::string& extra = "") {
  static int counter = 0;
  const std::string out_path = dir.path + "/.out" + std::to_string(counter);
  const std::string err_path = dir.path + "/.err" + std::to_string(counter);
  ++counter;
  const std::string cmd =
      extra + " " + QAC_CLI_PATH + " " + args + " >" + out_path + " 2>" + err_path;
  const int raw = std::system(cmd.c_str());
  REQUIRE(raw != -1);
  RunResult r;
  r.code = WEXITSTATUS(raw);
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

// builds the two-element search instance whose ground is index 1
std::string build_hit(const TempDir& dir) {
  const std::string prefix = dir.path + "/hit";
  const RunResult r = run(dir, "build search --n 2 --bits 1 --values 1,0 --target 0 --out-prefix " +
                                   prefix);
  REQUIRE(r.code == 0);
  return prefix;
}

std::string solve_args(const std::string& prefix) {
  return "solve --qubo " + prefix + ".qubo --varmap " + prefix + ".varmap.json";
}

}  // namespace

TEST_CASE("version flag") {
  TempDir dir;
  const RunResult r = run(dir, "--version");
  CHECK(r.code == 0);
  CHECK(r.out == "0.1.0\n");
}

TEST_CASE("build writes the file pair and prints resources") {
  TempDir dir;
  const std::string prefix = dir.path + "/s";
  const RunResult r =
      run(dir, "build search --n 2 --bits 1 --values 1,0 --target 0 --out-prefix " + prefix);
  CHECK(r.code == 0);
  CHECK(std::filesystem::exists(prefix + ".qubo"));
  CHECK(std::filesystem::exists(prefix + ".varmap.json"));
  CHECK(r.err.find("wrote " + prefix + ".qubo") != std::string::npos);

  const json rep = json::parse(r.out);
  CHECK(rep["total_vars"].get<std::size_t>() > 0);
  CHECK(rep.contains("degree_histogram"));
}

TEST_CASE("solve reports the ground state") {
  TempDir dir;
  const std::string prefix = build_hit(dir);

  SUBCASE("hit decodes the matching index") {
    const RunResult r = run(dir, solve_args(prefix));
    CHECK(r.code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep["energy"]["fraction"] == "0");
    CHECK(rep["ground_count"] == 1);
    REQUIRE(rep["states"].size() == 1);
    CHECK(rep["states"][0]["decode"]["n"] == 1);
    CHECK(rep["states"][0]["decode"]["not_found"] == 0);
  }

  SUBCASE("miss pays the failure penalty") {
    const std::string miss = dir.path + "/miss";
    REQUIRE(run(dir, "build search --n 2 --bits 1 --values 1,1 --target 0 --out-prefix " + miss)
                .code == 0);
    const RunResult r = run(dir, solve_args(miss));
    CHECK(r.code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep["energy"]["fraction"] == "1/2");
    CHECK(rep["states"][0]["decode"]["not_found"] == 1);
  }

  SUBCASE("classification adds the three class minima") {
    const RunResult r = run(dir, solve_args(prefix) + " --classify");
    CHECK(r.code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep["classes"]["found"]["fraction"] == "0");
    CHECK(rep["classes"]["not_found"]["fraction"] == "1/2");
    CHECK(rep["classes"]["invalid"]["fraction"] == "1");
  }

  SUBCASE("clamp file applies on top of the build clamp") {
    const std::string clamp_path = dir.path + "/clamp.json";
    std::ofstream(clamp_path) << R"({"flags": {"not_found": 1}})";
    const RunResult r = run(dir, solve_args(prefix) + " --clamp " + clamp_path);
    CHECK(r.code == 0);
    CHECK(json::parse(r.out)["energy"]["fraction"] == "1/2");
  }
}

TEST_CASE("sort solve emits the sorted array") {
  TempDir dir;
  const std::string prefix = dir.path + "/sort";
  REQUIRE(run(dir, "build sort --n 2 --bits 2 --values 3,1 --out-prefix " + prefix).code == 0);
  const RunResult r = run(dir, solve_args(prefix));
  CHECK(r.code == 0);
  const json rep = json::parse(r.out);
  REQUIRE(rep["states"].size() == 1);
  CHECK(rep["states"][0]["decode"]["sorted"] == json::array({1, 3}));
  CHECK(rep["states"][0]["decode"]["perm"] == json::array({1, 0}));
}

TEST_CASE("reruns are byte identical") {
  TempDir dir;
  const std::string prefix = build_hit(dir);

  const RunResult a = run(dir, solve_args(prefix));
  const RunResult b = run(dir, solve_args(prefix));
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  const std::string sa = solve_args(prefix) + " --mode sa --seed 5 --reads 10 --sweeps 200";
  const RunResult c = run(dir, sa);
  const RunResult d = run(dir, sa);
  CHECK(c.code == 0);
  CHECK(c.out == d.out);
  CHECK(json::parse(c.out)["method"] == "anneal");
}

TEST_CASE("exit codes distinguish failure classes") {
  TempDir dir;

  SUBCASE("argument errors exit 2") {
    CHECK(run(dir, "build search --n 2").code == 2);
    CHECK(run(dir, "frobnicate").code == 2);
    CHECK(run(dir, "build search --n 2 --bits 1 --variant bogus --out-prefix " + dir.path + "/x")
              .code == 2);
  }

  SUBCASE("missing files exit 2") {
    const RunResult r =
        run(dir, "solve --qubo " + dir.path + "/no.qubo --varmap " + dir.path + "/no.json");
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") != std::string::npos);
  }

  SUBCASE("oversized exhaustive solves exit 3") {
    const std::string prefix = dir.path + "/big";
    REQUIRE(run(dir, "build search --n 3 --bits 3 --values 7,1,4 --target 2 --out-prefix " +
                         prefix)
                .code == 0);
    const RunResult r = run(dir, solve_args(prefix));
    CHECK(r.code == 3);
    CHECK(r.err.find("anneal") != std::string::npos);
  }

  SUBCASE("tampered files exit 4") {
    const std::string prefix = build_hit(dir);
    const std::string qubo_path = prefix + ".qubo";
    std::string text = slurp(qubo_path);
    const std::size_t last_sp = text.find_last_of(' ');
    std::ofstream(qubo_path) << text.substr(0, last_sp + 1) + "123456\n";
    const RunResult r = run(dir, solve_args(prefix));
    CHECK(r.code == 4);
    CHECK(r.err.find("error:") != std::string::npos);
  }
}

TEST_CASE("sweep renders csv rows") {
  TempDir dir;
  const RunResult r =
      run(dir, "sweep --builder search_sum --n-start 2 --n-end 6 --n-step 2 --bits 1");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("builder,variant,n,kv,", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 4);
  CHECK(r.out.find("search,summation,6,1,") != std::string::npos);

  CHECK(run(dir, "sweep --builder bogus --n-start 2 --n-end 4 --bits 1").code == 2);
  CHECK(run(dir, "sweep --builder sort --n-start 4 --n-end 2 --bits 1").code == 2);
}

TEST_CASE("relative outputs land in the out dir") {
  TempDir dir;
  const std::string build_cmd = "build search --n 2 --bits 1 --values 1,0 --target 0 "
                                "--out-prefix nested";
  const RunResult b = run(dir, build_cmd, "QAC_OUT_DIR=" + dir.path);
  CHECK(b.code == 0);
  REQUIRE(std::filesystem::exists(dir.path + "/nested.qubo"));
  REQUIRE(std::filesystem::exists(dir.path + "/nested.varmap.json"));

  const RunResult s = run(dir,
                          solve_args(dir.path + "/nested") + " --out report.json",
                          "QAC_OUT_DIR=" + dir.path);
  CHECK(s.code == 0);
  CHECK(slurp(dir.path + "/report.json") == s.out);

  // absolute prefixes ignore the redirect
  const RunResult abs = run(dir,
                            "build sort --n 2 --bits 1 --values 1,0 --out-prefix " + dir.path +
                                "/abs",
                            "QAC_OUT_DIR=/nonexistent");
  CHECK(abs.code == 0);
  CHECK(std::filesystem::exists(dir.path + "/abs.qubo"));
}
