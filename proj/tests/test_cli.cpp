#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <sys/wait.h>

// End-to-end tests against the installed binary: exit-code contract,
// canonical JSON output, payload channels, and text rendering.

namespace {

using nlohmann::json;

struct RunResult {
  int code;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  std::string cmd = (env.empty() ? "" : env + " ") + std::string(TORIC_CLI_BIN) + " " + args +
                    " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

json result_of(const RunResult& r) {
  json j = json::parse(r.out);
  REQUIRE(j["status"] == "ok");
  REQUIRE(j["version"] == "1");
  return j["result"];
}

const char* kWedgeCone = R"({"dim":2,"normals":[[0,1],[2,-1]]})";

}  // namespace

TEST_CASE("cli: canonical classify output, byte for byte") {
  auto r = run_cli("classify --p1 2,1,0 --p2 1,2,0");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "{\"diagnostics\":[],\"result\":{\"equivalent\":true},\"status\":\"ok\",\"version\":\"1\"}\n");
  // determinism across runs
  CHECK(run_cli("classify --p1 2,1,0 --p2 1,2,0").out == r.out);
}

TEST_CASE("cli: exit code contract") {
  CHECK(run_cli("no-such-command").code == 2);
  CHECK(run_cli("check-good").code == 2);                       // missing required flag
  CHECK(run_cli("classify --p1 0,1,0 --p2 1,1,0").code == 3);   // invalid parameters
  CHECK(run_cli("classify --p1 x,y,z --p2 1,1,0").code == 3);
  CHECK(run_cli("check-good --cone '{oops'").code == 3);        // malformed JSON
  CHECK(run_cli("chain 2 1").code == 4);                        // domain error
  CHECK(run_cli("count-tori 2 5").code == 4);
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("--version").code == 0);
}

TEST_CASE("cli: error reports carry diagnostics") {
  auto r = run_cli("chain 2 1");
  CHECK(r.code == 4);
  json j = json::parse(r.out);
  CHECK(j["status"] == "error");
  CHECK(j["result"].is_null());
  REQUIRE(j["diagnostics"].size() == 1);
  CHECK(j["diagnostics"][0] == "m = 3 gives non-integral trapezoid");
}

TEST_CASE("cli: count-tori and chain") {
  CHECK(result_of(run_cli("count-tori 5 2"))["count"] == 3);
  CHECK(result_of(run_cli("count-tori 1 1"))["count"] == 1);

  json chain = result_of(run_cli("chain 5 2"));
  CHECK(chain["k"] == 4);
  CHECK(chain["length_ell"] == 3);
  REQUIRE(chain["members"].size() == 3);
  CHECK(chain["members"][0]["m"] == 4);
  CHECK(chain["members"][1]["m"] == 2);
  CHECK(chain["members"][2]["m"] == 0);
  CHECK(chain["members"][0]["c"] == 1);

  json even = result_of(run_cli("chain 2 1 --parity even"));
  CHECK(even["k"] == 2);
  CHECK(even["length_ell"] == 2);
}

TEST_CASE("cli: build-cone") {
  auto r = run_cli("build-cone --hirzebruch 2,1,0");
  json cone = result_of(r);
  CHECK(cone["dim"] == 3);
  CHECK(cone["normals"] == json::parse("[[-1,0,2],[0,-1,1],[0,1,0],[1,0,0]]"));
  CHECK(cone["rays"] == json::parse("[[0,0,1],[0,1,1],[2,0,1],[2,1,1]]"));

  CHECK(run_cli("build-cone --hirzebruch 2,1,1").code == 3);  // non-integral trapezoid
  CHECK(run_cli("build-cone").code == 3);                     // neither input given
  // rational 'a' in the a,b,m form
  json half = result_of(run_cli("build-cone --hirzebruch 5/2,1,1"));
  CHECK(half["normals"].size() == 4);
}

TEST_CASE("cli: check-good") {
  SECTION("wedge cone fails at the apex") {
    auto r = run_cli(std::string("check-good --cone '") + kWedgeCone + "'");
    json rep = result_of(r);
    CHECK(rep["verdict"] == false);
    CHECK(rep["primitive_ok"] == true);
    CHECK(rep["minimal_ok"] == true);
    CHECK(rep["faces_ok"] == false);
    CHECK(rep["failing_face"]["dim"] == 0);
    CHECK(rep["failing_face"]["facets"] == json::parse("[0,1]"));
  }
  SECTION("a built standard cone round-trips and passes") {
    json built = result_of(run_cli("build-cone --hirzebruch 3,1,2"));
    json rep = result_of(run_cli("check-good --cone '" + built.dump() + "'"));
    CHECK(rep["verdict"] == true);
    CHECK(rep["failing_face"].is_null());
    // emitting the parsed cone again is byte-stable
    json again = result_of(run_cli("build-cone --hirzebruch 3,1,2"));
    CHECK(again.dump() == built.dump());
  }
  SECTION("non-pointed input is a domain error") {
    CHECK(run_cli(R"(check-good --cone '{"dim":2,"normals":[[1,0]]}')").code == 4);
  }
  SECTION("floats are rejected") {
    CHECK(run_cli(R"(check-good --cone '{"dim":2,"normals":[[1.5,0],[0,1]]}')").code == 3);
    CHECK(run_cli(R"(check-good --cone '{"dim":2,"normals":[[1,"x"],[0,1]]}')").code == 3);
  }
}

TEST_CASE("cli: payload channels agree") {
  const std::string payload = kWedgeCone;
  auto inline_run = run_cli("check-good --cone '" + payload + "'");

  std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                     "/toric_cli_payload.json";
  {
    std::ofstream f(path);
    f << payload;
  }
  auto file_run = run_cli("check-good --cone @" + path);
  CHECK(file_run.out == inline_run.out);
  CHECK(file_run.code == inline_run.code);

  // popen uses /bin/sh, so stick to POSIX: pipe the payload in via printf
  std::string piped = "printf '%s' '" + payload + "' | " + TORIC_CLI_BIN +
                      " check-good --cone - 2>/dev/null";
  FILE* pipe = popen(piped.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  pclose(pipe);
  CHECK(out == inline_run.out);
  std::remove(path.c_str());
}

TEST_CASE("cli: check-delzant") {
  json ok = result_of(run_cli(
      R"(check-delzant --polytope '{"dim":2,"vertices":[[0,0],[1,0],[1,1],[0,1]]}')"));
  CHECK(ok["delzant"] == true);
  CHECK(ok["integral"] == true);

  json bad = result_of(run_cli(
      R"(check-delzant --polytope '{"dim":2,"vertices":[[0,0],[1,0],[0,2]]}')"));
  CHECK(bad["delzant"] == false);
  CHECK(bad["vertices"][1]["unimodular_ok"] == false);

  // half-integral vertices parse as rationals
  json half = result_of(run_cli(
      R"(check-delzant --polytope '{"dim":2,"vertices":[[0,0],["1/2",0],["1/2","1/2"],[0,"1/2"]]}')"));
  CHECK(half["integral"] == false);

  // a non-convex vertex list is not a valid polytope payload
  CHECK(run_cli(
            R"(check-delzant --polytope '{"dim":2,"vertices":[[0,0],[2,0],[1,1],[2,2],[0,2]]}')")
            .code == 3);
}

TEST_CASE("cli: check-free") {
  auto cone = run_cli("build-cone --hirzebruch 2,1,0");
  json built = result_of(cone);
  std::string payload = built.dump();
  json rep = result_of(run_cli("check-free --cone '" + payload + "'"));
  CHECK(rep["free"] == true);
  CHECK(rep["fiber"] == json::parse("[0,0,1]"));

  CHECK(run_cli("check-free --cone '" + payload + "' --fiber 0,0,2").code == 4);
  CHECK(run_cli("check-free --cone '" + payload + "' --fiber 0,1").code == 3);

  // first orthant: circle direction collides with a facet normal
  CHECK(result_of(run_cli(
            R"(check-free --cone '{"dim":3,"normals":[[1,0,0],[0,1,0],[0,0,1]]}')"))["free"] ==
        false);
}

TEST_CASE("cli: equiv") {
  SECTION("trapezoid parameters") {
    json rep = result_of(run_cli("equiv --p1 2,1,0 --p2 1,2,0"));
    CHECK(rep["equivalent"] == true);
    CHECK(rep["witness"]["sign"] == 1);
    CHECK(rep["witness"]["transform"] == json::parse("[[0,1,0],[1,0,0],[0,0,1]]"));

    json none = result_of(run_cli("equiv --p1 3,1,2 --p2 3,1,0"));
    CHECK(none["equivalent"] == false);
    CHECK(none["witness"].is_null());

    json nosign = result_of(run_cli("equiv --p1 2,1,0 --p2 1,2,0 --no-sign"));
    CHECK(nosign["equivalent"] == true);
  }
  SECTION("raw cones") {
    json rep = result_of(run_cli(
        R"(equiv --c1 '{"dim":2,"normals":[[1,0],[0,1]]}' --c2 '{"dim":2,"normals":[[0,1],[2,-1]]}')"));
    CHECK(rep["equivalent"] == false);
  }
  SECTION("mixing input styles is rejected") {
    CHECK(run_cli(R"(equiv --c1 '{"dim":2,"normals":[[1,0],[0,1]]}' --p2 1,1,0)").code == 3);
    CHECK(run_cli("equiv").code == 3);
  }
}

TEST_CASE("cli: bundle") {
  json rep = result_of(run_cli("bundle 3 2"));
  CHECK(rep["c1_l1"] == 6);
  CHECK(rep["c1_l2"] == -4);
  CHECK(rep["iso_class"] == 1);
  CHECK(run_cli("bundle 4 2").code == 4);
}

TEST_CASE("cli: sweep") {
  auto r = run_cli("sweep --bmax 2 --cmax 2 --mmax 1 --threads 2");
  CHECK(r.code == 0);
  json rep = result_of(r);
  CHECK(rep["params"] == 8);
  CHECK(rep["disagreements"].empty());
  // m=0 gives one cross pair (b,c) = (1,2) ~ (2,1)
  CHECK(rep["equivalent_pairs"] == 1);

  SECTION("output is byte-identical across thread counts") {
    auto one = run_cli("sweep --bmax 3 --cmax 2 --mmax 2", "TORIC_CONE_LAB_THREADS=1");
    auto many = run_cli("sweep --bmax 3 --cmax 2 --mmax 2", "TORIC_CONE_LAB_THREADS=5");
    CHECK(one.code == 0);
    CHECK(one.out == many.out);
    CHECK(one.out == run_cli("sweep --bmax 3 --cmax 2 --mmax 2 --threads 2").out);
  }
}

TEST_CASE("cli: text format") {
  auto r = run_cli("classify --p1 2,1,0 --p2 1,2,0 --format text");
  CHECK(r.code == 0);
  CHECK(r.out == "equivalent: true\n");

  auto chain = run_cli("chain 5 2 --format text");
  CHECK(chain.out.find("k = 4, ell = 3") != std::string::npos);
  CHECK(chain.out.find("m = 4") != std::string::npos);

  auto err = run_cli("chain 2 1 --format text");
  CHECK(err.code == 4);
  CHECK(err.out == "error: m = 3 gives non-integral trapezoid\n");
}
