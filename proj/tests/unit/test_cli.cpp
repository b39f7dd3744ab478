#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "ptlab/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ptlab::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("spectrum") {
  const auto r = run({"spectrum", "--model", "hc", "--range", "0:1:3"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("R,idx,re,im\n", 0) == 0);
  CHECK(count_lines(r.out) == 1 + 3 * 5);
}

TEST_CASE("kep") {
  const auto r = run({"kep", "--model", "rho_a", "--bracket", "0.5:1.5", "--tol", "1e-9"});
  CHECK(r.code == 0);
  CHECK(std::abs(std::stod(r.out) - 1.036340418) < 1e-6);

  const auto c = run({"kep", "--model", "hc", "--bracket", "0.5:1.5", "--coalescence"});
  CHECK(c.code == 0);
  CHECK(c.out.find("algebraic,2") != std::string::npos);
  CHECK(c.out.find("geometric,1") != std::string::npos);

  CHECK(run({"kep", "--model", "hc", "--bracket", "0:0.5"}).code == 1);
  CHECK(run({"kep", "--model", "hc"}).code == 1);
}

TEST_CASE("metric") {
  const auto d = run({"metric", "--model", "hc", "--R", "0.5", "--method", "diagonal"});
  CHECK(d.code == 0);
  CHECK(d.out.find("positive-definite") != std::string::npos);

  const auto s = run({"metric", "--model", "hc", "--R", "1", "--method", "spectral"});
  CHECK(s.code == 2);
  CHECK(s.err.find("deficiency") != std::string::npos);

  CHECK(run({"metric", "--model", "hc", "--R", "0.5", "--method", "bogus"}).code == 1);
  CHECK(run({"metric", "--model", "h7", "--R", "0.2", "--method", "recurrent"}).code == 0);
  CHECK(run({"metric", "--model", "hc", "--R", "1", "--method", "recurrent"}).code == 2);
}

TEST_CASE("positivity, pseudometric and bound states") {
  const auto p = run({"positivity", "--source", "band", "--w", "0.5", "--range", "0:0.9:10"});
  CHECK(p.code == 0);
  CHECK(p.out.rfind("param,min_eig,classification\n", 0) == 0);
  CHECK(count_lines(p.out) == 11);

  const auto x = run({"pseudometric", "--R", "0", "--xi-range", "0:1:3"});
  CHECK(x.code == 0);
  CHECK(count_lines(x.out) == 1 + 3 * 7);

  const auto b = run({"bound-states", "--model", "hc", "--R", "0.5"});
  CHECK(b.code == 0);
  CHECK(count_lines(b.out) == 6);
}

TEST_CASE("configuration errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"nonsense"}).code == 1);
  CHECK(run({"spectrum", "--model", "nope", "--range", "0:1:3"}).code == 1);
  CHECK(run({"spectrum", "--range", "0:1"}).code == 1);
  CHECK(run({"spectrum", "--range", "0:1:3", "--tol", "-1"}).code == 1);
  CHECK(run({"spectrum", "--model", "/nonexistent.json", "--range", "0:1:3"}).code == 1);
  CHECK(run({"presets"}).code == 0);
}

TEST_CASE("model file input") {
  const std::string path = "ptlab_cli_model.json";
  {
    std::ofstream f(path);
    f << R"({"n": 2, "z": {"re": 0.5, "im": 0.5}, "a": 0, "b": 0,
           "alpha": [{"re": 0, "im": 0}], "beta": [{"re": 0, "im": 0}]})";
  }
  const auto r = run({"spectrum", "--model", path, "--range", "0:1:2"});
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 1 + 2 * 3);
  std::remove(path.c_str());
}

TEST_CASE("installed binary exit codes") {
  auto status = [](const std::string& args) {
    const std::string cmd = std::string("\"") + PTLAB_CLI_PATH + "\" " + args + " >/dev/null 2>&1";
    const int raw = std::system(cmd.c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("presets") == 0);
  CHECK(status("frobnicate") == 1);
  CHECK(status("metric --model hc --R 1 --method spectral") == 2);
}
