#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "kvertex/cli/cli.hpp"

using namespace kvertex::cli;

namespace {

struct Ran {
  int code;
  std::string out;
  std::string err;
};

Ran run_args(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code;
  try {
    code = run(parse_args(args), out, err);
  } catch (const UsageError& e) {
    err << e.what();
    code = kUsage;
  }
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("argument parsing") {
  const Command c = parse_args({"dt-vertex", "--legs", ";;", "--order", "4", "--format", "json"});
  CHECK(c.subcommand == "dt-vertex");
  CHECK(c.order == 4);
  CHECK(c.legs == ";;");
  CHECK(parse_args({"check-identities", "--suite", "qbinom", "--max-n", "8"}).max_n == 8);
  CHECK(parse_args({"check-wcf", "--order", "3"}).frame_dim == 8);
  CHECK(parse_args({"bridge"}).order == 2);
  CHECK(parse_args({"dt-vertex", "--legs", "2,1;;1"}).legs == "2,1;;1");

  CHECK_THROWS_AS(parse_args({"dt-vertex", "--order", "-1"}), UsageError);
  CHECK_THROWS_AS(parse_args({"dt-vertex", "--legs", "1,2;;"}), UsageError);
  CHECK_THROWS_AS(parse_args({"dt-vertex", "--frame-dim", "8"}), UsageError);
  CHECK_THROWS_AS(parse_args({"dt-vertex", "--format", "xml"}), UsageError);
  CHECK_THROWS_AS(parse_args({"check-wcf", "--order", "9", "--frame-dim", "9"}), UsageError);
  CHECK_THROWS_AS(parse_args({"cy-limit", "--legs", "1;;"}), UsageError);
  CHECK_THROWS_AS(parse_args({"frobnicate"}), UsageError);
  CHECK_THROWS_AS(parse_args({}), UsageError);
}

TEST_CASE("subcommand outcomes") {
  const Ran wcf = run_args({"check-wcf", "--order", "3", "--frame-dim", "8"});
  CHECK(wcf.code == kOk);
  const auto rec = nlohmann::json::parse(wcf.out);
  CHECK(rec["verdict"] == true);

  const Ran cy = run_args({"cy-limit", "--order", "4", "--format", "csv"});
  CHECK(cy.code == kOk);
  CHECK(cy.out == "power,constant,expected\n0,1,1\n1,-1,-1\n2,3,3\n3,-6,-6\n4,13,13\n");

  const Ran ids = run_args({"check-identities", "--suite", "qbinom", "--max-n", "8", "--format", "csv"});
  CHECK(ids.code == kOk);
  CHECK(ids.out.find("QBINOM,true,\"28 instances\"") != std::string::npos);

  CHECK(run_args({"bridge", "--order", "1", "--frame-dim", "4"}).code == kOk);
  CHECK(run_args({"dt-vertex", "--order", "-1"}).code == kUsage);
}

TEST_CASE("output is deterministic and independent of jobs") {
  const Ran a = run_args({"dt-vertex", "--legs", "1;;", "--order", "3", "--jobs", "1"});
  const Ran b = run_args({"dt-vertex", "--legs", "1;;", "--order", "3", "--jobs", "3"});
  CHECK(a.code == kOk);
  CHECK(a.out == b.out);
  const Ran p = run_args({"pt-vertex", "--legs", "1;;", "--order", "2", "--format", "pretty"});
  CHECK(p.out.find("κ") != std::string::npos);

  const std::string path = "kvertex_cli_test_out.json";
  CHECK(run_args({"quot2-vertex", "--order", "1", "--out", path}).code == kOk);
  std::ifstream f(path);
  std::stringstream buf;
  buf << f.rdbuf();
  CHECK(buf.str() == run_args({"quot2-vertex", "--order", "1"}).out);
  std::remove(path.c_str());
}
