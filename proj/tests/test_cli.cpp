#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sstream>

#include "dualcalc/cli.hpp"
#include "dualcalc/dual.hpp"

using namespace dualcalc;
using Json = nlohmann::ordered_json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("eval") {
  const Run r = run({"eval", "x^2", "--at", "1+1eps"});
  CHECK(r.code == kExitOk);
  CHECK(r.out == "1+2eps\n");
  const Json j = Json::parse(run({"eval", "x^2", "--at", "1+1eps", "--json"}).out);
  CHECK(j["command"] == "eval");
  CHECK(j["inputs"]["at"] == "1+1eps");
  CHECK(j["result"]["value"]["text"] == "1+2eps");
  CHECK(j["result"]["value"]["re"] == 1.0);
  CHECK(j["result"]["value"]["ze"] == 2.0);
}

TEST_CASE("compare") {
  CHECK(run({"compare", "1", "1+1eps"}).out == "less (type 1); greater (type 2)\n");
  CHECK(run({"compare", "-1", "2"}).out == "less (type 1); less (type 2)\n");
  const Json j = Json::parse(run({"compare", "2+3eps", "2+3eps", "--json"}).out);
  CHECK(j["result"]["relation"] == "equal");
  CHECK(j["result"]["equal"] == true);
}

TEST_CASE("integrate") {
  const Run r = run({"integrate", "x", "--from", "0", "--to", "1+1eps", "--type", "1", "--tol", "1e-4"});
  CHECK(r.out.rfind("0.5+1eps \xC2\xB1 ", 0) == 0);
  // The example tolerance needs more than the default 12 levels.
  CHECK(r.code == kExitVerificationFailed);

  const Json j = Json::parse(
      run({"integrate", "x", "--from", "0", "--to", "1+1eps", "--type", "1", "--tol", "1e-4", "--json"}).out);
  CHECK(j["result"]["value"]["text"] == "0.5+1eps");
  CHECK(j["result"]["converged"] == false);
  CHECK(j["provenance"]["depth"] == 12);
  CHECK(j["provenance"]["cells_sampled"] == 8191);

  const Run ok = run({"integrate", "x", "--from", "0", "--to", "1+1eps", "--tol", "1e-3"});
  CHECK(ok.code == kExitOk);
  const Run deep = run({"integrate", "x", "--from", "0", "--to", "1+1eps", "--tol", "1e-4", "--depth", "15"});
  CHECK(deep.code == kExitOk);
  CHECK(deep.out.rfind("0.5+1eps", 0) == 0);
}

TEST_CASE("json output round-trips and is byte-stable") {
  const std::vector<std::vector<std::string>> commands = {
      {"eval", "sin(x)/3", "--at", "0.7-2eps", "--json"},
      {"integrate", "exp(x)*x", "--from", "0.1+1eps", "--to", "1.3-0.2eps", "--type", "2", "--probe", "3",
       "--seed", "9", "--json"},
      {"limit-check", "cos(x)", "--at", "0.4+0.1eps", "--seed", "5", "--samples", "200", "--json"},
      {"ftc-check", "x*sin(x)", "--from", "0", "--to", "1+1eps", "--part", "1", "--at", "0.5+0.5eps", "--h", "1e-2",
       "--tol", "5e-2", "--samples", "4", "--json"},
  };
  for (const auto& cmd : commands) {
    const Run a = run(cmd);
    const Run b = run(cmd);
    CHECK(a.out == b.out);
    const Json j = Json::parse(a.out);
    CHECK(j.dump(2) + "\n" == a.out);
    std::function<void(const Json&)> walk = [&](const Json& node) {
      if (node.is_object() && node.contains("text") && node.contains("re")) {
        CHECK(parse_dual(node["text"].get<std::string>()) ==
              DualReal(node["re"].get<double>(), node["ze"].get<double>()));
      }
      if (node.is_structured()) {
        for (const auto& child : node) walk(child);
      }
    };
    walk(j);
  }
}

TEST_CASE("derivative commands") {
  CHECK(run({"diff", "x^2", "--at", "1+1eps"}).out == "2+2eps\n");
  const Run cr = run({"check-cr", "sin(x)", "--at", "0.3+2eps"});
  CHECK(cr.code == kExitOk);
  CHECK(cr.out.rfind("pass", 0) == 0);
  CHECK(run({"limit-check", "x^2", "--at", "1", "--derivative", "3", "--delta", "1e-3", "--eps", "0.1"}).code ==
        kExitVerificationFailed);
  CHECK(run({"limit-check", "x^2", "--at", "1", "--type", "2"}).code == kExitOk);
  CHECK(run({"diff", "x^2", "--at", "1", "--type", "1"}).code == kExitOk);
}

TEST_CASE("fundamental theorem commands") {
  const Run p2 = run({"ftc-check", "x^2", "--from", "0", "--to", "1+1eps", "--tol", "1e-4"});
  CHECK(p2.code == kExitOk);
  const Run p1 = run({"ftc-check", "sin(x)", "--from", "0", "--to", "2", "--part", "1", "--at", "1", "--h", "1e-3",
                      "--tol", "1e-2"});
  CHECK(p1.code == kExitOk);
  CHECK(run({"ftc-check", "x", "--from", "0", "--to", "1", "--part", "1"}).code == kExitUsage);
}

TEST_CASE("errors map to exit codes") {
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"frobnicate"}).code == kExitUsage);
  CHECK(run({"eval", "x"}).code == kExitUsage);
  CHECK(run({"eval", "x^^2", "--at", "1"}).code == kExitUsage);
  CHECK(run({"eval", "x", "--at", "1+"}).code == kExitUsage);
  CHECK(run({"integrate", "x", "--from", "1", "--to", "0"}).code == kExitUsage);
  CHECK(run({"integrate", "x", "--from", "0", "--to", "1", "--type", "3"}).code == kExitUsage);
  CHECK(run({"eval", "--help"}).code == kExitOk);

  const Run dom = run({"eval", "log(x)", "--at", "-1", "--json"});
  CHECK(dom.code == kExitNumeric);
  const Json j = Json::parse(dom.out);
  CHECK(j["error"]["code"] == "domain_error");
  CHECK(dom.err.find("domain_error") != std::string::npos);
  CHECK(run({"eval", "1/x", "--at", "0+1eps"}).code == kExitNumeric);
}
