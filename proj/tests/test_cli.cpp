#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <sys/wait.h>

#include "cli.hpp"
#include "coocfeat/estimate.hpp"
#include "doctest.h"
#include "fixtures.hpp"
#include "json.hpp"

using coocfeat::cli::run;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "coocfeat");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "coocfeat_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

std::string fx(const std::string& name) { return fixtures::fixture_path(name); }

Outcome count_three_line(const fs::path& out) {
  return invoke({"count", fx("three_line.txt"), "--features", fx("three_line.features"), "--labels",
                 fx("three_line.labels"), "--window", "2", "--out", out.string()});
}

}  // namespace

TEST_CASE("count reproduces the hand-counted model") {
  const auto path = scratch("three.json");
  const auto r = count_three_line(path);
  CHECK(r.code == 0);
  CHECK(r.out.find("words\t7") != std::string::npos);
  CHECK(r.out.find("total_tokens\t9") != std::string::npos);
  const auto first = coocfeat::read_file(path);
  CHECK(first == coocfeat::read_file(fx("three_line.model.json")));

  CHECK(count_three_line(path).code == 0);
  CHECK(coocfeat::read_file(path) == first);
}

TEST_CASE("count errors") {
  const auto empty = scratch("empty.txt");
  coocfeat::write_file(empty, "");
  const auto r = invoke({"count", empty.string(), "--features", fx("three_line.features"), "--labels",
                         fx("three_line.labels"), "--out", scratch("e.json").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("EmptyCorpus") != std::string::npos);

  CHECK(invoke({"count", "/nonexistent", "--features", fx("three_line.features"), "--labels",
                fx("three_line.labels"), "--out", scratch("e.json").string()})
            .code == 2);
  CHECK(invoke({"count", fx("three_line.txt")}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({}).code == 2);
}

TEST_CASE("count tsv export") {
  const auto path = scratch("three.tsv");
  const auto r = invoke({"count", fx("three_line.txt"), "--features", fx("three_line.features"), "--labels",
                         fx("three_line.labels"), "--format", "tsv", "--out", path.string()});
  CHECK(r.code == 0);
  CHECK(coocfeat::read_file(path).rfind("word\tn\ty_animal_cat\tc_softly\n", 0) == 0);
}

TEST_CASE("score") {
  const auto r = invoke({"score", fx("t4.json"), "--method", "raw-corr", "--format", "tsv"});
  CHECK(r.code == 0);
  CHECK(r.out.find("p1\t0.9473684210") != std::string::npos);
  CHECK(r.out.find("p1") < r.out.find("p2"));

  const auto top = invoke({"score", fx("t4.json"), "--top", "1", "--format", "json"});
  CHECK(top.code == 0);
  const auto j = nlohmann::json::parse(top.out);
  CHECK(j["entries"].size() == 1);
  CHECK(j["entries"][0]["exact"] == "18/19");

  const auto frac = invoke({"score", fx("fractional.json"), "--method", "closed-form"});
  CHECK(frac.code == 3);
  CHECK(frac.err.find("NotDeterministicLabel") != std::string::npos);

  CHECK(invoke({"score", fx("t4.json"), "--method", "bogus"}).code == 2);
  CHECK(invoke({"score", fx("t4.json"), "--task", "missing"}).code == 2);
  CHECK(invoke({"score", fx("tampered.json")}).code == 2);
}

TEST_CASE("decompose") {
  const auto id = invoke({"decompose", fx("t4.json"), "--feature", "p1", "--function", "identity", "--format", "json"});
  CHECK(id.code == 0);
  const auto j = nlohmann::json::parse(id.out);
  CHECK(j["total"].get<double>() == doctest::Approx(18.0 / 19.0).epsilon(1e-14));
  CHECK(j["bound_part"].get<double>() == doctest::Approx(1.0));
  CHECK(j["bound_exact"] == "1/1");

  const auto pmi = invoke({"decompose", fx("t4.json"), "--feature", "p1", "--function", "pmi", "--format", "json"});
  CHECK(pmi.code == 0);
  CHECK(nlohmann::json::parse(pmi.out)["identity_ok"] == true);

  const auto flat = invoke({"decompose", fx("constant_feature.json"), "--feature", "flat"});
  CHECK(flat.code == 3);
  CHECK(flat.err.find("DegenerateVariance") != std::string::npos);

  CHECK(invoke({"decompose", fx("t4.json"), "--feature", "p1", "--function", "power:2"}).code == 0);
  CHECK(invoke({"decompose", fx("t4.json"), "--feature", "p1", "--function", "affine:2,1"}).code == 0);
  CHECK(invoke({"decompose", fx("t4.json"), "--feature", "p1", "--function", "cosine"}).code == 2);
  CHECK(invoke({"decompose", fx("t4.json"), "--feature", "nope"}).code == 2);
}

TEST_CASE("select") {
  const auto r = invoke({"select", fx("t4.json"), "--budget", "2", "--format", "json"});
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["trace"] == nlohmann::json::array({1.0}));
  CHECK(j["selected"] == nlohmann::json::array({"p1"}));

  CHECK(invoke({"select", fx("t4.json"), "--budget", "0"}).code == 2);
  CHECK(invoke({"select", fx("t4.json"), "--budget", "9"}).code == 0);
}

TEST_CASE("verify") {
  const auto ok = invoke({"verify", "--suite", "lemma1", "--trials", "50", "--seed", "7"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("PASS") != std::string::npos);

  const auto bad = invoke({"verify", "--suite", "theorem2", "--trials", "5", "--seed", "7", "--inject-fault", "1e-6"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL") != std::string::npos);
  CHECK(bad.err.find("--seed 7") != std::string::npos);

  CHECK(invoke({"verify", "--suite", "nope"}).code == 2);
  CHECK(invoke({"verify"}).code == 2);
}

TEST_CASE("installed binary exit codes") {
  const std::string bin = COOCFEAT_BIN;
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status(bin + " --help") == 0);
  CHECK(status(bin + " score " + fx("t4.json")) == 0);
  CHECK(status(bin + " score " + fx("fractional.json") + " --method closed-form") == 3);
  CHECK(status(bin + " select " + fx("t4.json") + " --budget 0") == 2);
}
