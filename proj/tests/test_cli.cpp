#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "quadric/model_spaces.hpp"
#include "quadric/report.hpp"

using namespace quadric;

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

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("quadric_cli_" + name)).string();
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("verify ambient") {
  const Run r = run({"verify", "ambient", "--m", "4"});
  CHECK(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["command"] == "verify ambient");
  CHECK(doc["summary"]["failed"] == 0);
  CHECK(run({"verify", "ambient", "--m", "0"}).code == 2);
  CHECK(run({"verify", "ambient", "--m", "65"}).code == 2);
  const Run low = run({"verify", "ambient", "--m", "2"});
  CHECK(low.code == 0);
  CHECK(low.err.find("assume m >= 3") != std::string::npos);
}

TEST_CASE("verify tube and the excluded radius") {
  const Run ok = run({"verify", "tube", "--k", "2", "--r", "0.6"});
  CHECK(ok.code == 0);
  const Run bad = run({"verify", "tube", "--k", "2", "--r", "0.7853981633974483"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("0.7853981633974") != std::string::npos);
  CHECK(run({"verify", "tube", "--k", "2", "--r", "0.7853981633974483",
             "--no-non-vanishing"})
            .code != 2);
}

TEST_CASE("scan tube reports skipped radii") {
  const Run r = run({"scan", "tube", "--k", "3", "--r-min", "0.1", "--r-max", "1.5",
                     "--steps", "30"});
  CHECK(r.code == 0);
  const Json doc = Json::parse(r.out);
  CHECK(doc["params"]["points"] == 29);
  CHECK(doc["params"]["skipped"].size() == 1);
  CHECK(r.err.find("skipped 1") != std::string::npos);
}

TEST_CASE("nonexistence") {
  const Run r = run({"nonexistence", "--m", "3", "--alpha-samples", "5"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["result"]["certificate"] == "contradiction in every sample");
  CHECK(run({"nonexistence", "--m", "3", "--alpha", "0"}).code == 2);
  CHECK(run({"nonexistence", "--m", "3", "--alpha", "1", "--alpha", "-2"}).code == 0);
}

TEST_CASE("classify round trip through a file") {
  const std::string path = temp_path("tube.json");
  const Run exported = run({"export", "tube", "--k", "2", "--r", "0.6", "--json", path});
  REQUIRE(exported.code == 0);
  const Run r = run({"classify", path});
  CHECK(r.code == 0);
  CHECK(r.err.find("tube k=2 r=0.600000") != std::string::npos);
  CHECK(Json::parse(r.out)["result"]["description"] == "tube k=2 r=0.600000");
  std::remove(path.c_str());
}

TEST_CASE("classify exit codes") {
  const std::string bad = temp_path("bad.json");
  write(bad, "{\n  \"m\": 2,\n  \"N\": [1, 0\n");
  const Run malformed = run({"classify", bad});
  CHECK(malformed.code == 2);
  CHECK(malformed.err.find("line ") != std::string::npos);
  CHECK(malformed.err.find("column ") != std::string::npos);

  Json tube = hypersurface_to_json(build_tube(2, 0.6).h);
  for (auto& v : tube["N"]) v = v.get<double>() * 3.0;
  const std::string nonunit = temp_path("nonunit.json");
  write(nonunit, tube.dump());
  const Run n = run({"classify", nonunit});
  CHECK(n.code == 2);
  CHECK(n.err.find("normal not unit (|N| = 3") != std::string::npos);

  std::mt19937_64 rng(5);
  const std::string perturbed = temp_path("perturbed.json");
  write(perturbed, hypersurface_to_json(perturbed_isotropic(2, 0.6, rng)).dump());
  const Run p = run({"classify", perturbed});
  CHECK(p.code == 1);
  CHECK(p.err.find("residual") != std::string::npos);
  CHECK(Json::parse(p.out)["result"]["reeb_parallel_residual"].get<double>() > 1e-6);

  CHECK(run({"classify", temp_path("does_not_exist.json")}).code == 2);
  for (const auto& f : {bad, nonunit, perturbed}) std::remove(f.c_str());
}

TEST_CASE("spectrum commands") {
  const Run a = run({"spectrum", "ambient", "--m", "4", "--kind", "isotropic"});
  CHECK(a.code == 0);
  CHECK(a.err.find("{0 (3), 1 (4), 4 (1)}") != std::string::npos);
  const Run t = run({"spectrum", "tube", "--k", "2", "--r", "0.6", "--operator",
                     "structure-jacobi"});
  CHECK(t.code == 0);
  CHECK(Json::parse(t.out)["result"]["clusters"].size() == 3);
}

TEST_CASE("json output path and determinism") {
  const std::string path = temp_path("report.json");
  CHECK(run({"verify", "ambient", "--m", "3", "--json", path, "--seed", "11"}).code == 0);
  std::ifstream in(path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(Json::parse(text)["seed"] == 11);
  CHECK(run({"verify", "ambient", "--m", "3", "--seed", "11"}).out == text);
  CHECK(run({"verify", "ambient", "--m", "3", "--seed", "11", "--serial"}).out == text);
  std::remove(path.c_str());
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "tube", "--variant", "sideways"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}
