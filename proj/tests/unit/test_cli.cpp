#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gbk/cli.hpp"
#include "gbk/io.hpp"

using namespace gbk;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("gbk_cli_" + name);
  std::ofstream(path) << content;
  return path.string();
}

std::string last_line(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string last;
  while (std::getline(in, line)) {
    if (!line.empty()) last = line;
  }
  return last;
}

}  // namespace

TEST_CASE("minimax prints 5 on square(3)") {
  const Run r = run({"minimax", "--board", "square", "--n", "3"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("value 5\n") != std::string::npos);
  CHECK(r.out.rfind("# gbk ", 0) == 0);
  const Run j = run({"minimax", "--board", "square", "--n", "3", "--format", "json"});
  CHECK(json::parse(j.out).at("value") == 5);
}

TEST_CASE("constants") {
  const Run r = run({"constants"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("square_lower") != std::string::npos);
  CHECK(r.out.find("0.797885") != std::string::npos);
  const json doc = json::parse(run({"constants", "--format", "json"}).out);
  CHECK(doc.at("square_lower").get<double>() == doctest::Approx(0.797885).epsilon(1e-6));
}

TEST_CASE("estimate emits TrialStats JSON") {
  const Run r = run({"estimate", "--board", "square", "--n", "8", "--strategy", "scramble-greedy", "--trials", "10000",
                     "--seed", "7", "--jobs", "2"});
  REQUIRE(r.code == kExitOk);
  const json doc = json::parse(r.out);
  CHECK(doc.at("trials") == 10000);
  CHECK(doc.at("ci95")[0].get<double>() <= 17.5);
  CHECK(doc.at("ci95")[1].get<double>() >= 17.5);
  CHECK(doc.at("params").at("seed") == 7);
  const Run again = run({"estimate", "--board", "square", "--n", "8", "--strategy", "scramble-greedy", "--trials",
                         "10000", "--seed", "7", "--jobs", "1"});
  CHECK(json::parse(again.out).at("mean") == doc.at("mean"));
}

TEST_CASE("identical invocations give identical JSON") {
  const std::vector<std::string> args{"solve", "--n", "4", "--seed", "3", "--method", "greedy", "--format", "json"};
  CHECK(run(args).out == run(args).out);
}

TEST_CASE("gen output round-trips") {
  const Run r = run({"gen", "--board", "disk", "--n", "6"});
  REQUIRE(r.code == kExitOk);
  const Instance inst = instance_from_json(json::parse(r.out));
  CHECK(inst.board == make_board({BoardKind::disk, 6}));
  const std::string path = temp_file("disk.json", r.out);
  const Run solve = run({"solve", "--board-file", path, "--seed", "2", "--format", "json"});
  CHECK(solve.code == kExitOk);
  CHECK(json::parse(solve.out).contains("value"));
  std::remove(path.c_str());
}

TEST_CASE("eval with grid config and assignment files") {
  const std::string grid = temp_file("fig.txt", "-++-+\n++-++\n-++-+\n-----\n+++++\n");
  const Run r = run({"eval", "--n", "5", "--config", grid});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("value 5") != std::string::npos);

  json assignment;
  for (int i = 1; i <= 5; ++i) {
    assignment["row:" + std::to_string(i)] = i == 2 ? -1 : 1;
    assignment["col:" + std::to_string(i)] = 1;
  }
  const std::string afile = temp_file("assign.json", assignment.dump());
  const Run flipped = run({"eval", "--n", "5", "--config", grid, "--assignment", afile, "--format", "json"});
  CHECK(json::parse(flipped.out).at("value") == 15);

  const std::string partial = temp_file("partial.json", R"({"row:1": 1})");
  const Run bad = run({"eval", "--n", "5", "--config", grid, "--assignment", partial});
  CHECK(bad.code == kExitValidation);
  CHECK(bad.err.find("row:2") != std::string::npos);
  for (const auto& p : {grid, afile, partial}) std::remove(p.c_str());
}

TEST_CASE("solve methods agree where they should") {
  const auto value = [](std::vector<std::string> args) {
    args.insert(args.end(), {"--format", "json"});
    const Run r = run(args);
    REQUIRE(r.code == kExitOk);
    return json::parse(r.out).at("value").get<long>();
  };
  const long exact = value({"solve", "--n", "4", "--seed", "9", "--method", "exact"});
  CHECK(value({"solve", "--n", "4", "--seed", "9"}) == exact);
  CHECK(value({"solve", "--n", "4", "--seed", "9", "--method", "split"}) == exact);
  CHECK(value({"solve", "--n", "4", "--seed", "9", "--method", "local"}) <= exact);
  CHECK(value({"solve", "--n", "4", "--seed", "9", "--method", "greedy"}) <= exact);
  CHECK(value({"solve", "--board", "x_board", "--n", "5", "--seed", "1", "--method", "x-cycle"}) ==
        value({"solve", "--board", "x_board", "--n", "5", "--seed", "1", "--method", "exact"}));
  CHECK(value({"solve", "--board", "hyperbola", "--n", "16", "--seed", "1", "--method", "hyperbola"}) >= 16);
}

TEST_CASE("human solve output prints row 1 last") {
  const Run r = run({"solve", "--n", "3", "--seed", "1"});
  REQUIRE(r.code == kExitOk);
  CHECK(last_line(r.out).size() == 3);
  CHECK(r.out.find("flipped:") != std::string::npos);
}

TEST_CASE("construct") {
  const Run iii = run({"construct", "remove-iii", "--n", "4", "--a", "2", "--b", "2", "--format", "json"});
  REQUIRE(iii.code == kExitOk);
  const Configuration config = configuration_from_json(json::parse(iii.out).at("config"), make_board({BoardKind::square, 4}));
  long sum = 0;
  for (std::size_t c = 0; c < config.size(); ++c) sum += config[c];
  CHECK(sum == -8);

  const Run ii = run({"construct", "remove-ii", "--n", "4", "--a", "3", "--b", "3", "--seed", "2"});
  CHECK(ii.code == kExitOk);
  // highest row first: cell (4,4) is the last character of the first grid line
  std::istringstream lines(ii.out);
  std::string header;
  std::string top;
  std::getline(lines, header);
  std::getline(lines, top);
  CHECK(top.back() == '-');

  const Run hard = run({"construct", "hard-config", "--n", "3", "--lambda", "8.65"});
  CHECK(hard.code == kExitOk);
  const Run never = run({"construct", "hard-config", "--n", "3", "--lambda", "4", "--tries", "5"});
  CHECK(never.code == kExitBudget);
  CHECK(run({"construct", "remove-iii", "--n", "4", "--a", "1", "--b", "3"}).code == kExitValidation);
}

TEST_CASE("exit codes") {
  CHECK(run({"solve", "--n", "8", "--method", "exact", "--cap", "10"}).code == kExitBudget);
  const Run budget = run({"minimax", "--n", "5", "--config-cap", "1000"});
  CHECK(budget.code == kExitBudget);
  CHECK(budget.err.find("required") != std::string::npos);
  const Run unknown = run({"solve", "--bogus"});
  CHECK(unknown.code == kExitValidation);
  CHECK(unknown.err.find("Usage") != std::string::npos);
  CHECK(run({}).code == kExitValidation);
  CHECK(run({"solve", "--board", "blob", "--n", "3"}).code == kExitValidation);
  CHECK(run({"solve", "--board", "square"}).code == kExitValidation);
  CHECK(run({"solve", "--n", "3", "--method", "hyperbola"}).code == kExitValidation);
  CHECK(run({"solve", "--n", "3", "--config", "/nonexistent/file"}).code == kExitValidation);
  CHECK(run({"--help"}).code == kExitOk);
}
