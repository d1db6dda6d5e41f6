#pragma once

// The CLI fixture corpus: tests/fixtures/cli/cases.json lists each
// invocation, its expected exit code, and names a golden stdout file in
// tests/golden/. Arguments starting with '@' name fixture files.

#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cultrule/cli.hpp"

namespace corpus {

inline const std::string kFixtureDir = CULTRULE_FIXTURE_DIR "/cli";
inline const std::string kGoldenDir = CULTRULE_GOLDEN_DIR;

struct Case {
  std::string name;
  std::vector<std::string> args;
  int exit = 0;
};

struct Result {
  int exit = 0;
  std::string out;
  std::string err;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<Case> load() {
  const auto doc = nlohmann::json::parse(slurp(kFixtureDir + "/cases.json"));
  std::vector<Case> cases;
  for (const auto& c : doc) {
    Case k{c.at("name"), {}, c.at("exit")};
    for (const auto& a : c.at("args")) {
      const auto arg = a.get<std::string>();
      k.args.push_back(arg.starts_with('@') ? kFixtureDir + "/" + arg.substr(1) : arg);
    }
    cases.push_back(std::move(k));
  }
  return cases;
}

inline Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cultrule::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

inline std::string golden_path(const Case& c) { return kGoldenDir + "/" + c.name + ".json"; }

}  // namespace corpus
