// Helpers for loading the descriptor fixtures shipped in fixtures/.
#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bksef/report.hpp"

#ifndef BKSEF_FIXTURES_DIR
#error "BKSEF_FIXTURES_DIR must be defined by the build"
#endif

namespace bksef::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(BKSEF_FIXTURES_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline NetworkSpec load_fixture(const std::string& name) {
  return parse_spec(read_file(fixture_path(name)));
}

}  // namespace bksef::testing
