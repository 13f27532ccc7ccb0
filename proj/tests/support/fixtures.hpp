#pragma once

#include "qlp/syntax.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qlp::testing {

inline std::string read_fixture(const std::string& name) {
  std::string path = std::string(QLP_FIXTURE_DIR) + "/" + name;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Program load_pu() { return parse_program(read_fixture("pu.qlp"), Domain::certainty()); }
inline Program load_pw() { return parse_program(read_fixture("pw.qlp"), Domain::weight()); }

} // namespace qlp::testing
