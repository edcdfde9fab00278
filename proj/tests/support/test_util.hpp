#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "phh/cards.hpp"

namespace test_util {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fixture_path(const std::string& name) {
  return std::string(PHH_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  return slurp(fixture_path(name));
}

inline std::vector<phh::Card> cards(std::string_view text) {
  auto parsed = phh::parse_cards(text);
  return parsed.ok() ? parsed.value() : std::vector<phh::Card>{};
}

}  // namespace test_util
