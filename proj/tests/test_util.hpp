#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "lscd/wug.hpp"

namespace testutil {

inline std::filesystem::path tmpdir(const std::string& name) {
  const auto dir = std::filesystem::path(LSCD_TEST_TMPDIR) / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline lscd::Usage usage(const std::string& id, int grouping = 1, const std::string& lemma = "w") {
  lscd::Usage u;
  u.id = id;
  u.lemma = lemma;
  u.grouping = static_cast<lscd::Grouping>(grouping);
  u.context = "a " + lemma + " here";
  u.target = {2, 2 + lemma.size()};
  return u;
}

}  // namespace testutil
