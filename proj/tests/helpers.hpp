#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace testutil {

inline std::filesystem::path repo_root() {
  return std::filesystem::path(STEGOMARK_REPO_ROOT);
}

inline std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string cover_utf8() {
  return read_file(repo_root() / "data" / "cover.txt");
}

}  // namespace testutil
