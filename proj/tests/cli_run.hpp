#pragma once

// Runs the built fsched binary and reads back what it wrote.

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>

namespace cli {

namespace fs = std::filesystem;

inline int run(const std::string& args) {
  const std::string cmd = std::string(FSCHED_CLI) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

inline fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("fsched_" + name + "_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  return dir;
}

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::map<std::string, std::string> files_in(const fs::path& dir) {
  std::map<std::string, std::string> out;
  if (!fs::exists(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir)) out[e.path().filename().string()] = slurp(e.path());
  return out;
}

inline std::string data(const std::string& name) { return std::string(FSCHED_DATA_DIR) + "/" + name; }

}  // namespace cli
