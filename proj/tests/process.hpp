#pragma once

// Runs the command-line tool and captures its standard output.

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

namespace sft::testing {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

inline RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string("'") + SFTMAT_CLI + "' " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

inline std::string data_file(const std::string& name) {
  return std::string("'") + SFTMAT_DATA_DIR + "/" + name + "'";
}

}  // namespace sft::testing
