#pragma once

#include <string>
#include <vector>

namespace testsupport {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs an executable through /bin/sh with stdout/stderr captured.
// `env_prefix` may hold KEY=VALUE assignments prepended to the command.
RunResult run_process(const std::string& exe,
                      const std::vector<std::string>& args,
                      const std::string& env_prefix = "");

// Creates a unique directory under the system temp dir and removes it
// (recursively) on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::string& path() const { return path_; }
  std::string file(const std::string& name) const { return path_ + "/" + name; }

 private:
  std::string path_;
};

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace testsupport
