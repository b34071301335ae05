#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifndef SCIMINE_FIXTURES_DIR
#error "SCIMINE_FIXTURES_DIR must point at tests/fixtures"
#endif

namespace testing {

namespace fs = std::filesystem;

inline fs::path fixtures() { return fs::path(SCIMINE_FIXTURES_DIR); }

inline std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> lines_of(const fs::path& p) {
  std::vector<std::string> out;
  std::ifstream in(p);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

/// Line-aligned held-out sentences for one language ("en", "es", "fr", "pt").
inline std::vector<std::string> corpus(const std::string& lang) {
  return lines_of(fixtures() / "corpus" / (lang + ".txt"));
}

/// Fresh scratch directory, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("scimine-" + tag + "-" + std::to_string(rd()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

/// Copy of the pipeline fixture (pages, configs, pipeline.json) without any
/// previous output. Returns the copied pipeline.json.
inline fs::path copy_pipeline_fixture(const fs::path& dest) {
  const fs::path src = fixtures() / "pipeline";
  for (const char* part : {"repos", "configs"})
    fs::copy(src / part, dest / part, fs::copy_options::recursive | fs::copy_options::overwrite_existing);
  fs::copy_file(src / "pipeline.json", dest / "pipeline.json", fs::copy_options::overwrite_existing);
  return dest / "pipeline.json";
}

/// All regular files under `root` as (relative path, bytes), sorted.
inline std::vector<std::pair<std::string, std::string>> tree_contents(const fs::path& root) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : fs::recursive_directory_iterator(root))
    if (e.is_regular_file()) out.emplace_back(fs::relative(e.path(), root).generic_string(), slurp(e.path()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace testing
