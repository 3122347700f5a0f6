#pragma once

#include <unistd.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "affekt/engine.hpp"
#include "affekt/lexicon.hpp"

#ifndef AFFEKT_FIXTURE_DIR
#error "AFFEKT_FIXTURE_DIR must point at data/fixtures"
#endif

namespace testing_support {

inline std::filesystem::path fixture_dir() { return AFFEKT_FIXTURE_DIR; }
inline std::filesystem::path fixture(const std::string& rel) { return fixture_dir() / rel; }

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("affekt-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str() const { return path_.string(); }
  std::filesystem::path operator/(const std::string& rel) const { return path_ / rel; }

 private:
  std::filesystem::path path_;
};

inline affekt::PrototypeSet fixture_prototypes(int top_k = affekt::kDefaultTopK) {
  const auto lexicon = affekt::load_lexicon(fixture("lexicon.tsv").string());
  return affekt::build_prototypes(lexicon.entries, top_k);
}

}  // namespace testing_support
