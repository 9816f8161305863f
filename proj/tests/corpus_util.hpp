// Copyright 2026 The Solo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef SOLO_TESTS_CORPUS_UTIL_HPP
#define SOLO_TESTS_CORPUS_UTIL_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace solo::testutil {

inline std::string corpus_dir() {
  const char* dir = std::getenv("SOLO_CORPUS_DIR");
  return dir ? dir : "";
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string corpus_text(const std::string& name) {
  return read_file(std::filesystem::path(corpus_dir()) / name);
}

// Every corpus program declares its expected outcome in a header comment:
// either `-- expect-type: <rendered main type>` or `-- expect-error: <CODE>`.
struct Expectation {
  bool is_error = false;
  std::string value;
};

inline std::optional<Expectation> expectation_of(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    auto find = [&](const char* prefix) -> std::optional<std::string> {
      std::size_t at = line.find(prefix);
      if (at == std::string::npos) return std::nullopt;
      std::string v = line.substr(at + std::string(prefix).size());
      std::size_t b = v.find_first_not_of(" \t");
      std::size_t e = v.find_last_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      return v.substr(b, e - b + 1);
    };
    if (auto v = find("-- expect-type:")) return Expectation{false, *v};
    if (auto v = find("-- expect-error:")) return Expectation{true, *v};
  }
  return std::nullopt;
}

inline std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  if (corpus_dir().empty()) return out;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir()))
    if (entry.path().extension() == ".solo") out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace solo::testutil

#endif  // SOLO_TESTS_CORPUS_UTIL_HPP
