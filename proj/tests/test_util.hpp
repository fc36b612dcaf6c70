#pragma once

#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "translid/tokenizer.hpp"

namespace testutil {

inline std::filesystem::path data_dir() { return TRANSLID_DATA_DIR; }
inline std::filesystem::path test_data_dir() { return TRANSLID_TEST_DATA_DIR; }
inline std::filesystem::path italian_patterns_path() { return data_dir() / "hyph_it.pat"; }

inline const translid::PatternSet& italian() {
  static const translid::PatternSet set = translid::PatternSet::load(italian_patterns_path());
  return set;
}

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// Splits a TSV file into rows of fields, skipping blank lines.
inline std::vector<std::vector<std::string>> read_tsv(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, '\t')) fields.push_back(f);
    rows.push_back(std::move(fields));
  }
  return rows;
}

// Fresh scratch directory per test name, under the build tree's temp dir.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("translid_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace testutil
