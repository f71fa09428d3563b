#pragma once

#include "cxgeo/calculus.hpp"
#include "cxgeo/geometry.hpp"
#include "cxgeo/random.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>

#include <unistd.h>

namespace cxgeo::test {

inline PhasePoint random_point(std::mt19937_64& rng, int n, double extent = 2.0) {
  return {uniform_vector(rng, n, -extent, extent), uniform_vector(rng, n, -extent, extent)};
}

inline double max_diff(const Tensor3& a, const Tensor3& b) { return (a - b).max_abs(); }

// Scratch directory unique to this process and call.
inline std::filesystem::path scratch_dir(const std::string& tag) {
  static std::atomic<int> counter{0};
  auto dir = std::filesystem::temp_directory_path() /
             ("cxgeo-test-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::filesystem::path write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
  return path;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace cxgeo::test
