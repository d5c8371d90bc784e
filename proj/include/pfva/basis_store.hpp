#pragma once

// On-disk cache of computed graded bases. One JSON file per
// (k, space, cutoff, engine version); writes go through a temporary file and
// rename(2) under an flock on the directory's lock file.

#include <pfva/graded_linalg.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace pfva {

/// Bumped whenever a change could alter any cached basis.
inline constexpr std::string_view engine_version = "pfva-engine-1";

class BasisStore {
 public:
  explicit BasisStore(std::filesystem::path dir, std::string version = std::string(engine_version));

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path file_for(int k, std::string_view space, int cutoff) const;

  /// nullopt on a miss, an unreadable file, or a version mismatch.
  std::optional<GradedBasis> load(int k, std::string_view space, int cutoff) const;
  void store(const GradedBasis& basis, int k, std::string_view space, int cutoff) const;

 private:
  std::filesystem::path dir_;
  std::string version_;
};

}  // namespace pfva
