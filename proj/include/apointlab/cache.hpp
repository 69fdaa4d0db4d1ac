#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>

#include "apointlab/verify.hpp"

namespace apointlab {

/// Hex FNV-1a digest of a, T, the evaluation parameters and the search
/// options that affect results (not the worker count).
std::string cache_key(Complex a, double T, const EvalParams& p = {}, const FindOptions& opt = {});

/// a_re,a_im,beta,gamma,residual with one line per point.
std::string apoints_to_csv(std::span<const APoint> points);
std::vector<APoint> apoints_from_csv(std::istream& in);

/// Directory of apoints_<key>.csv files, each with a .meta.json sidecar that
/// records the covered height and the creation time.
class APointCache {
 public:
  explicit APointCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path csv_path(const std::string& key) const;
  std::filesystem::path meta_path(const std::string& key) const;

  std::optional<APointSet> load(const std::string& key) const;
  void store(const std::string& key, const APointSet& set) const;

  /// Cached set when present, otherwise computed and stored.
  APointSet get_or_compute(Complex a, double T, const EvalParams& p, const FindOptions& opt,
                           bool* hit = nullptr) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace apointlab
