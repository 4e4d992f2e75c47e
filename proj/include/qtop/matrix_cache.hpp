#pragma once
// On-disk cache of generator matrices: one text file per (p, genus,
// generator) holding the basis, the kappa ledger, the h-denominator and the
// row-major coefficient arrays. Writes go to a temporary file that is then
// renamed into place.

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "qtop/mcgrep.hpp"

namespace qtop {

class MatrixCache {
 public:
  explicit MatrixCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const noexcept { return dir_; }
  std::filesystem::path file_for(int p, int genus, const Generator& g) const;

  // Loads a cached matrix if the file exists and its basis matches.
  std::optional<RepMatrix> load(int p, int genus, const Generator& g,
                                const std::shared_ptr<const ColoringBasis>& basis) const;
  void store(int p, int genus, const Generator& g, const RepMatrix& m) const;

  static void write(std::ostream& os, int p, int genus, const Generator& g, const RepMatrix& m);
  // Throws Error on malformed input or basis mismatch.
  static RepMatrix read(std::istream& is, int p, int genus, const Generator& g,
                        const std::shared_ptr<const ColoringBasis>& basis);

 private:
  std::filesystem::path dir_;
};

// Directory chosen by --cache, else $QTOP_CACHE, else ".qtop-cache".
std::filesystem::path default_cache_dir(const std::optional<std::string>& flag);

}  // namespace qtop
