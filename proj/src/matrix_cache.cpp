#include "qtop/matrix_cache.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <unistd.h>

namespace qtop {

namespace {

constexpr const char* kMagic = "qtop-rep-matrix 1";

std::string file_token(const Generator& g) {
  const char k = g.kind == CurveKind::A ? 'a' : g.kind == CurveKind::B ? 'b' : 'c';
  return std::string(1, k) + std::to_string(g.index) + (g.power < 0 ? "inv" : "");
}

void expect(std::istream& is, const std::string& key) {
  std::string k;
  if (!(is >> k) || k != key) throw Error("matrix cache: expected '" + key + "'");
}

template <class T>
T read_field(std::istream& is, const std::string& key) {
  expect(is, key);
  T v;
  if (!(is >> v)) throw Error("matrix cache: bad value for '" + key + "'");
  return v;
}

}  // namespace

std::filesystem::path MatrixCache::file_for(int p, int genus, const Generator& g) const {
  return dir_ / ("p" + std::to_string(p) + "_g" + std::to_string(genus) + "_" + file_token(g) +
                 ".mat");
}

void MatrixCache::write(std::ostream& os, int p, int genus, const Generator& g,
                        const RepMatrix& m) {
  os << kMagic << "\n";
  os << "p " << p << "\n";
  os << "genus " << genus << "\n";
  os << "generator " << g.name() << "\n";
  const ColoringBasis& b = *m.basis();
  os << "basis " << b.size() << " " << (b.size() ? b[0].size() : 0) << "\n";
  for (size_t i = 0; i < b.size(); ++i) {
    for (size_t e = 0; e < b[i].size(); ++e) os << (e ? " " : "") << b[i][e];
    os << "\n";
  }
  os << "kappa " << m.kappa_ledger() << "\n";
  os << "hexp " << m.hexp() << "\n";
  os << "entries\n";
  const CycMatrix& num = m.numerator();
  for (const CycNum& x : num.data()) {
    for (size_t k = 0; k < x.re().size(); ++k) os << (k ? " " : "") << x.re()[k];
    if (x.has_i_part()) {
      os << " |";
      for (const Integer& c : x.im()) os << " " << c;
    }
    os << "\n";
  }
}

RepMatrix MatrixCache::read(std::istream& is, int p, int genus, const Generator& g,
                            const std::shared_ptr<const ColoringBasis>& basis) {
  std::string line;
  if (!std::getline(is, line) || line != kMagic) throw Error("matrix cache: bad header");
  if (read_field<int>(is, "p") != p) throw Error("matrix cache: prime mismatch");
  if (read_field<int>(is, "genus") != genus) throw Error("matrix cache: genus mismatch");
  if (read_field<std::string>(is, "generator") != g.name()) {
    throw Error("matrix cache: generator mismatch");
  }
  expect(is, "basis");
  size_t n = 0, edges = 0;
  is >> n >> edges;
  std::vector<std::vector<int>> cols(n, std::vector<int>(edges));
  for (auto& c : cols)
    for (int& x : c) is >> x;
  if (!is || !(ColoringBasis(p, genus, cols) == *basis)) {
    throw Error("matrix cache: basis mismatch");
  }
  const int kappa = read_field<int>(is, "kappa");
  const int hexp = read_field<int>(is, "hexp");
  expect(is, "entries");
  std::getline(is, line);
  const PrimeContext& ctx = PrimeContext::get(p);
  CycMatrix num(ctx, n, n);
  for (size_t k = 0; k < n * n; ++k) {
    if (!std::getline(is, line)) throw Error("matrix cache: truncated entries");
    std::istringstream ls(line);
    std::vector<Integer> re, im;
    std::string tok;
    bool in_im = false;
    while (ls >> tok) {
      if (tok == "|") {
        in_im = true;
        continue;
      }
      (in_im ? im : re).emplace_back(tok);
    }
    if (re.size() != static_cast<size_t>(p - 1) || (in_im && im.size() != re.size())) {
      throw Error("matrix cache: bad coefficient row");
    }
    num(k / n, k % n) = CycNum::from_coefficients(ctx, std::move(re), std::move(im));
  }
  return RepMatrix(std::move(num), hexp, kappa, basis);
}

std::optional<RepMatrix> MatrixCache::load(int p, int genus, const Generator& g,
                                           const std::shared_ptr<const ColoringBasis>& basis) const {
  std::ifstream in(file_for(p, genus, g));
  if (!in) return std::nullopt;
  try {
    return read(in, p, genus, g, basis);
  } catch (const Error&) {
    return std::nullopt;  // stale or corrupt; caller re-derives and overwrites
  }
}

void MatrixCache::store(int p, int genus, const Generator& g, const RepMatrix& m) const {
  static std::atomic<unsigned> counter{0};
  std::filesystem::create_directories(dir_);
  const auto target = file_for(p, genus, g);
  std::ostringstream suffix;
  suffix << ".tmp." << ::getpid() << "." << std::this_thread::get_id() << "." << counter++;
  const auto tmp = std::filesystem::path(target.string() + suffix.str());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write matrix cache file " + tmp.string());
    write(out, p, genus, g, m);
    if (!out.flush()) throw Error("cannot write matrix cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::filesystem::path default_cache_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("QTOP_CACHE"); env && *env) return env;
  return ".qtop-cache";
}

}  // namespace qtop
