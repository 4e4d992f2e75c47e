#include "qtop/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "qtop/identities.hpp"
#include "qtop/invariants.hpp"
#include "qtop/manifold.hpp"
#include "qtop/matrix_cache.hpp"

namespace qtop {

namespace {

struct Options {
  int p = 5;
  std::string input;
  int genus = 1;
  int column = 1;
  int probes = 4;
  int samples = 100;
  std::uint64_t seed = 1;
  int maxlen = 10;
  int trees = 50;
  std::optional<long> cut;
  std::optional<long> bound_genus;
  std::optional<std::string> cache;
};

std::string join(const std::vector<std::string>& xs) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) s += (i ? " " : "") + xs[i];
  return s;
}

std::string coloring_text(const std::vector<int>& c) {
  std::ostringstream os;
  os << "(";
  for (size_t k = 0; k < c.size(); ++k) os << (k ? "," : "") << c[k];
  os << ")";
  return os.str();
}

void print_jp(std::ostream& out, const JpResult& r, int p) {
  const std::string route = route_name(r.route);
  if (r.exact()) {
    out << "jp = " << r.lo << " (exact, " << route << ")\n";
  } else {
    out << "jp in [" << r.lo << ", " << r.hi << "] (" << route << ")\n";
  }
  out << "route = " << route << "\n";
  out << "p = " << p << "\n";
  if (r.genus) out << "genus = " << *r.genus << "\n";
  out << "witnesses = " << join(r.witnesses) << "\n";
}

JpResult compute_jp(const ManifoldDesc& m, const Options& o, std::optional<int>* b1 = nullptr) {
  if (auto h = heegaard_presentation(m)) return jp_heegaard(h->word, h->genus, o.p);
  if (const auto* t = std::get_if<MappingTorusDesc>(&m.body)) {
    MappingTorusResult r = mapping_torus_valuation(t->word, t->genus, o.p);
    if (b1) *b1 = r.b1;
    return r.bounds;
  }
  if (auto t = surgery_presentation(m)) return jp_bounds_surgery(*t, o.p, o.probes);
  throw InvalidArgument("no usable presentation");
}

int cmd_jp(const Options& o, std::ostream& out) {
  const ManifoldDesc m = load_manifold(o.input);
  std::optional<int> b1;
  const JpResult r = compute_jp(m, o, &b1);
  print_jp(out, r, o.p);
  if (b1) out << "b1 = " << *b1 << "\n";
  return 0;
}

int cmd_invariant(const Options& o, std::ostream& out) {
  const ManifoldDesc m = load_manifold(o.input);
  InvariantReport r = [&] {
    if (auto h = heegaard_presentation(m)) return heegaard_invariant(h->word, h->genus, o.p);
    if (const auto* t = std::get_if<MappingTorusDesc>(&m.body)) {
      return mapping_torus_invariant(t->word, t->genus, o.p);
    }
    return surgery_invariant(*surgery_presentation(m), o.p);
  }();
  out << "route = " << route_name(r.route) << "\n";
  out << "p = " << o.p << "\n";
  out << "phase = " << r.phase << "\n";
  out << "coefficients = [";
  const auto re = r.value.re();
  for (size_t k = 0; k < re.size(); ++k) out << (k ? ", " : "") << re[k];
  out << "]\n";
  out << "value = " << r.value.to_string() << "\n";
  out << "valuation = " << r.valuation << "\n";
  return 0;
}

int cmd_rho(const Options& o, std::ostream& out) {
  const ManifoldDesc m = load_manifold(o.input);
  const auto h = heegaard_presentation(m);
  if (!h) throw InvalidArgument("rho needs a lens, heegaard or connected_sum description");
  const Representation& rep = Representation::get(o.p, h->genus);
  if (o.column < 1 || static_cast<size_t>(o.column) > rep.dim()) {
    throw InvalidArgument("column must lie in 1.." + std::to_string(rep.dim()));
  }
  const RepVector v = rep.rho_column(h->word, static_cast<size_t>(o.column - 1));
  out << "p = " << o.p << "\n";
  out << "genus = " << h->genus << "\n";
  out << "dim = " << rep.dim() << "\n";
  out << "column = " << o.column << "\n";
  out << "hexp = " << v.hexp() << "\n";
  out << "kappa = " << v.kappa_ledger() << "\n";
  for (size_t i = 0; i < v.size(); ++i) {
    out << "entry[" << i + 1 << "] " << coloring_text((*rep.basis())[i]) << " = "
        << v.entry(i).to_string() << "\n";
  }
  return 0;
}

int cmd_dim(const Options& o, std::ostream& out) {
  out << verlinde_dim(o.genus, o.p) << "\n";
  return 0;
}

// Compares every cached generator file for genus <= 2 with a fresh
// derivation; returns the number of files compared.
long verify_cache(const MatrixCache& cache, int p, std::vector<std::string>& mismatches) {
  long files = 0;
  for (int g = 1; g <= 2; ++g) {
    const Representation fresh(p, g);
    for (int i = 1; i <= g; ++i) {
      for (CurveKind k : {CurveKind::A, CurveKind::B, CurveKind::C}) {
        if (k == CurveKind::C && i == g) continue;
        for (int pw : {1, -1}) {
          const Generator gen{k, i, pw};
          if (!std::filesystem::exists(cache.file_for(p, g, gen))) continue;
          ++files;
          std::optional<RepMatrix> loaded;
          try {
            loaded = cache.load(p, g, gen, fresh.basis());
          } catch (const Error&) {
          }
          if (!loaded || !(*loaded == fresh.derive_generator(gen))) {
            mismatches.push_back(cache.file_for(p, g, gen).string());
          }
        }
      }
    }
  }
  return files;
}

int cmd_selfcheck(const Options& o, std::ostream& out) {
  std::vector<IdentityCheck> checks;
  checks.push_back(pentagon_check(o.p));
  checks.push_back(orthogonality_check(o.p));
  checks.push_back(mcg_relations_check(o.p, 1));
  checks.push_back(mcg_relations_check(o.p, 2));
  checks.push_back(modular_relation_check(o.p));
  checks.push_back(kirby_check(o.p, o.trees, o.seed));
  bool ok = true;
  for (const auto& c : checks) {
    out << c.name << " = " << (c.ok() ? "pass" : "FAIL") << " (" << c.instances << " instances";
    if (c.failures) out << ", " << c.failures << " failed, first: " << c.first_failure;
    out << ")\n";
    ok = ok && c.ok();
  }
  const MatrixCache cache(default_cache_dir(o.cache));
  std::vector<std::string> bad;
  const long files = verify_cache(cache, o.p, bad);
  out << "cache = " << (bad.empty() ? "consistent" : "INCONSISTENT") << " (" << files
      << " files)\n";
  for (const auto& f : bad) out << "cache_mismatch = " << f << "\n";
  ok = ok && bad.empty();
  out << "selfcheck = " << (ok ? "pass" : "FAIL") << "\n";
  return ok ? 0 : 2;
}

int cmd_explore(const Options& o, std::ostream& out) {
  if (o.genus < 1) throw InvalidArgument("explore needs genus >= 1");
  if (o.samples < 0 || o.maxlen < 1) throw InvalidArgument("samples >= 0 and maxlen >= 1 required");
  const int d = PrimeContext::get(o.p).d();
  std::vector<Generator> gens;
  for (int i = 1; i <= o.genus; ++i) {
    for (CurveKind k : {CurveKind::A, CurveKind::B, CurveKind::C}) {
      if (k == CurveKind::C && i == o.genus) continue;
      gens.push_back({k, i, 1});
      gens.push_back({k, i, -1});
    }
  }
  std::mt19937_64 rng(o.seed);
  std::map<long, long> hist;
  std::vector<std::string> flags;
  for (int s = 0; s < o.samples; ++s) {
    MCGWord w;
    const int len = 1 + static_cast<int>(rng() % static_cast<unsigned>(o.maxlen));
    for (int k = 0; k < len; ++k) w.tokens.push_back(gens[rng() % gens.size()]);
    const long j = jp_heegaard(w, o.genus, o.p).value();
    ++hist[j];
    if (j % (d - 1) != 0) flags.push_back("jp " + std::to_string(j) + " for \"" + w.to_string() + "\"");
  }
  out << "p = " << o.p << "\n";
  out << "genus = " << o.genus << "\n";
  out << "samples = " << o.samples << "\n";
  out << "seed = " << o.seed << "\n";
  for (long v = 0; v <= static_cast<long>(d - 1) * o.genus; ++v) {
    out << "jp[" << v << "] = " << (hist.count(v) ? hist[v] : 0) << "\n";
  }
  out << "nondivisible = " << flags.size() << "\n";
  for (const auto& f : flags) out << "flag = " << f << "\n";
  return 0;
}

int cmd_check_bounds(const Options& o, std::ostream& out) {
  const ManifoldDesc m = load_manifold(o.input);
  const JpResult jp = compute_jp(m, o);
  std::optional<long> genus = o.bound_genus;
  if (!genus) {
    if (auto h = heegaard_presentation(m)) genus = h->genus;
  }
  const BoundChainReport rep = bound_chain_report(jp, o.p, o.cut, genus);
  out << "route = " << route_name(jp.route) << "\n";
  for (const auto& l : rep.lines) out << l << "\n";
  for (const auto& v : rep.violations) out << "violation = " << v << "\n";
  return rep.ok ? 0 : 1;
}

int cmd_cache(const Options& o, std::ostream& out) {
  const Representation& rep = Representation::get(o.p, o.genus);
  const MatrixCache cache(default_cache_dir(o.cache));
  long n = 0;
  for (int i = 1; i <= o.genus; ++i) {
    for (CurveKind k : {CurveKind::A, CurveKind::B, CurveKind::C}) {
      if (k == CurveKind::C && i == o.genus) continue;
      for (int pw : {1, -1}) {
        rep.generator({k, i, pw});
        ++n;
      }
    }
  }
  out << "cache = " << cache.dir().string() << "\n";
  out << "generators = " << n << "\n";
  out << "dim = " << rep.dim() << "\n";
  return 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact quantum invariants and j_p of 3-manifolds", "qtop"};
  app.require_subcommand(1);
  Options o;
  std::string cache_flag;
  app.add_option("--cache", cache_flag, "matrix cache directory");

  auto prime = [&o](CLI::App* s) { s->add_option("--p", o.p, "odd prime >= 5")->required(); };
  auto input = [&o](CLI::App* s) {
    s->add_option("--input", o.input, "manifold description file")->required();
  };

  CLI::App* jp = app.add_subcommand("jp", "compute j_p or bounds for it");
  prime(jp);
  input(jp);
  jp->add_option("--probes", o.probes, "meridian probes for surgery presentations");

  CLI::App* inv = app.add_subcommand("invariant", "phase-stripped quantum invariant");
  prime(inv);
  input(inv);

  CLI::App* rho = app.add_subcommand("rho", "a column of the representation matrix");
  prime(rho);
  input(rho);
  rho->add_option("--column", o.column, "1-based column index");

  CLI::App* dim = app.add_subcommand("dim", "dimension of the TQFT space");
  prime(dim);
  dim->add_option("--genus", o.genus)->required();

  CLI::App* self = app.add_subcommand("selfcheck", "identity suites and cache verification");
  prime(self);
  self->add_option("--trees", o.trees, "random trees for the Kirby checks");
  self->add_option("--seed", o.seed);

  CLI::App* expl = app.add_subcommand("explore", "j_p of random words");
  prime(expl);
  expl->add_option("--genus", o.genus)->required();
  expl->add_option("--samples", o.samples);
  expl->add_option("--seed", o.seed);
  expl->add_option("--maxlen", o.maxlen);

  CLI::App* bounds = app.add_subcommand("check-bounds", "check cut number and genus bounds");
  prime(bounds);
  input(bounds);
  bounds->add_option("--cut", o.cut);
  bounds->add_option("--genus", o.bound_genus);

  CLI::App* cache = app.add_subcommand("cache", "precompute generator matrices into the cache");
  prime(cache);
  cache->add_option("--genus", o.genus)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  if (!cache_flag.empty()) o.cache = cache_flag;

  try {
    Representation::set_shared_cache(std::make_shared<MatrixCache>(default_cache_dir(o.cache)));
    if (*jp) return cmd_jp(o, out);
    if (*inv) return cmd_invariant(o, out);
    if (*rho) return cmd_rho(o, out);
    if (*dim) return cmd_dim(o, out);
    if (*self) return cmd_selfcheck(o, out);
    if (*expl) return cmd_explore(o, out);
    if (*bounds) return cmd_check_bounds(o, out);
    if (*cache) return cmd_cache(o, out);
  } catch (const ParseError& e) {
    err << "error: " << o.input << ":" << e.what() << "\n";
    return 1;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace qtop
