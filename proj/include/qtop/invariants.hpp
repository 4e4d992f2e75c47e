#pragma once
// j_p: the exponent with J_p = (h^{j_p}), from Heegaard words (exact), from
// surgery presentations (bounds), and from mapping tori (bounds).

#include <optional>
#include <string>
#include <vector>

#include "qtop/mcgrep.hpp"
#include "qtop/surgery.hpp"

namespace qtop {

enum class Route { HeegaardExact, SurgerySandwich, MappingTorusUpper };
std::string route_name(Route r);

struct JpResult {
  long lo = 0;
  Valuation hi = Valuation::infinity();
  Route route = Route::HeegaardExact;
  // Basis colorings or meridian probes attaining the minimal valuation.
  std::vector<std::string> witnesses;
  // Genus of the presentation used, when there is one.
  std::optional<int> genus;

  bool exact() const { return !hi.is_infinite() && hi.value() == lo; }
  long value() const;  // throws unless exact
};

// (d-1) g + min over the first column of rho(w) of the h-adic valuation.
JpResult jp_heegaard(const MCGWord& w, int genus, int p);

// hi: least valuation of I_p over the empty decoration and up to
// `extra_probes` single colored meridians; lo: 0 or d-1 from homology.
JpResult jp_bounds_surgery(const PlumbingTree& t, int p, int extra_probes);

struct MappingTorusResult {
  LaurentCyc trace;     // tr rho(w)
  Valuation valuation;  // (d-1) + valuation of the trace
  int b1 = 0;           // first Betti number of the mapping torus
  JpResult bounds;
};
MappingTorusResult mapping_torus_valuation(const MCGWord& w, int genus, int p);

struct BoundChainReport {
  bool ok = true;
  std::vector<std::string> lines;       // key = value lines
  std::vector<std::string> violations;
  std::optional<bool> divisible;        // (d-1) | j_p, when j_p is exact
};
BoundChainReport bound_chain_report(const JpResult& jp, int p, std::optional<long> cut,
                                    std::optional<long> genus);

struct ConnectedSumCheck {
  JpResult first, second, combined;
  bool additive = false;
};
ConnectedSumCheck connected_sum_jp(const MCGWord& w1, int g1, const MCGWord& w2, int g2, int p);

struct InvariantReport {
  Route route;
  int phase = 0;         // kappa exponent removed
  CycNum value;          // element of Z[q]
  Valuation valuation;
};
// D^g times the (1,1) entry of rho(w).
InvariantReport heegaard_invariant(const MCGWord& w, int genus, int p);
// D times the trace of rho(w).
InvariantReport mapping_torus_invariant(const MCGWord& w, int genus, int p);
InvariantReport surgery_invariant(const PlumbingTree& t, int p);

}  // namespace qtop
