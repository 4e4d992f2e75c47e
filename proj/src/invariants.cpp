#include "qtop/invariants.hpp"

#include <sstream>

namespace qtop {

std::string route_name(Route r) {
  switch (r) {
    case Route::HeegaardExact:
      return "heegaard";
    case Route::SurgerySandwich:
      return "surgery-sandwich";
    case Route::MappingTorusUpper:
      return "mapping-torus";
  }
  return "?";
}

long JpResult::value() const {
  if (!exact()) throw InvalidArgument("j_p is only known as an interval");
  return lo;
}

namespace {

std::string coloring_label(size_t index, const std::vector<int>& c) {
  std::ostringstream os;
  os << "e" << index + 1 << "=(";
  for (size_t k = 0; k < c.size(); ++k) os << (k ? "," : "") << c[k];
  os << ")";
  return os.str();
}

LaurentCyc rank_power(const Recoupling& rc, int g) {
  LaurentCyc out(rc.context().one());
  for (int k = 0; k < g; ++k) out *= LaurentCyc(rc.rank_D());
  return out;
}

InvariantReport strip_report(Route route, const LaurentCyc& x, int ledger) {
  if (!x.is_integral()) throw InvariantViolation("invariant is not an algebraic integer");
  const PrimeContext& ctx = x.context();
  PhaseStrip s = strip_phase(ctx.kappa_power(ledger) * x.num());
  Valuation v = h_valuation(s.y);
  return {route, s.k, std::move(s.y), v};
}

}  // namespace

JpResult jp_heegaard(const MCGWord& w, int genus, int p) {
  const Representation& rep = Representation::get(p, genus);
  const int d = rep.recoupling().context().d();
  const RepVector col = rep.rho_column(w, 0);
  Valuation best = Valuation::infinity();
  std::vector<size_t> at;
  for (size_t i = 0; i < col.size(); ++i) {
    const Valuation v = col.entry(i).valuation();
    if (v < best) {
      best = v;
      at.clear();
    }
    if (v == best && !v.is_infinite()) at.push_back(i);
  }
  if (best.is_infinite()) throw InvariantViolation("first column of rho vanishes");
  JpResult r;
  r.route = Route::HeegaardExact;
  r.genus = genus;
  r.lo = static_cast<long>(d - 1) * genus + best.value();
  r.hi = r.lo;
  for (size_t i : at) r.witnesses.push_back(coloring_label(i, (*rep.basis())[i]));
  if (r.lo < 0 || r.lo > static_cast<long>(d - 1) * genus) {
    throw InvariantViolation("j_p = " + std::to_string(r.lo) + " outside [0, (d-1)g]");
  }
  const HomologyData hd = heegaard_homology(w, genus);
  if (!hd.zp_sphere(p) && r.lo < d - 1) {
    throw InvariantViolation("j_p below d-1 for a manifold that is not a Z_p-homology sphere");
  }
  return r;
}

JpResult jp_bounds_surgery(const PlumbingTree& t, int p, int extra_probes) {
  t.validate();
  const PrimeContext& ctx = PrimeContext::get(p);
  const int d = ctx.d();
  const LinkingData ld = homology_data(linking_matrix(t));
  JpResult r;
  r.route = Route::SurgerySandwich;
  r.lo = ld.zp_sphere(p) ? 0 : d - 1;

  std::vector<std::pair<std::string, PlumbingTree>> probes;
  probes.push_back({"empty", t});
  for (const auto& v : t.vertices) {
    for (int c = 1; c <= p - 2; ++c) {
      if (static_cast<int>(probes.size()) > extra_probes) break;
      PlumbingTree u = t;
      u.meridians.push_back({v.id, c});
      probes.push_back({"meridian(v=" + std::to_string(v.id) + ",c=" + std::to_string(c) + ")",
                        std::move(u)});
    }
  }
  for (const auto& [name, tree] : probes) {
    const Valuation v = invariant_Ip(tree, p).valuation;
    if (v < r.hi) {
      r.hi = v;
      r.witnesses.clear();
    }
    if (v == r.hi && !v.is_infinite()) r.witnesses.push_back(name);
  }
  if (!r.hi.is_infinite() && r.hi.value() < r.lo) {
    throw InvariantViolation("surgery upper bound " + r.hi.to_string() +
                             " is below the homology lower bound " + std::to_string(r.lo));
  }
  return r;
}

MappingTorusResult mapping_torus_valuation(const MCGWord& w, int genus, int p) {
  const Representation& rep = Representation::get(p, genus);
  const int d = rep.recoupling().context().d();
  MappingTorusResult out{rep.trace(w), Valuation::infinity(), 0, {}};
  out.valuation = out.trace.valuation() + Valuation(d - 1);
  out.b1 = mapping_torus_homology(w, genus).b1;
  out.bounds.route = Route::MappingTorusUpper;
  // A mapping torus always has b_1 >= 1, so it is never a Z_p-homology sphere.
  out.bounds.lo = d - 1;
  out.bounds.hi = out.valuation;
  out.bounds.witnesses.push_back("trace");
  if (!out.valuation.is_infinite() && out.valuation.value() < d - 1) {
    throw InvariantViolation("mapping torus valuation below d-1");
  }
  return out;
}

BoundChainReport bound_chain_report(const JpResult& jp, int p, std::optional<long> cut,
                                    std::optional<long> genus) {
  const int d = PrimeContext::get(p).d();
  BoundChainReport rep;
  auto fail = [&rep](const std::string& msg) {
    rep.ok = false;
    rep.violations.push_back(msg);
  };
  const std::string jtxt =
      jp.exact() ? std::to_string(jp.lo)
                 : "[" + std::to_string(jp.lo) + ", " + jp.hi.to_string() + "]";
  rep.lines.push_back("jp = " + jtxt);
  rep.lines.push_back("d-1 = " + std::to_string(d - 1));
  if (cut) {
    rep.lines.push_back("cut = " + std::to_string(*cut));
    if (*cut < 0) fail("cut number is negative");
    // c <= c_p <= j_p / (d-1) requires (d-1) c <= j_p <= hi.
    if (!jp.hi.is_infinite() && (d - 1) * *cut > jp.hi.value()) {
      fail("(d-1)*cut = " + std::to_string((d - 1) * *cut) + " exceeds j_p");
    }
  }
  if (genus) {
    rep.lines.push_back("genus = " + std::to_string(*genus));
    if (jp.lo > (d - 1) * *genus) {
      fail("j_p = " + std::to_string(jp.lo) + " exceeds (d-1)*genus = " +
           std::to_string((d - 1) * *genus));
    }
  }
  if (cut && genus && *cut > *genus) fail("cut number exceeds Heegaard genus");
  if (jp.exact()) {
    rep.divisible = jp.lo % (d - 1) == 0;
    rep.lines.push_back(std::string("divisible_by_d-1 = ") + (*rep.divisible ? "true" : "false"));
  } else {
    rep.lines.push_back("divisible_by_d-1 = unknown");
  }
  rep.lines.push_back(std::string("chain = ") + (rep.ok ? "holds" : "violated"));
  return rep;
}

ConnectedSumCheck connected_sum_jp(const MCGWord& w1, int g1, const MCGWord& w2, int g2, int p) {
  ConnectedSumCheck out;
  out.first = jp_heegaard(w1, g1, p);
  out.second = jp_heegaard(w2, g2, p);
  const MCGWord joint = concat(w1, block_embed(w2, g1));
  out.combined = jp_heegaard(joint, g1 + g2, p);
  out.additive = out.combined.lo == out.first.lo + out.second.lo;
  return out;
}

InvariantReport heegaard_invariant(const MCGWord& w, int genus, int p) {
  const Representation& rep = Representation::get(p, genus);
  const RepVector col = rep.rho_column(w, 0);
  const LaurentCyc x = rank_power(rep.recoupling(), genus) * col.entry(0);
  return strip_report(Route::HeegaardExact, x, col.kappa_ledger());
}

InvariantReport mapping_torus_invariant(const MCGWord& w, int genus, int p) {
  const Representation& rep = Representation::get(p, genus);
  const RepMatrix m = rep.rho(w);
  const LaurentCyc x = LaurentCyc(rep.recoupling().rank_D()) * m.trace();
  return strip_report(Route::MappingTorusUpper, x, m.kappa_ledger());
}

InvariantReport surgery_invariant(const PlumbingTree& t, int p) {
  InvariantValue v = invariant_Ip(t, p);
  return {Route::SurgerySandwich, v.phase, std::move(v.value), v.valuation};
}

}  // namespace qtop
