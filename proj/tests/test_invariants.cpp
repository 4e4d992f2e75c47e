#include <doctest.h>

#include <numeric>
#include <random>

#include "qtop/errors.hpp"
#include "qtop/invariants.hpp"

using namespace qtop;

TEST_CASE("connected sums of S^1 x S^2") {
  for (int p : {5, 7}) {
    const int d = PrimeContext::get(p).d();
    for (int k = 1; k <= 3; ++k) {
      const JpResult r = jp_heegaard(MCGWord{}, k, p);
      CHECK(r.exact());
      CHECK(r.value() == k * (d - 1));
      CHECK(r.route == Route::HeegaardExact);
    }
  }
}

TEST_CASE("lens spaces") {
  CHECK(jp_heegaard(lens_word(5, 1), 1, 5).value() == 1);
  CHECK(jp_heegaard(lens_word(10, 3), 1, 5).value() == 1);
  CHECK(jp_heegaard(lens_word(7, 1), 1, 7).value() == 2);
  CHECK(jp_heegaard(lens_word(7, 1), 1, 5).value() == 0);
  CHECK(jp_heegaard(lens_word(5, 2), 1, 7).value() == 0);
  CHECK(jp_heegaard(lens_word(0, 1), 1, 5).value() == 1);
  // L(pn, q) has j_p = d-1, otherwise a Z_p-homology sphere has j_p = 0.
  for (int p : {5, 7}) {
    const int d = PrimeContext::get(p).d();
    for (long n = 1; n <= 15; ++n)
      for (long q = 1; q <= n; ++q) {
        if (std::gcd(n, q) != 1) continue;
        CHECK(jp_heegaard(lens_word(n, q), 1, p).value() == (n % p == 0 ? d - 1 : 0));
      }
  }
}

TEST_CASE("surgery sandwich contains the exact value") {
  for (int p : {5, 7}) {
    for (auto [n, q] : {std::pair<long, long>{5, 1}, {10, 3}, {7, 1}, {7, 2}, {14, 3}, {3, 2}}) {
      const JpResult exact = jp_heegaard(lens_word(n, q), 1, p);
      const JpResult s = jp_bounds_surgery(lens_chain(n, q), p, 8);
      CHECK(s.lo <= exact.value());
      CHECK(Valuation(exact.value()) <= s.hi);
      CHECK(s.exact());
    }
  }
}

TEST_CASE("E8 plumbing") {
  PlumbingTree t;
  for (long i = 1; i <= 8; ++i) t.vertices.push_back({i, -2});
  for (long i = 1; i < 7; ++i) t.edges.push_back({i, i + 1});
  t.edges.push_back({3, 8});
  for (int p : {5, 7}) {
    const JpResult r = jp_bounds_surgery(t, p, 0);
    CHECK(r.exact());
    CHECK(r.value() == 0);
    CHECK(surgery_invariant(t, p).valuation == Valuation(0));
  }
}

TEST_CASE("mapping tori") {
  for (int p : {5, 7}) {
    const int d = PrimeContext::get(p).d();
    const MappingTorusResult t3 = mapping_torus_valuation(MCGWord{}, 1, p);
    CHECK(t3.trace == LaurentCyc(CycNum(PrimeContext::get(p), d)));
    CHECK(t3.valuation == Valuation(d - 1));
    CHECK(t3.b1 == 3);
    const MappingTorusResult nil = mapping_torus_valuation(parse_word("a1"), 1, p);
    CHECK(nil.b1 == 2);
    CHECK(nil.bounds.exact());
    CHECK(nil.bounds.value() == d - 1);
    CHECK(mapping_torus_invariant(MCGWord{}, 1, p).valuation == Valuation(d - 1));
  }
}

TEST_CASE("stabilization and additivity") {
  for (int p : {5, 7}) {
    const int d = PrimeContext::get(p).d();
    const MCGWord w = lens_word(10, 3);
    const long j = jp_heegaard(w, 1, p).value();
    // Adding a handle glued like S^3 leaves j_p alone; gluing it trivially
    // adds an S^1 x S^2 summand.
    CHECK(jp_heegaard(concat(w, parse_word("b2^-1")), 2, p).value() == j);
    CHECK(jp_heegaard(w, 2, p).value() == j + d - 1);
    const ConnectedSumCheck c = connected_sum_jp(lens_word(5, 1), 1, lens_word(7, 1), 1, p);
    CHECK(c.additive);
  }
}

TEST_CASE("heegaard and connected sum invariants") {
  const InvariantReport s3 = heegaard_invariant(lens_word(1, 1), 1, 5);
  CHECK(phase_between(s3.value, PrimeContext::get(5).one()).has_value());
  CHECK(s3.valuation == Valuation(0));
  const InvariantReport a = heegaard_invariant(lens_word(7, 2), 1, 5);
  const InvariantReport b = heegaard_invariant(lens_word(3, 1), 1, 5);
  const InvariantReport ab =
      heegaard_invariant(concat(lens_word(7, 2), block_embed(lens_word(3, 1), 1)), 2, 5);
  CHECK(phase_between(ab.value, a.value * b.value).has_value());
}

TEST_CASE("random words respect the genus bound") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 20; ++t) {
    MCGWord w;
    for (int k = 0; k < 6; ++k) {
      const int kind = static_cast<int>(rng() % 3);
      w.tokens.push_back({static_cast<CurveKind>(kind), 1, rng() % 2 ? 1 : -1});
    }
    const JpResult r = jp_heegaard(w, 2, 5);
    CHECK(r.value() >= 0);
    CHECK(r.value() <= 2);
    CHECK_FALSE(r.witnesses.empty());
  }
}

TEST_CASE("bound chain reports") {
  const JpResult j = jp_heegaard(MCGWord{}, 2, 7);
  const BoundChainReport ok = bound_chain_report(j, 7, 2, 2);
  CHECK(ok.ok);
  CHECK(ok.divisible == std::optional<bool>(true));
  const BoundChainReport bad = bound_chain_report(j, 7, 3, 2);
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.violations.empty());
  JpResult interval;
  interval.lo = 0;
  interval.route = Route::SurgerySandwich;
  CHECK_FALSE(bound_chain_report(interval, 5, std::nullopt, std::nullopt).divisible.has_value());
  CHECK(route_name(Route::SurgerySandwich) == "surgery-sandwich");
  CHECK_THROWS_AS(interval.value(), InvalidArgument);
}
