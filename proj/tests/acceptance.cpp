// One line per acceptance criterion; exit status 1 if any fails.

#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "qtop/identities.hpp"
#include "qtop/invariants.hpp"
#include "qtop/tqftspace.hpp"

using namespace qtop;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (pass) note << "failed: ";
    else note << "; ";
    note << what;
    pass = false;
  }
};

PlumbingTree e8() {
  PlumbingTree t;
  for (long i = 1; i <= 8; ++i) t.vertices.push_back({i, -2});
  for (long i = 1; i < 7; ++i) t.edges.push_back({i, i + 1});
  t.edges.push_back({3, 8});
  return t;
}

int d_of(int p) { return PrimeContext::get(p).d(); }

// Examples with a known Heegaard genus, for the structural criterion.
struct Example {
  std::string name;
  int p;
  long jp;
  int genus;
};
std::vector<Example> examples;

void note_example(const std::string& name, int p, long jp, int genus) {
  examples.push_back({name, p, jp, genus});
}

void c1(Outcome& o) {
  for (int k = 1; k <= 3; ++k) {
    const long j = jp_heegaard(MCGWord{}, k, 5).value();
    o.require(j == k, "#" + std::to_string(k) + " at p=5 gave " + std::to_string(j));
    note_example("#^" + std::to_string(k) + " S1xS2", 5, j, k);
  }
  for (int k = 1; k <= 2; ++k) {
    const long j = jp_heegaard(MCGWord{}, k, 7).value();
    o.require(j == 2 * k, "#" + std::to_string(k) + " at p=7 gave " + std::to_string(j));
    note_example("#^" + std::to_string(k) + " S1xS2", 7, j, k);
  }
  o.note << "j5 = 1,2,3; j7 = 2,4";
}

void c2(Outcome& o) {
  struct L {
    long n, q;
    int p;
    long expect;
  };
  for (const L& l : {L{5, 1, 5, 1}, L{10, 3, 5, 1}, L{7, 1, 7, 2}, L{7, 1, 5, 0}, L{5, 2, 7, 0}}) {
    const long j = jp_heegaard(lens_word(l.n, l.q), 1, l.p).value();
    const std::string name = "L(" + std::to_string(l.n) + "," + std::to_string(l.q) + ")";
    o.require(j == l.expect, name + " at p=" + std::to_string(l.p) + " gave " + std::to_string(j));
    note_example(name, l.p, j, 1);
  }
  if (o.pass) o.note << "L(5,1)@5=1 L(10,3)@5=1 L(7,1)@7=2 L(7,1)@5=0 L(5,2)@7=0";
}

void c3(Outcome& o) {
  const LinkingData d = homology_data(linking_matrix(e8()));
  o.require(d.signature == -8, "signature " + std::to_string(d.signature));
  o.require(d.det == 1, "det " + d.det.get_str());
  for (int p : {5, 7}) {
    const InvariantReport r = surgery_invariant(e8(), p);
    o.require(r.valuation == Valuation(0), "valuation at p=" + std::to_string(p));
    const JpResult j = jp_bounds_surgery(e8(), p, 0);
    o.require(j.exact() && j.value() == 0, "j_p interval at p=" + std::to_string(p));
    note_example("Poincare sphere", p, 0, 2);
  }
  if (o.pass) o.note << "signature -8, det 1, valuation 0 at p=5,7";
}

void c4(Outcome& o) {
  // Sigma(2,3,6) is the torus bundle with monodromy a single Dehn twist.
  const MCGWord w = parse_word("a1");
  const HomologyData h = mapping_torus_homology(w, 1);
  o.require(h.b1 == 2, "candidate has b1 = " + std::to_string(h.b1));
  for (int p : {5, 7}) {
    const JpResult r = mapping_torus_valuation(w, 1, p).bounds;
    const long expect = d_of(p) - 1;
    o.require(r.exact() && r.value() == expect, "sandwich at p=" + std::to_string(p) + " is [" +
                                                    std::to_string(r.lo) + ", " +
                                                    r.hi.to_string() + "]");
    const long sum = jp_heegaard(MCGWord{}, 2, p).value();
    o.require(sum == 2 * expect, "#2 S1xS2 value");
    o.require(r.lo != sum, "not distinguished from #2 S1xS2");
    if (r.exact()) note_example("Sigma(2,3,6)", p, r.value(), 2);
  }
  if (o.pass) o.note << "b1 = 2; j5 = 1, j7 = 2 vs 2, 4 for #2 S1xS2";
}

void c5(Outcome& o) {
  for (int p : {5, 7}) {
    const int d = d_of(p);
    const MappingTorusResult t = mapping_torus_valuation(MCGWord{}, 1, p);
    o.require(t.trace == LaurentCyc(CycNum(PrimeContext::get(p), d)),
              "trace at p=" + std::to_string(p) + " is " + t.trace.to_string());
    o.require(t.valuation == Valuation(d - 1), "valuation at p=" + std::to_string(p));
    o.require(t.b1 == 3, "b1 = " + std::to_string(t.b1));
    o.require(t.bounds.exact() && t.bounds.value() == d - 1, "j_p not exact");
    o.require(jp_heegaard(MCGWord{}, 3, p).value() == 3 * (d - 1), "#3 S1xS2 value");
    if (t.bounds.exact()) note_example("T^3", p, t.bounds.value(), 3);
  }
  if (o.pass) o.note << "trace 2 at p=5, 3 at p=7; j = d-1 vs 3(d-1)";
}

void c6(Outcome& o) {
  for (int p : {5, 7}) {
    const CycNum& one = PrimeContext::get(p).one();
    const CycNum empty = invariant_raw(PlumbingTree{}, p);
    const CycNum plus = invariant_raw(PlumbingTree{{{1, 1}}, {}, {}}, p);
    const CycNum minus = invariant_raw(PlumbingTree{{{1, -1}}, {}, {}}, p);
    const InvariantReport heeg = heegaard_invariant(lens_word(1, 1), 1, p);
    const std::string at = " at p=" + std::to_string(p);
    o.require(empty.is_one(), "empty surgery" + at);
    o.require(phase_between(plus, one).has_value(), "+1 unknot" + at);
    o.require(phase_between(minus, one).has_value(), "-1 unknot" + at);
    o.require(phase_between(heeg.value, one).has_value(), "Heegaard L(1,1)" + at);
    for (const CycNum* x : {&empty, &plus, &minus, &heeg.value}) {
      o.require(h_valuation(*x) == Valuation(0), "valuation" + at);
    }
  }
  if (o.pass) o.note << "empty, +-1 unknot, L(1,1) word all equal 1 up to phase";
}

void report_check(Outcome& o, const IdentityCheck& c) {
  o.require(c.ok(), c.name + " (" + c.first_failure + ")");
  if (o.pass) o.note << (o.note.tellp() > 0 ? "; " : "") << c.name << ": " << c.instances;
}

void c7(Outcome& o) {
  for (int p : {5, 7}) {
    report_check(o, pentagon_check(p));
    report_check(o, orthogonality_check(p));
  }
}

void c8(Outcome& o) {
  for (auto [p, g] : {std::pair{5, 1}, {5, 2}, {7, 1}, {7, 2}}) {
    report_check(o, mcg_relations_check(p, g));
  }
  for (int p : {5, 7}) report_check(o, modular_relation_check(p));
}

void c9(Outcome& o) {
  for (int p : {5, 7}) report_check(o, kirby_check(p, 50, 20240601, 6, -3, 3));
}

void c10(Outcome& o) {
  long flagged = 0;
  for (const auto& e : examples) {
    const long d = d_of(e.p);
    o.require(e.jp <= (d - 1) * e.genus, e.name + " exceeds the genus bound");
    const BoundChainReport r = bound_chain_report(
        JpResult{e.jp, Valuation(e.jp), Route::HeegaardExact, {}, e.genus}, e.p, std::nullopt,
        e.genus);
    o.require(r.ok, e.name + " bound chain");
    if (r.divisible && !*r.divisible) ++flagged;
  }
  struct Pair {
    long n1, q1, n2, q2;
    int p;
  };
  int pairs = 0;
  for (const Pair& x : {Pair{5, 1, 7, 1, 5}, Pair{5, 1, 5, 2, 5}, Pair{10, 3, 3, 1, 5},
                        Pair{7, 1, 7, 2, 7}, Pair{7, 1, 14, 3, 7}}) {
    const ConnectedSumCheck c =
        connected_sum_jp(lens_word(x.n1, x.q1), 1, lens_word(x.n2, x.q2), 1, x.p);
    o.require(c.additive, "additivity for L(" + std::to_string(x.n1) + "," + std::to_string(x.q1) +
                              ") # L(" + std::to_string(x.n2) + "," + std::to_string(x.q2) + ")");
    ++pairs;
  }
  o.note << examples.size() << " examples within genus bound, " << flagged
         << " not divisible by d-1; " << pairs << " lens pairs additive";
}

void c11(Outcome& o) {
  for (int p : {5, 7, 11}) {
    for (int g = 0; g <= 3; ++g) {
      const Integer v = verlinde_dim(g, p);
      const size_t n = enumerate_even_colorings(g, p)->size();
      o.require(v == Integer(static_cast<unsigned long>(n)),
                "p=" + std::to_string(p) + " g=" + std::to_string(g));
    }
    o.require(verlinde_dim(1, p) == d_of(p), "genus one at p=" + std::to_string(p));
  }
  if (o.pass) o.note << "p=5,7,11 and g<=3 agree; genus one gives d";
}

void c12(Outcome& o) {
  for (int p : {5, 7, 11}) {
    const PrimeContext& ctx = PrimeContext::get(p);
    o.require(h_valuation(CycNum(ctx, p)) == Valuation(p - 1), "v(p) at p=" + std::to_string(p));
  }
  std::mt19937_64 rng(12345);
  int checked = 0;
  for (int t = 0; t < 1000; ++t) {
    const int p = std::vector<int>{5, 7, 11}[rng() % 3];
    const PrimeContext& ctx = PrimeContext::get(p);
    auto draw = [&] {
      std::vector<Integer> re(ctx.length());
      for (auto& c : re) c = static_cast<long>(rng() % 21) - 10;
      CycNum x = CycNum::from_coefficients(ctx, re);
      return x * h_power(ctx, static_cast<int>(rng() % 3));
    };
    const CycNum x = draw(), y = draw();
    if (x.is_zero() || y.is_zero()) continue;
    o.require(h_valuation(x * y) == h_valuation(x) + h_valuation(y),
              "product " + std::to_string(t));
    ++checked;
  }
  if (o.pass) o.note << "v(p) = p-1 for p=5,7,11; additivity on " << checked << " products";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"connected sums of S1xS2", c1},
      {"lens spaces", c2},
      {"Poincare sphere (E8)", c3},
      {"Sigma(2,3,6)", c4},
      {"T^3 as a mapping torus", c5},
      {"normalization on S^3", c6},
      {"pentagon and orthogonality", c7},
      {"mapping class group relations", c8},
      {"Kirby moves on random trees", c9},
      {"genus bound, divisibility, additivity", c10},
      {"dimensions", c11},
      {"ring kernel", c12},
  };
  int failures = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": "
              << o.note.str() << "\n";
  }
  std::cout << (failures ? "FAILED " : "ALL PASSED ") << criteria.size() - failures << "/"
            << criteria.size() << "\n";
  return failures ? 1 : 0;
}
