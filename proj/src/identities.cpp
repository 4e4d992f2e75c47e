#include "qtop/identities.hpp"

#include <random>
#include <sstream>

#include "qtop/mcgrep.hpp"
#include "qtop/surgery.hpp"

namespace qtop {

namespace {

void record(IdentityCheck& c, bool good, const std::string& what) {
  ++c.instances;
  if (good) return;
  if (c.failures++ == 0) c.first_failure = what;
}

std::string show(const std::vector<int>& c) {
  std::ostringstream os;
  os << "(";
  for (size_t k = 0; k < c.size(); ++k) os << (k ? "," : "") << c[k];
  os << ")";
  return os.str();
}

// Legs 0..n-1 end at univalent vertices; inner vertices are listed by
// their (edge, end) rotations.
PlanarGraph tree_graph(int legs, int inner_edges,
                       const std::vector<std::vector<HalfEdge>>& inner_vertices) {
  PlanarGraph g(legs + inner_edges);
  for (int k = 0; k < legs; ++k) g.add_vertex({{k, 0}});
  for (const auto& r : inner_vertices) g.add_vertex(r);
  g.validate();
  return g;
}

bool curves_meet(const Generator& x, const Generator& y) {
  using K = CurveKind;
  if ((x.kind == K::A && y.kind == K::B) || (x.kind == K::B && y.kind == K::A)) {
    return x.index == y.index;
  }
  if (x.kind == K::B && y.kind == K::C) return x.index == y.index || x.index == y.index + 1;
  if (x.kind == K::C && y.kind == K::B) return curves_meet(y, x);
  return false;
}

}  // namespace

IdentityCheck pentagon_check(int p) {
  const Recoupling& rc = Recoupling::get(p);
  IdentityCheck out{"pentagon p=" + std::to_string(p)};
  const PlanarGraph start = tree_graph(5, 2,
                                       {{{5, 0}, {0, 1}, {1, 1}},
                                        {{5, 1}, {2, 1}, {6, 0}},
                                        {{6, 1}, {3, 1}, {4, 1}}});
  const ColoringBasis b0(p, 0, even_colorings(rc, start));
  PlanarGraph cur = start;
  ColoringBasis cb = b0;
  CycMatrix m = CycMatrix::identity(rc.context(), b0.size());
  for (int e : {5, 6, 5, 6, 5}) {
    PlanarGraph next = cur;
    next.flip(e);
    ColoringBasis nb(p, 0, even_colorings(rc, next));
    m = flip_matrix(rc, cur, e, cb, nb).to_dense() * m;
    cur = std::move(next);
    cb = std::move(nb);
  }
  for (size_t j = 0; j < b0.size(); ++j) {
    std::vector<int> swapped = b0[j];
    std::swap(swapped[5], swapped[6]);
    const long target = cb.index_of(swapped);
    bool good = target >= 0;
    for (size_t i = 0; good && i < m.rows(); ++i) {
      good = static_cast<long>(i) == target ? m(i, j).is_one() : m(i, j).is_zero();
    }
    record(out, good, "coloring " + show(b0[j]));
  }
  return out;
}

IdentityCheck orthogonality_check(int p) {
  const Recoupling& rc = Recoupling::get(p);
  IdentityCheck out{"orthogonality p=" + std::to_string(p)};
  const PlanarGraph g = tree_graph(4, 1, {{{4, 0}, {0, 1}, {1, 1}}, {{4, 1}, {2, 1}, {3, 1}}});
  PlanarGraph f = g;
  f.flip(4);
  const ColoringBasis b0(p, 0, even_colorings(rc, g));
  const ColoringBasis b1(p, 0, even_colorings(rc, f));
  const CycMatrix m =
      flip_matrix(rc, f, 4, b1, b0).to_dense() * flip_matrix(rc, g, 4, b0, b1).to_dense();
  for (size_t j = 0; j < b0.size(); ++j) {
    bool good = true;
    for (size_t i = 0; good && i < m.rows(); ++i) {
      good = i == j ? m(i, j).is_one() : m(i, j).is_zero();
    }
    record(out, good, "coloring " + show(b0[j]));
  }
  return out;
}

IdentityCheck mcg_relations_check(int p, int genus) {
  const Representation& rep = Representation::get(p, genus);
  IdentityCheck out{"mcg relations p=" + std::to_string(p) + " g=" + std::to_string(genus)};
  std::vector<Generator> gens;
  for (int i = 1; i <= genus; ++i) {
    gens.push_back({CurveKind::A, i, 1});
    gens.push_back({CurveKind::B, i, 1});
    if (i < genus) gens.push_back({CurveKind::C, i, 1});
  }
  for (const auto& x : gens) {
    record(out, (rep.generator(x) * rep.generator(x.inverse())).is_identity(),
           "inverse of " + x.name());
  }
  for (size_t a = 0; a < gens.size(); ++a) {
    for (size_t b = a + 1; b < gens.size(); ++b) {
      const RepMatrix& x = rep.generator(gens[a]);
      const RepMatrix& y = rep.generator(gens[b]);
      const std::string pair = gens[a].name() + " " + gens[b].name();
      if (curves_meet(gens[a], gens[b])) {
        record(out, phase_between(x * y * x, y * x * y).has_value(), "braid " + pair);
      } else {
        record(out, x * y == y * x, "commute " + pair);
      }
    }
  }
  return out;
}

IdentityCheck modular_relation_check(int p) {
  const Representation& rep = Representation::get(p, 1);
  IdentityCheck out{"(ST)^3 = S^2 p=" + std::to_string(p)};
  const MCGWord s = parse_word("a1^-1 b1^-1 a1^-1");
  const MCGWord st = concat(s, parse_word("a1"));
  const MCGWord lhs = concat(st, concat(st, st));
  const MCGWord rhs = concat(s, s);
  const IntMatrix rot{{0, -1}, {1, 0}};
  record(out, word_to_sl2z(s) == rot, "S acts as a rotation");
  record(out, word_to_sl2z(lhs) == word_to_sl2z(rhs), "homology action");
  record(out, phase_between(rep.rho(lhs), rep.rho(rhs)).has_value(), "representation");
  return out;
}

IdentityCheck kirby_check(int p, int trees, std::uint64_t seed, int max_vertices, long fmin,
                          long fmax) {
  IdentityCheck out{"kirby p=" + std::to_string(p)};
  std::mt19937_64 rng(seed);
  for (int k = 0; k < trees; ++k) {
    const PlumbingTree t = random_plumbing(rng, max_vertices, fmin, fmax);
    const CycNum base = invariant_raw(t, p);
    long fresh = 0;
    for (const auto& v : t.vertices) fresh = std::max(fresh, v.id);
    ++fresh;
    const std::string tag = "tree " + std::to_string(k);
    for (long eps : {1L, -1L}) {
      PlumbingTree u = t;
      u.vertices.push_back({fresh, eps});
      record(out, invariant_raw(u, p) == base, tag + " stabilization " + std::to_string(eps));

      const size_t at = rng() % t.vertices.size();
      PlumbingTree leaf = t;
      leaf.vertices[at].framing += eps;
      leaf.vertices.push_back({fresh, eps});
      leaf.edges.push_back({t.vertices[at].id, fresh});
      record(out, invariant_raw(leaf, p) == base, tag + " leaf blow-up");

      if (!t.edges.empty()) {
        const size_t ei = rng() % t.edges.size();
        PlumbingTree mid = t;
        const auto [a, b] = t.edges[ei];
        mid.edges.erase(mid.edges.begin() + static_cast<long>(ei));
        mid.vertices[t.index_of(a)].framing += eps;
        mid.vertices[t.index_of(b)].framing += eps;
        mid.vertices.push_back({fresh, eps});
        mid.edges.push_back({a, fresh});
        mid.edges.push_back({fresh, b});
        record(out, invariant_raw(mid, p) == base, tag + " edge blow-up");
      }
    }
    for (const auto& v : t.vertices) {
      const auto down = blow_down(t, v.id);
      if (!down) continue;
      record(out, invariant_raw(*down, p) == base,
             tag + " blow-down at " + std::to_string(v.id));
    }
  }
  return out;
}

}  // namespace qtop
