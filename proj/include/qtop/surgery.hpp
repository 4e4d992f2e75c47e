#pragma once
// Surgery on plumbing trees: linking matrices, signatures, homology, and the
// quantum invariant I_p = kappa^{-signature} [L(omega) u G] by leaf
// contraction.

#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "qtop/intlinalg.hpp"
#include "qtop/recoupling.hpp"

namespace qtop {

struct PlumbingVertex {
  long id;
  long framing;
};

// A meridian circle around vertex `vertex` carrying color `color`.
struct Meridian {
  long vertex;
  int color;
};

// Unknots placed at the vertices of a forest, Hopf-linked along its edges.
struct PlumbingTree {
  std::vector<PlumbingVertex> vertices;
  std::vector<std::pair<long, long>> edges;
  std::vector<Meridian> meridians;

  // Throws InvalidArgument on duplicate ids, unknown ids, self-loops,
  // repeated edges or cycles.
  void validate() const;
  size_t index_of(long id) const;
};

IntMatrix linking_matrix(const PlumbingTree& t);
int signature_exact(const IntMatrix& m);

struct LinkingData {
  IntMatrix matrix;
  int signature = 0;
  int corank = 0;          // b_1 of the surgered manifold
  Integer det = 0;         // determinant of the linking matrix
  Integer torsion = 1;     // order of the torsion of H_1
  std::vector<Integer> invariants;
  // H_1 with Z_p coefficients vanishes.
  bool zp_sphere(int p) const { return corank == 0 && det % p != 0; }
};
LinkingData homology_data(const IntMatrix& m);

struct BracketValue {
  LaurentCyc value;  // [L(omega) u G]
  int kappa_ledger;  // phase carried separately (always 0 here)
};
BracketValue bracket_eval(const PlumbingTree& t, int p);

struct InvariantValue {
  int phase;             // k with I = kappa^k * value
  CycNum value;          // element of Z[q]
  Valuation valuation;   // h-adic valuation of value
};
// kappa^{-signature} [L(omega) u G], phase-stripped.
InvariantValue invariant_Ip(const PlumbingTree& t, int p);
// Unstripped kappa^{-signature} [L(omega) u G] as an element of O.
CycNum invariant_raw(const PlumbingTree& t, int p);

// Random forest with at most max_vertices vertices and framings in
// [fmin, fmax]; ids are 1..n.
PlumbingTree random_plumbing(std::mt19937_64& rng, int max_vertices, long fmin, long fmax);

// Blow down a +-1 framed vertex of degree <= 1; nullopt when the vertex has
// another framing or a higher degree or carries a meridian.
std::optional<PlumbingTree> blow_down(const PlumbingTree& t, long id);

// Linear chain presenting L(n, q) from the continued fraction of -n/q.
PlumbingTree lens_chain(long n, long q);

}  // namespace qtop
