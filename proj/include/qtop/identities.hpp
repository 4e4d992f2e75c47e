#pragma once
// Exhaustive and randomized consistency checks of the recoupling data, the
// mapping class group representation and the surgery formula.

#include <cstdint>
#include <string>
#include <utility>

namespace qtop {

struct IdentityCheck {
  explicit IdentityCheck(std::string n) : name(std::move(n)) {}

  std::string name;
  long instances = 0;
  long failures = 0;
  std::string first_failure;

  bool ok() const noexcept { return instances > 0 && failures == 0; }
};

// Five alternating F-moves on the two inner edges of a tree with five legs
// return the tree with its inner edges exchanged; the composite must be the
// corresponding relabeling, for every even coloring.
IdentityCheck pentagon_check(int p);

// Two F-moves on the inner edge of a tree with four legs compose to the
// identity, for every even coloring.
IdentityCheck orthogonality_check(int p);

// Generator inverses, braid relations between curves meeting once (equal up
// to a power of kappa) and commutation of disjoint curves.
IdentityCheck mcg_relations_check(int p, int genus);

// Genus 1: (S T)^3 equals S^2 up to a power of kappa, with T = a1 and
// S = a1^-1 b1^-1 a1^-1, which acts on homology as [[0,-1],[1,0]].
IdentityCheck modular_relation_check(int p);

// Random forests: adding a split +-1 unknot, blowing up a vertex or an edge,
// and blowing down every eligible +-1 vertex leave the unstripped invariant
// unchanged.
IdentityCheck kirby_check(int p, int trees, std::uint64_t seed, int max_vertices = 6,
                          long fmin = -3, long fmax = 3);

}  // namespace qtop
