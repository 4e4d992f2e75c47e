#pragma once
// The quantum representation of the mapping class group of a closed
// genus-g surface on the even-coloring basis of the canonical spine.
//
// Generators: a_i twists along the meridian dual to loop i, b_i along the
// curve running once through handle i, c_i (i < g) along the meridian
// separating handles i and i+1 in a chain. Tokens of a word are applied left
// to right, so rho(t_1 ... t_n) = rho(t_n) ... rho(t_1).
//
// Homology convention (basis m_i, l_i with m_i . l_j = delta_ij): a_i, b_i
// and c_i twist along m_i, l_i and m_i - m_{i+1}; a twist along c sends x
// to x + (c . x) c. In genus 1 this gives a = [[1,1],[0,1]] and
// b = [[1,0],[-1,1]] acting on column vectors.

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qtop/intlinalg.hpp"
#include "qtop/repmatrix.hpp"

namespace qtop {

enum class CurveKind { A, B, C };

struct Generator {
  CurveKind kind;
  int index;      // 1-based handle index
  int power = 1;  // +1 or -1
  friend bool operator==(const Generator&, const Generator&) = default;
  std::string name() const;  // "a1", "b2^-1", ...
  Generator inverse() const { return {kind, index, -power}; }
};

struct MCGWord {
  std::vector<Generator> tokens;
  friend bool operator==(const MCGWord&, const MCGWord&) = default;
  bool empty() const noexcept { return tokens.empty(); }
  // Smallest genus on which every token is defined.
  int min_genus() const;
  std::string to_string() const;
};

// Whitespace-separated tokens a<i>, b<i>, c<i>, each with an optional
// integer exponent ^k (expanded to |k| unit tokens).
MCGWord parse_word(const std::string& text);
MCGWord inverse(const MCGWord& w);
MCGWord concat(const MCGWord& a, const MCGWord& b);
// Same word with every handle index shifted by offset.
MCGWord block_embed(const MCGWord& w, int offset);
void check_word(const MCGWord& w, int genus);

// Action on H_1 of the genus-g surface in the basis (m_1..m_g, l_1..l_g).
IntMatrix symplectic_action(const MCGWord& w, int genus);
// Genus-1 action as a 2x2 matrix.
IntMatrix word_to_sl2z(const MCGWord& w);
// Genus-1 word whose gluing map sends the meridian m to q0*m + n*l.
MCGWord lens_word(long n, long q0);

struct HomologyData {
  int b1 = 0;
  Integer torsion = 1;
  std::vector<Integer> invariants;
  // b1 = 0 and p does not divide the torsion order.
  bool zp_sphere(int p) const { return b1 == 0 && torsion % p != 0; }
};
// H_1 of the manifold glued from two handlebodies along w.
HomologyData heegaard_homology(const MCGWord& w, int genus);
// H_1 of the mapping torus of w.
HomologyData mapping_torus_homology(const MCGWord& w, int genus);

class MatrixCache;

class Representation {
 public:
  // Shared instance per (p, genus). Instances created after
  // set_shared_cache() read and write generator matrices through it.
  static const Representation& get(int p, int genus);
  static void set_shared_cache(std::shared_ptr<const MatrixCache> cache);
  Representation(int p, int genus, std::shared_ptr<const MatrixCache> cache = nullptr);

  ~Representation();
  Representation(const Representation&) = delete;
  Representation& operator=(const Representation&) = delete;

  int p() const noexcept { return rc_->p(); }
  int genus() const noexcept { return genus_; }
  const Recoupling& recoupling() const noexcept { return *rc_; }
  const std::shared_ptr<const ColoringBasis>& basis() const noexcept { return basis_; }
  size_t dim() const noexcept { return basis_->size(); }

  const RepMatrix& generator(const Generator& g) const;
  // Freshly derived generator matrix, bypassing every cache.
  RepMatrix derive_generator(const Generator& g) const;
  RepMatrix rho(const MCGWord& w) const;
  // rho(w) applied to basis vector e_col.
  RepVector rho_column(const MCGWord& w, size_t col = 0) const;
  LaurentCyc trace(const MCGWord& w) const { return rho(w).trace(); }

  // Curve operator of a circle colored 2 along the boundary of loop i.
  SparseCycMatrix curve_operator(int i) const;

 private:
  struct Chain;  // flip sequence from the canonical spine to the chain spine
  const Chain& chain() const;
  RepMatrix build_a(int i, int power) const;
  RepMatrix build_b(int i, int power) const;
  RepMatrix build_c(int i, int power) const;

  const Recoupling* rc_;
  int genus_;
  Spine spine_;
  std::shared_ptr<const ColoringBasis> basis_;
  std::shared_ptr<const MatrixCache> cache_;

  mutable std::mutex mu_;
  mutable std::map<std::string, std::unique_ptr<RepMatrix>> generators_;
  mutable std::unique_ptr<Chain> chain_;
};

// Sparse matrix of the F-move on edge e from the colorings of `before` to
// those of the graph with e flipped.
SparseCycMatrix flip_matrix(const Recoupling& rc, const PlanarGraph& before, int e,
                            const ColoringBasis& b_old, const ColoringBasis& b_new);

// Matrix of twists whose eigenvalue on the eigenvector of a color-2 curve
// operator with eigenvalue curve_eigenvalue(2, k) is mu_k^power.
RepMatrix twist_from_curve_operator(const Recoupling& rc, const SparseCycMatrix& z, int power,
                                    std::shared_ptr<const ColoringBasis> basis);

}  // namespace qtop
