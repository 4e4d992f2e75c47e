#pragma once
// Trivalent spines of handlebodies, their admissible colorings (the TQFT
// basis), and the dimension count.

#include <array>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qtop/recoupling.hpp"

namespace qtop {

struct HalfEdge {
  int edge = -1;
  int end = 0;  // 0 or 1
  friend bool operator==(const HalfEdge&, const HalfEdge&) = default;
  friend auto operator<=>(const HalfEdge&, const HalfEdge&) = default;
};

// Graph embedded in the plane by a rotation system: each vertex lists its
// half-edges counterclockwise. Univalent vertices are allowed (as fixed
// boundary legs); every other vertex is trivalent.
class PlanarGraph {
 public:
  explicit PlanarGraph(int num_edges = 0);

  int num_edges() const noexcept { return static_cast<int>(ends_.size()); }
  int num_vertices() const noexcept { return static_cast<int>(rot_.size()); }

  // Adds a vertex with the given counterclockwise half-edges.
  int add_vertex(const std::vector<HalfEdge>& rotation);
  // Throws InvalidArgument unless every half-edge is attached exactly once.
  void validate() const;

  int vertex_of(HalfEdge h) const { return ends_.at(h.edge)[h.end]; }
  const std::vector<HalfEdge>& rotation(int v) const { return rot_.at(v); }
  bool is_loop(int e) const { return ends_.at(e)[0] == ends_.at(e)[1]; }

  struct FlipData {
    int a, b, c, d;  // edges around the flipped edge before the move
  };
  // Whitehead move on a non-loop edge joining trivalent vertices u, v with
  // rotations [e,A,B] at u and [e,C,D] at v; afterwards u carries [e,D,A]
  // and v carries [e,B,C]. The move is an involution.
  FlipData flip(int e);
  // Edges around e in the layout used by flip(), without modifying.
  FlipData flip_neighbors(int e) const;

  // Face tracing: the half-edge after h along the boundary walk.
  HalfEdge next_in_face(HalfEdge h) const;
  struct Faces {
    std::vector<std::vector<HalfEdge>> walks;
    std::map<HalfEdge, int> face_of;
  };
  Faces faces() const;

  // Colors at vertex v in rotation order.
  std::vector<int> vertex_colors(int v, const std::vector<int>& coloring) const;

 private:
  std::vector<std::array<int, 2>> ends_;
  std::vector<std::vector<HalfEdge>> rot_;
};

enum class EdgeRole { Loop, Stick, Path };

struct SpineEdge {
  EdgeRole role;
  int index;  // 1-based within its role
};

// Canonical spine of the genus-g handlebody. For g >= 2: loops l_1..l_g,
// each at a vertex v_i joined by a stick; for g = 2 a single stick joins
// v_1 and v_2, for g >= 3 the sticks s_i hang off a path w_1 .. w_{g-2}
// (s_1, s_2 at w_1; s_k at w_{k-1} for 3 <= k <= g-1; s_g at w_{g-2}).
// Edges are ordered loops first, then sticks, then path edges. Genus 1 is
// a single loop with no vertex; genus 0 has no edges.
class Spine {
 public:
  static Spine canonical(int genus);

  int genus() const noexcept { return genus_; }
  const PlanarGraph& graph() const noexcept { return graph_; }
  int num_edges() const noexcept { return static_cast<int>(roles_.size()); }
  const std::vector<SpineEdge>& roles() const noexcept { return roles_; }
  int loop_edge(int i) const;   // 1-based
  int stick_edge(int i) const;  // 1-based
  int path_edge(int i) const;   // 1-based
  std::string edge_name(int e) const;
  // Boundary walk of the face enclosed by loop i.
  std::vector<HalfEdge> hole_walk(int i) const;

 private:
  int genus_ = 0;
  PlanarGraph graph_;
  std::vector<SpineEdge> roles_;
};

// Ordered set of colorings indexed by position.
class ColoringBasis {
 public:
  ColoringBasis(int p, int genus, std::vector<std::vector<int>> colorings);
  int p() const noexcept { return p_; }
  int genus() const noexcept { return genus_; }
  size_t size() const noexcept { return colorings_.size(); }
  const std::vector<int>& operator[](size_t i) const { return colorings_[i]; }
  const std::vector<std::vector<int>>& colorings() const noexcept { return colorings_; }
  // Position of a coloring, or -1.
  long index_of(const std::vector<int>& c) const;
  friend bool operator==(const ColoringBasis& a, const ColoringBasis& b) {
    return a.p_ == b.p_ && a.genus_ == b.genus_ && a.colorings_ == b.colorings_;
  }

 private:
  int p_;
  int genus_;
  std::vector<std::vector<int>> colorings_;
  std::map<std::vector<int>, size_t> index_;
};

// All admissible even colorings of a graph, lexicographic in edge order
// (so the zero coloring is first). Univalent vertices impose nothing.
std::vector<std::vector<int>> even_colorings(const Recoupling& rc, const PlanarGraph& g);

std::shared_ptr<const ColoringBasis> enumerate_even_colorings(int genus, int p);
std::shared_ptr<const ColoringBasis> enumerate_small_colorings(int genus, int p);

// dim V_p of the closed genus-g surface by a transfer-matrix count.
Integer verlinde_dim(int genus, int p);

}  // namespace qtop
