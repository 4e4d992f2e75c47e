#include "qtop/tqftspace.hpp"

#include <algorithm>
#include <functional>
#include <mutex>

namespace qtop {

// ---------------------------------------------------------------- PlanarGraph

PlanarGraph::PlanarGraph(int num_edges) : ends_(num_edges, std::array<int, 2>{-1, -1}) {}

int PlanarGraph::add_vertex(const std::vector<HalfEdge>& rotation) {
  if (rotation.size() != 1 && rotation.size() != 3) {
    throw InvalidArgument("vertices must be univalent or trivalent");
  }
  const int v = num_vertices();
  for (const HalfEdge& h : rotation) {
    if (h.edge < 0 || h.edge >= num_edges() || (h.end != 0 && h.end != 1)) {
      throw InvalidArgument("half-edge out of range");
    }
    if (ends_[h.edge][h.end] != -1) throw InvalidArgument("half-edge attached twice");
    ends_[h.edge][h.end] = v;
  }
  rot_.push_back(rotation);
  return v;
}

void PlanarGraph::validate() const {
  for (int e = 0; e < num_edges(); ++e) {
    const bool a = ends_[e][0] == -1, b = ends_[e][1] == -1;
    // A free circle (both ends open) is allowed; a dangling end is not.
    if (a != b) throw InvalidArgument("edge " + std::to_string(e) + " has a dangling end");
  }
}

namespace {
std::vector<HalfEdge> rotated_to(const std::vector<HalfEdge>& r, HalfEdge h) {
  auto it = std::find(r.begin(), r.end(), h);
  if (it == r.end()) throw InvariantViolation("half-edge missing from its vertex rotation");
  std::vector<HalfEdge> out(it, r.end());
  out.insert(out.end(), r.begin(), it);
  return out;
}
}  // namespace

PlanarGraph::FlipData PlanarGraph::flip_neighbors(int e) const {
  const int u = ends_.at(e)[0], v = ends_.at(e)[1];
  if (u < 0 || u == v) throw InvalidArgument("cannot flip a loop or free edge");
  if (rot_[u].size() != 3 || rot_[v].size() != 3) {
    throw InvalidArgument("flip requires trivalent endpoints");
  }
  auto ru = rotated_to(rot_[u], {e, 0});
  auto rv = rotated_to(rot_[v], {e, 1});
  return {ru[1].edge, ru[2].edge, rv[1].edge, rv[2].edge};
}

PlanarGraph::FlipData PlanarGraph::flip(int e) {
  FlipData fd = flip_neighbors(e);
  const int u = ends_[e][0], v = ends_[e][1];
  auto ru = rotated_to(rot_[u], {e, 0});
  auto rv = rotated_to(rot_[v], {e, 1});
  const HalfEdge A = ru[1], B = ru[2], C = rv[1], D = rv[2];
  rot_[u] = {HalfEdge{e, 0}, D, A};
  rot_[v] = {HalfEdge{e, 1}, B, C};
  ends_[D.edge][D.end] = u;
  ends_[B.edge][B.end] = v;
  return fd;
}

HalfEdge PlanarGraph::next_in_face(HalfEdge h) const {
  const HalfEdge arrive{h.edge, 1 - h.end};
  const int w = vertex_of(arrive);
  if (w < 0) return arrive;  // free circle
  const auto& r = rot_[w];
  auto it = std::find(r.begin(), r.end(), arrive);
  ++it;
  if (it == r.end()) it = r.begin();
  return *it;
}

PlanarGraph::Faces PlanarGraph::faces() const {
  Faces f;
  for (int e = 0; e < num_edges(); ++e) {
    for (int end = 0; end < 2; ++end) {
      HalfEdge h{e, end};
      if (f.face_of.count(h)) continue;
      const int id = static_cast<int>(f.walks.size());
      std::vector<HalfEdge> walk;
      while (!f.face_of.count(h)) {
        f.face_of[h] = id;
        walk.push_back(h);
        h = next_in_face(h);
      }
      f.walks.push_back(std::move(walk));
    }
  }
  return f;
}

std::vector<int> PlanarGraph::vertex_colors(int v, const std::vector<int>& coloring) const {
  std::vector<int> out;
  for (const HalfEdge& h : rot_.at(v)) out.push_back(coloring.at(h.edge));
  return out;
}

// ---------------------------------------------------------------- Spine

Spine Spine::canonical(int genus) {
  if (genus < 0) throw InvalidArgument("negative genus");
  Spine s;
  s.genus_ = genus;
  if (genus == 0) return s;
  if (genus == 1) {
    s.graph_ = PlanarGraph(1);
    s.roles_ = {{EdgeRole::Loop, 1}};
    return s;
  }
  const int g = genus;
  const int sticks = (g == 2) ? 1 : g;
  const int paths = (g == 2) ? 0 : g - 3;
  s.graph_ = PlanarGraph(g + sticks + paths);
  for (int i = 1; i <= g; ++i) s.roles_.push_back({EdgeRole::Loop, i});
  for (int i = 1; i <= sticks; ++i) s.roles_.push_back({EdgeRole::Stick, i});
  for (int i = 1; i <= paths; ++i) s.roles_.push_back({EdgeRole::Path, i});
  auto loop = [](int i) { return i - 1; };
  auto stick = [g](int i) { return g + i - 1; };
  auto path = [g](int i) { return 2 * g + i - 1; };

  PlanarGraph& G = s.graph_;
  if (g == 2) {
    G.add_vertex({{stick(1), 0}, {loop(1), 0}, {loop(1), 1}});
    G.add_vertex({{stick(1), 1}, {loop(2), 0}, {loop(2), 1}});
    G.validate();
    return s;
  }
  for (int i = 1; i <= g; ++i) G.add_vertex({{stick(i), 1}, {loop(i), 0}, {loop(i), 1}});
  for (int j = 1; j <= g - 2; ++j) {
    HalfEdge left = (j == 1) ? HalfEdge{stick(1), 0} : HalfEdge{path(j - 1), 1};
    HalfEdge mid = HalfEdge{stick(j + 1), 0};
    HalfEdge right = (j == g - 2) ? HalfEdge{stick(g), 0} : HalfEdge{path(j), 0};
    G.add_vertex({left, mid, right});
  }
  G.validate();
  return s;
}

namespace {
int find_role(const std::vector<SpineEdge>& roles, EdgeRole role, int i) {
  for (size_t e = 0; e < roles.size(); ++e)
    if (roles[e].role == role && roles[e].index == i) return static_cast<int>(e);
  throw InvalidArgument("spine has no such edge");
}
}  // namespace

int Spine::loop_edge(int i) const { return find_role(roles_, EdgeRole::Loop, i); }
int Spine::stick_edge(int i) const { return find_role(roles_, EdgeRole::Stick, i); }
int Spine::path_edge(int i) const { return find_role(roles_, EdgeRole::Path, i); }

std::string Spine::edge_name(int e) const {
  const SpineEdge& r = roles_.at(e);
  const char* prefix = r.role == EdgeRole::Loop ? "l" : r.role == EdgeRole::Stick ? "s" : "p";
  return prefix + std::to_string(r.index);
}

std::vector<HalfEdge> Spine::hole_walk(int i) const {
  const int e = loop_edge(i);
  if (genus_ == 1) return {{e, 1}};
  for (int end = 0; end < 2; ++end) {
    HalfEdge h{e, end};
    if (graph_.next_in_face(h) == h) return {h};
  }
  throw InvariantViolation("loop does not bound a face");
}

// ---------------------------------------------------------------- colorings

ColoringBasis::ColoringBasis(int p, int genus, std::vector<std::vector<int>> colorings)
    : p_(p), genus_(genus), colorings_(std::move(colorings)) {
  for (size_t i = 0; i < colorings_.size(); ++i) {
    if (!index_.emplace(colorings_[i], i).second) {
      throw InvalidArgument("duplicate coloring in basis");
    }
  }
}

long ColoringBasis::index_of(const std::vector<int>& c) const {
  auto it = index_.find(c);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

namespace {

// Backtracking over edges in index order; a vertex is checked once its
// highest-numbered edge is assigned.
std::vector<std::vector<int>> enumerate(const Recoupling& rc, const PlanarGraph& g,
                                        const std::vector<std::vector<int>>& allowed) {
  const int m = g.num_edges();
  std::vector<std::vector<int>> checks(m);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.rotation(v).size() != 3) continue;
    int last = 0;
    for (const HalfEdge& h : g.rotation(v)) last = std::max(last, h.edge);
    checks[last].push_back(v);
  }
  std::vector<std::vector<int>> out;
  std::vector<int> cur(m, 0);
  std::function<void(int)> rec = [&](int e) {
    if (e == m) {
      out.push_back(cur);
      return;
    }
    for (int c : allowed[e]) {
      cur[e] = c;
      bool ok = true;
      for (int v : checks[e]) {
        auto cols = g.vertex_colors(v, cur);
        if (!rc.admissible(cols[0], cols[1], cols[2])) {
          ok = false;
          break;
        }
      }
      if (ok) rec(e + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace

std::vector<std::vector<int>> even_colorings(const Recoupling& rc, const PlanarGraph& g) {
  std::vector<std::vector<int>> allowed(g.num_edges(), rc.even_colors());
  return enumerate(rc, g, allowed);
}

std::shared_ptr<const ColoringBasis> enumerate_even_colorings(int genus, int p) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const ColoringBasis>> cache;
  const Recoupling& rc = Recoupling::get(p);
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{genus, p}];
  if (!slot) {
    Spine s = Spine::canonical(genus);
    slot = std::make_shared<ColoringBasis>(p, genus, even_colorings(rc, s.graph()));
  }
  return slot;
}

std::shared_ptr<const ColoringBasis> enumerate_small_colorings(int genus, int p) {
  const Recoupling& rc = Recoupling::get(p);
  Spine s = Spine::canonical(genus);
  const int d = rc.context().d();
  std::vector<std::vector<int>> allowed;
  for (const SpineEdge& r : s.roles()) {
    std::vector<int> cs;
    if (r.role == EdgeRole::Loop) {
      for (int c = 0; c <= d - 1; ++c) cs.push_back(c);
    } else {
      cs = rc.even_colors();
    }
    allowed.push_back(std::move(cs));
  }
  return std::make_shared<ColoringBasis>(p, genus, enumerate(rc, s.graph(), allowed));
}

Integer verlinde_dim(int genus, int p) {
  if (genus < 0) throw InvalidArgument("negative genus");
  const Recoupling& rc = Recoupling::get(p);
  const std::vector<int> ev = rc.even_colors();
  const int d = static_cast<int>(ev.size());
  if (genus == 0) return 1;
  if (genus == 1) return d;
  // n[s]: colorings of a loop whose vertex meets a stick colored ev[s].
  std::vector<Integer> n(d);
  for (int s = 0; s < d; ++s)
    for (int x : ev)
      if (rc.admissible(x, x, ev[s])) n[s] += 1;
  if (genus == 2) {
    Integer total = 0;
    for (int s = 0; s < d; ++s) total += n[s] * n[s];
    return total;
  }
  // Caterpillar transfer: state is the color of the current path edge.
  auto adm = [&](int a, int b, int c) { return rc.admissible(ev[a], ev[b], ev[c]); };
  std::vector<Integer> state(d);
  for (int t = 0; t < d; ++t)
    for (int s1 = 0; s1 < d; ++s1)
      for (int s2 = 0; s2 < d; ++s2)
        if (adm(s1, s2, t)) state[t] += n[s1] * n[s2];
  for (int j = 2; j <= genus - 2; ++j) {
    std::vector<Integer> next(d);
    for (int t = 0; t < d; ++t)
      for (int prev = 0; prev < d; ++prev)
        for (int s = 0; s < d; ++s)
          if (adm(prev, s, t)) next[t] += state[prev] * n[s];
    state = std::move(next);
  }
  // After the last path vertex the state is indexed by the color of s_g.
  Integer total = 0;
  for (int t = 0; t < d; ++t) total += state[t] * n[t];
  return total;
}

}  // namespace qtop
