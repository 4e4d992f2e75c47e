#include "qtop/surgery.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace qtop {

void PlumbingTree::validate() const {
  std::map<long, size_t> ids;
  for (size_t i = 0; i < vertices.size(); ++i) {
    if (!ids.emplace(vertices[i].id, i).second) {
      throw InvalidArgument("duplicate vertex id " + std::to_string(vertices[i].id));
    }
  }
  // Union-find over vertex positions detects cycles.
  std::vector<size_t> parent(vertices.size());
  std::iota(parent.begin(), parent.end(), size_t{0});
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::set<std::pair<long, long>> seen;
  for (const auto& [a, b] : edges) {
    if (!ids.count(a) || !ids.count(b)) {
      throw InvalidArgument("edge (" + std::to_string(a) + "," + std::to_string(b) +
                            ") refers to an unknown vertex");
    }
    if (a == b) throw InvalidArgument("self-loop at vertex " + std::to_string(a));
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second) {
      throw InvalidArgument("repeated edge (" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    const size_t ra = find(ids[a]), rb = find(ids[b]);
    if (ra == rb) {
      throw InvalidArgument("edges do not form a forest: (" + std::to_string(a) + "," +
                            std::to_string(b) + ") closes a cycle");
    }
    parent[ra] = rb;
  }
  for (const auto& m : meridians) {
    if (!ids.count(m.vertex)) {
      throw InvalidArgument("meridian on unknown vertex " + std::to_string(m.vertex));
    }
    if (m.color < 0) throw InvalidArgument("negative meridian color");
  }
}

size_t PlumbingTree::index_of(long id) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].id == id) return i;
  throw InvalidArgument("unknown vertex id " + std::to_string(id));
}

IntMatrix linking_matrix(const PlumbingTree& t) {
  t.validate();
  const size_t n = t.vertices.size();
  IntMatrix m(n, std::vector<Integer>(n, 0));
  for (size_t i = 0; i < n; ++i) m[i][i] = t.vertices[i].framing;
  for (const auto& [a, b] : t.edges) {
    const size_t i = t.index_of(a), j = t.index_of(b);
    m[i][j] = m[j][i] = 1;
  }
  return m;
}

int signature_exact(const IntMatrix& m) { return inertia(m).signature(); }

LinkingData homology_data(const IntMatrix& m) {
  LinkingData out;
  out.matrix = m;
  const Inertia in = inertia(m);
  out.signature = in.signature();
  out.corank = in.zero;
  out.det = determinant(m);
  const CokernelData ck = cokernel(m);
  if (ck.free_rank != out.corank) throw InvariantViolation("corank and Smith rank disagree");
  out.torsion = ck.torsion;
  out.invariants = ck.invariants;
  return out;
}

namespace {

// mu_n^f for any integer framing f.
CycNum twist_power(const Recoupling& rc, int n, long f) {
  const PrimeContext& ctx = rc.context();
  const long e = (static_cast<long>(n) * n + 2L * n) * f;
  const CycNum& a = ctx.A_power(e);
  return (n % 2 != 0 && f % 2 != 0) ? -a : a;
}

}  // namespace

BracketValue bracket_eval(const PlumbingTree& t, int p) {
  t.validate();
  const Recoupling& rc = Recoupling::get(p);
  const PrimeContext& ctx = rc.context();
  const std::vector<int> colors = rc.even_colors();
  const size_t nc = colors.size();
  const size_t n = t.vertices.size();
  if (n == 0) {
    // Only meridians can remain without vertices; there are none by validation.
    return {LaurentCyc(ctx.one()), 0};
  }
  std::vector<std::vector<size_t>> adj(n);
  for (const auto& [a, b] : t.edges) {
    const size_t i = t.index_of(a), j = t.index_of(b);
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  // Vertex weights without the global eta factor.
  std::vector<std::vector<CycNum>> weight(n);
  for (size_t v = 0; v < n; ++v) {
    const long deg = static_cast<long>(adj[v].size());
    for (int c : colors) {
      CycNum w = twist_power(rc, c, t.vertices[v].framing);
      // Delta_c^{2 - deg}
      for (long k = 0; k < 2 - deg; ++k) w *= rc.delta(c);
      for (long k = 0; k < deg - 2; ++k) w *= rc.delta_inverse(c);
      for (const auto& m : t.meridians) {
        if (m.vertex != t.vertices[v].id) continue;
        w *= rc.hopf_value(c, m.color) * rc.delta_inverse(c);
      }
      weight[v].push_back(std::move(w));
    }
  }
  std::vector<std::vector<CycNum>> hopf(nc);
  for (size_t a = 0; a < nc; ++a)
    for (size_t b = 0; b < nc; ++b) hopf[a].push_back(rc.hopf_value(colors[a], colors[b]));

  // Leaf contraction: process each component in reverse BFS order so that
  // every child is folded into its parent before the parent is folded.
  std::vector<bool> visited(n, false);
  std::vector<std::vector<CycNum>> msg = weight;
  CycNum total = ctx.one();
  for (size_t root = 0; root < n; ++root) {
    if (visited[root]) continue;
    std::vector<size_t> order{root};
    std::vector<size_t> parent(n, n);
    visited[root] = true;
    for (size_t k = 0; k < order.size(); ++k) {
      for (size_t u : adj[order[k]]) {
        if (visited[u]) continue;
        visited[u] = true;
        parent[u] = order[k];
        order.push_back(u);
      }
    }
    for (size_t k = order.size(); k-- > 1;) {
      const size_t v = order[k], up = parent[v];
      CycAccumulator acc(ctx);
      for (size_t a = 0; a < nc; ++a) {
        acc.clear();
        for (size_t b = 0; b < nc; ++b) acc.add_product(hopf[a][b], msg[v][b]);
        msg[up][a] *= acc.finish();
      }
    }
    CycNum s(ctx);
    for (const auto& x : msg[root]) s += x;
    total *= s;
  }
  LaurentCyc eta_pow(ctx.one());
  for (size_t v = 0; v < n; ++v) eta_pow *= rc.eta();
  return {LaurentCyc(total) * eta_pow, 0};
}

CycNum invariant_raw(const PlumbingTree& t, int p) {
  const IntMatrix m = linking_matrix(t);
  const int sig = signature_exact(m);
  const BracketValue b = bracket_eval(t, p);
  const PrimeContext& ctx = PrimeContext::get(p);
  LaurentCyc v = LaurentCyc(ctx.kappa_power(-sig)) * b.value;
  if (!v.is_integral()) {
    throw InvariantViolation("surgery invariant is not an algebraic integer");
  }
  return ctx.kappa_power(-b.kappa_ledger) * v.num();
}

InvariantValue invariant_Ip(const PlumbingTree& t, int p) {
  CycNum raw = invariant_raw(t, p);
  PhaseStrip s = strip_phase(raw);
  Valuation v = h_valuation(s.y);
  return {s.k, std::move(s.y), v};
}

PlumbingTree random_plumbing(std::mt19937_64& rng, int max_vertices, long fmin, long fmax) {
  auto uniform = [&rng](long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
  };
  PlumbingTree t;
  const long n = uniform(1, max_vertices);
  for (long i = 1; i <= n; ++i) {
    t.vertices.push_back({i, uniform(fmin, fmax)});
    // Mostly trees; occasionally start a new component.
    if (i > 1 && uniform(0, 4) != 0) t.edges.push_back({uniform(1, i - 1), i});
  }
  return t;
}

std::optional<PlumbingTree> blow_down(const PlumbingTree& t, long id) {
  const size_t v = t.index_of(id);
  const long eps = t.vertices[v].framing;
  if (eps != 1 && eps != -1) return std::nullopt;
  for (const auto& m : t.meridians)
    if (m.vertex == id) return std::nullopt;
  std::vector<long> nbrs;
  for (const auto& [a, b] : t.edges) {
    if (a == id) nbrs.push_back(b);
    if (b == id) nbrs.push_back(a);
  }
  if (nbrs.size() > 2) return std::nullopt;
  PlumbingTree out;
  for (const auto& x : t.vertices) {
    if (x.id == id) continue;
    const bool adjacent = std::find(nbrs.begin(), nbrs.end(), x.id) != nbrs.end();
    out.vertices.push_back({x.id, adjacent ? x.framing - eps : x.framing});
  }
  for (const auto& e : t.edges)
    if (e.first != id && e.second != id) out.edges.push_back(e);
  if (nbrs.size() == 2) out.edges.push_back({nbrs[0], nbrs[1]});
  out.meridians = t.meridians;
  return out;
}

PlumbingTree lens_chain(long n, long q) {
  if (n < 1) throw InvalidArgument("lens chain needs n >= 1");
  if (std::gcd(n, q) != 1) throw InvalidArgument("lens space parameters must be coprime");
  long x = n, y = ((q % n) + n) % n;
  if (n == 1) y = 1;
  PlumbingTree t;
  long id = 1;
  // n/q = a_1 - 1/(a_2 - 1/(...)), framings -a_i.
  while (y != 0) {
    const long a = (x + y - 1) / y;
    t.vertices.push_back({id, -a});
    if (id > 1) t.edges.push_back({id - 1, id});
    ++id;
    const long ny = a * y - x;
    x = y;
    y = ny;
  }
  return t;
}

}  // namespace qtop
