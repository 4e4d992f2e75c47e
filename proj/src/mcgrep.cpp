#include "qtop/mcgrep.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>

#include "qtop/matrix_cache.hpp"

namespace qtop {

// ---------------------------------------------------------------- RepVector / RepMatrix

namespace {
int ledger_mod(const PrimeContext& ctx, long k) {
  const long m = 4L * ctx.p();
  return static_cast<int>(((k % m) + m) % m);
}
}  // namespace

RepVector::RepVector(std::vector<CycNum> num, int hexp, int kappa)
    : num_(std::move(num)), hexp_(hexp), kappa_(kappa) {
  normalize();
}

void RepVector::normalize() {
  while (hexp_ > 0 &&
         std::all_of(num_.begin(), num_.end(), [](const CycNum& x) { return divisible_by_h(x); })) {
    for (auto& x : num_)
      if (!x.is_zero()) x = div_h_exact(x);
    --hexp_;
  }
}

RepMatrix::RepMatrix(CycMatrix num, int hexp, int kappa,
                     std::shared_ptr<const ColoringBasis> basis)
    : num_(std::move(num)), hexp_(hexp), kappa_(0), basis_(std::move(basis)) {
  if (num_.rows() != num_.cols()) throw InvalidArgument("representation matrix must be square");
  if (basis_ && basis_->size() != num_.rows()) throw InvalidArgument("basis size mismatch");
  if (hexp_ < 0) throw InvalidArgument("negative h-denominator");
  kappa_ = ledger_mod(num_.context(), kappa);
  normalize();
}

RepMatrix RepMatrix::identity(std::shared_ptr<const ColoringBasis> basis) {
  const PrimeContext& ctx = PrimeContext::get(basis->p());
  CycMatrix id = CycMatrix::identity(ctx, basis->size());
  return RepMatrix(std::move(id), 0, 0, std::move(basis));
}

void RepMatrix::normalize() {
  while (hexp_ > 0 && num_.all_divisible_by_h()) {
    num_.divide_by_h();
    --hexp_;
  }
}

RepVector RepMatrix::column(size_t j) const { return RepVector(num_.column(j), hexp_, kappa_); }

RepMatrix operator*(const RepMatrix& a, const RepMatrix& b) {
  if (a.basis_ && b.basis_ && a.basis_ != b.basis_ && !(*a.basis_ == *b.basis_)) {
    throw InvalidArgument("matrices are expressed in different bases");
  }
  return RepMatrix(a.num_ * b.num_, a.hexp_ + b.hexp_, a.kappa_ + b.kappa_,
                   a.basis_ ? a.basis_ : b.basis_);
}

RepVector RepMatrix::operator*(const RepVector& v) const {
  return RepVector(num_.apply(v.num_), hexp_ + v.hexp_, kappa_ + v.kappa_);
}

bool operator==(const RepMatrix& a, const RepMatrix& b) {
  return a.hexp_ == b.hexp_ && a.kappa_ == b.kappa_ && a.num_ == b.num_;
}

std::optional<int> phase_between(const RepMatrix& a, const RepMatrix& b) {
  if (a.hexp_ != b.hexp_ || a.dim() != b.dim()) return std::nullopt;
  const PrimeContext& ctx = a.context();
  std::optional<int> t;
  for (size_t k = 0; k < a.num_.data().size(); ++k) {
    const CycNum& x = a.num_.data()[k];
    const CycNum& y = b.num_.data()[k];
    if (y.is_zero() || x.is_zero()) {
      if (!(x.is_zero() && y.is_zero())) return std::nullopt;
      continue;
    }
    if (!t) {
      t = phase_between(x, y);
      if (!t) return std::nullopt;
    } else if (!(x == ctx.kappa_power(*t) * y)) {
      return std::nullopt;
    }
  }
  if (!t) t = 0;
  return ledger_mod(ctx, *t + a.kappa_ - b.kappa_);
}

bool RepMatrix::is_identity() const {
  return hexp_ == 0 && kappa_ == 0 && num_ == CycMatrix::identity(context(), dim());
}

// ---------------------------------------------------------------- words

std::string Generator::name() const {
  const char k = kind == CurveKind::A ? 'a' : kind == CurveKind::B ? 'b' : 'c';
  std::string s = std::string(1, k) + std::to_string(index);
  if (power == -1) s += "^-1";
  return s;
}

int MCGWord::min_genus() const {
  int g = 0;
  for (const auto& t : tokens) g = std::max(g, t.kind == CurveKind::C ? t.index + 1 : t.index);
  return g;
}

std::string MCGWord::to_string() const {
  std::string s;
  for (const auto& t : tokens) {
    if (!s.empty()) s += " ";
    s += t.name();
  }
  return s;
}

MCGWord parse_word(const std::string& text) {
  MCGWord w;
  size_t i = 0;
  const size_t n = text.size();
  auto fail = [&](const std::string& msg, size_t pos) {
    throw ParseError(msg, 1, static_cast<int>(pos) + 1);
  };
  while (i < n) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    const size_t start = i;
    const char c = text[i];
    CurveKind kind;
    if (c == 'a') {
      kind = CurveKind::A;
    } else if (c == 'b') {
      kind = CurveKind::B;
    } else if (c == 'c') {
      kind = CurveKind::C;
    } else {
      fail(std::string("unexpected character '") + c + "' in word", i);
    }
    ++i;
    size_t digits = i;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == digits) fail("expected a handle index after the curve letter", i);
    const int index = std::stoi(text.substr(digits, i - digits));
    if (index < 1) fail("handle indices start at 1", digits);
    long power = 1;
    if (i < n && text[i] == '^') {
      ++i;
      size_t ps = i;
      if (i < n && (text[i] == '-' || text[i] == '+')) ++i;
      size_t pd = i;
      while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == pd) fail("expected an integer exponent", ps);
      power = std::stol(text.substr(ps, i - ps));
      if (power == 0) fail("zero exponent", ps);
    }
    if (i < n && !std::isspace(static_cast<unsigned char>(text[i]))) {
      fail("tokens must be separated by whitespace", i);
    }
    (void)start;
    for (long k = 0; k < std::labs(power); ++k) {
      w.tokens.push_back({kind, index, power > 0 ? 1 : -1});
    }
  }
  return w;
}

MCGWord inverse(const MCGWord& w) {
  MCGWord out;
  for (auto it = w.tokens.rbegin(); it != w.tokens.rend(); ++it) out.tokens.push_back(it->inverse());
  return out;
}

MCGWord concat(const MCGWord& a, const MCGWord& b) {
  MCGWord out = a;
  out.tokens.insert(out.tokens.end(), b.tokens.begin(), b.tokens.end());
  return out;
}

MCGWord block_embed(const MCGWord& w, int offset) {
  if (offset < 0) throw InvalidArgument("negative block offset");
  MCGWord out = w;
  for (auto& t : out.tokens) t.index += offset;
  return out;
}

void check_word(const MCGWord& w, int genus) {
  for (const auto& t : w.tokens) {
    const int limit = t.kind == CurveKind::C ? genus - 1 : genus;
    if (t.index < 1 || t.index > limit) {
      throw InvalidArgument("generator " + t.name() + " is not defined in genus " +
                            std::to_string(genus));
    }
  }
}

// ---------------------------------------------------------------- homology

IntMatrix symplectic_action(const MCGWord& w, int genus) {
  check_word(w, genus);
  const int g = genus;
  IntMatrix f = int_identity(2 * g);
  // omega(x, y) = sum_i x_{m_i} y_{l_i} - x_{l_i} y_{m_i}
  auto omega = [g](const std::vector<Integer>& x, const std::vector<Integer>& y) {
    Integer s = 0;
    for (int i = 0; i < g; ++i) s += x[i] * y[g + i] - x[g + i] * y[i];
    return s;
  };
  for (const auto& t : w.tokens) {
    std::vector<Integer> c(2 * g, 0);
    if (t.kind == CurveKind::A) {
      c[t.index - 1] = 1;
    } else if (t.kind == CurveKind::B) {
      c[g + t.index - 1] = 1;
    } else {
      c[t.index - 1] = 1;
      c[t.index] = -1;
    }
    // f <- T_c^{power} f, column by column.
    for (int j = 0; j < 2 * g; ++j) {
      std::vector<Integer> x(2 * g);
      for (int i = 0; i < 2 * g; ++i) x[i] = f[i][j];
      Integer s = omega(c, x) * t.power;
      for (int i = 0; i < 2 * g; ++i) f[i][j] = x[i] + s * c[i];
    }
  }
  return f;
}

IntMatrix word_to_sl2z(const MCGWord& w) { return symplectic_action(w, 1); }

MCGWord lens_word(long n, long q0) {
  if (std::gcd(n, q0) != 1) {
    throw InvalidArgument("lens space parameters must be coprime (or (0, 1))");
  }
  // Write (q0, n) = M_1 M_2 ... M_r e_1 with each M_k a twist matrix.
  std::vector<Generator> mats;
  auto push = [&](CurveKind k, long e) {
    for (long i = 0; i < std::labs(e); ++i) mats.push_back({k, 1, e > 0 ? 1 : -1});
  };
  long x = q0, y = n;
  while (!(y == 0 && (x == 1 || x == -1)) && x != 0) {
    if (std::labs(y) >= std::labs(x)) {
      // (x, y) = T_b^{-j} (x, y - j x)
      const long j = y / x;
      push(CurveKind::B, -j);
      y -= j * x;
    } else {
      // (x, y) = T_a^{k} (x - k y, y)
      const long k = x / y;
      push(CurveKind::A, k);
      x -= k * y;
    }
  }
  if (x == 0) {
    // (0, -1) = S e_1 and (0, 1) = S^{-1} e_1 with S = T_a T_b T_a.
    const int s = (y == -1) ? 1 : -1;
    for (CurveKind k : {CurveKind::A, CurveKind::B, CurveKind::A}) mats.push_back({k, 1, s});
  } else if (x == -1) {
    for (int r = 0; r < 2; ++r)
      for (CurveKind k : {CurveKind::A, CurveKind::B, CurveKind::A}) mats.push_back({k, 1, 1});
  }
  MCGWord w;
  w.tokens.assign(mats.rbegin(), mats.rend());
  return w;
}

HomologyData heegaard_homology(const MCGWord& w, int genus) {
  HomologyData out;
  if (genus == 0) return out;
  IntMatrix f = symplectic_action(w, genus);
  // H_1 = Z<l_i> / (l-parts of f(m_j)).
  IntMatrix rel(genus, std::vector<Integer>(genus));
  for (int i = 0; i < genus; ++i)
    for (int j = 0; j < genus; ++j) rel[i][j] = f[genus + i][j];
  CokernelData ck = cokernel(rel);
  out.b1 = ck.free_rank;
  out.torsion = ck.torsion;
  out.invariants = ck.invariants;
  return out;
}

HomologyData mapping_torus_homology(const MCGWord& w, int genus) {
  IntMatrix f = symplectic_action(w, genus);
  for (int i = 0; i < 2 * genus; ++i) f[i][i] -= 1;
  CokernelData ck = cokernel(f);
  HomologyData out;
  out.b1 = 1 + ck.free_rank;
  out.torsion = ck.torsion;
  out.invariants = ck.invariants;
  return out;
}

// ---------------------------------------------------------------- construction

namespace {

std::string gen_key(const Generator& g) { return g.name(); }

}  // namespace

SparseCycMatrix flip_matrix(const Recoupling& rc, const PlanarGraph& before, int e,
                            const ColoringBasis& b_old, const ColoringBasis& b_new) {
  const auto fd = before.flip_neighbors(e);
  SparseCycMatrix m(rc.context(), b_new.size(), b_old.size());
  for (size_t j = 0; j < b_old.size(); ++j) {
    const std::vector<int>& c = b_old[j];
    for (int i : rc.even_colors()) {
      if (!rc.admissible(c[fd.a], c[fd.d], i) || !rc.admissible(c[fd.b], c[fd.c], i)) continue;
      std::vector<int> c2 = c;
      c2[e] = i;
      const long row = b_new.index_of(c2);
      if (row < 0) throw InvariantViolation("flipped coloring missing from the new basis");
      m.column(j).push_back(
          {static_cast<size_t>(row), rc.fmove(c[fd.a], c[fd.b], c[fd.c], c[fd.d], c[e], i)});
    }
  }
  return m;
}

namespace {


// Face labels: 1..g for the faces enclosed by loops, 0 elsewhere.
std::map<HalfEdge, int> initial_labels(const Spine& s) {
  std::map<HalfEdge, int> lab;
  const auto faces = s.graph().faces();
  std::vector<int> face_label(faces.walks.size(), 0);
  for (int i = 1; i <= s.genus(); ++i) face_label[faces.face_of.at(s.hole_walk(i)[0])] = i;
  for (const auto& [h, f] : faces.face_of) lab[h] = face_label[f];
  return lab;
}

// Labels after flipping e: faces persist, identified through the
// half-edges of the other edges.
std::map<HalfEdge, int> transfer_labels(const PlanarGraph& after, int e,
                                        const std::map<HalfEdge, int>& old) {
  const auto faces = after.faces();
  std::vector<int> face_label(faces.walks.size(), -1);
  for (const auto& [h, f] : faces.face_of) {
    if (h.edge == e) continue;
    const int l = old.at(h);
    if (face_label[f] != -1 && face_label[f] != l) {
      throw InvariantViolation("face labels disagree after a flip");
    }
    face_label[f] = l;
  }
  std::map<HalfEdge, int> lab;
  for (const auto& [h, f] : faces.face_of) lab[h] = face_label[f];
  return lab;
}

}  // namespace

struct Representation::Chain {
  std::vector<int> flips;                       // edges in flip order
  std::vector<SparseCycMatrix> forward;         // basis k -> basis k+1
  std::vector<SparseCycMatrix> backward;        // basis k+1 -> basis k
  std::shared_ptr<const ColoringBasis> final_basis;
  std::vector<int> c_edges;                     // c_edges[i-1] for c_i
  std::unique_ptr<CycMatrix> to_chain;          // product of forward moves
};

const Representation::Chain& Representation::chain() const {
  // Called with mu_ held.
  if (chain_) return *chain_;
  auto ch = std::make_unique<Chain>();
  const int g = genus_;
  if (g == 2) {
    ch->flips = {spine_.stick_edge(1)};
  } else {
    ch->flips = {spine_.stick_edge(2), spine_.stick_edge(1)};
    for (int k = 3; k <= g - 1; ++k) {
      ch->flips.push_back(spine_.stick_edge(k));
      ch->flips.push_back(spine_.path_edge(k - 2));
    }
    ch->flips.push_back(spine_.stick_edge(g));
  }
  PlanarGraph graph = spine_.graph();
  auto labels = initial_labels(spine_);
  std::shared_ptr<const ColoringBasis> cur = basis_;
  for (int e : ch->flips) {
    PlanarGraph next = graph;
    next.flip(e);
    auto nb = std::make_shared<ColoringBasis>(p(), genus_, even_colorings(*rc_, next));
    if (nb->size() != cur->size()) throw InvariantViolation("flip changed the basis size");
    ch->forward.push_back(flip_matrix(*rc_, graph, e, *cur, *nb));
    ch->backward.push_back(flip_matrix(*rc_, next, e, *nb, *cur));
    labels = transfer_labels(next, e, labels);
    graph = std::move(next);
    cur = nb;
  }
  ch->final_basis = cur;
  for (int i = 1; i < g; ++i) {
    int found = -1;
    for (int e = 0; e < graph.num_edges() && found < 0; ++e) {
      const int l0 = labels.at({e, 0}), l1 = labels.at({e, 1});
      if (std::min(l0, l1) == i && std::max(l0, l1) == i + 1) found = e;
    }
    if (found < 0) throw InvariantViolation("chain spine lacks an edge between adjacent holes");
    ch->c_edges.push_back(found);
  }
  CycMatrix b = CycMatrix::identity(rc_->context(), dim());
  for (const auto& f : ch->forward) b = f * b;
  ch->to_chain = std::make_unique<CycMatrix>(std::move(b));
  chain_ = std::move(ch);
  return *chain_;
}

namespace {

struct SharedRegistry {
  std::mutex mu;
  std::map<std::pair<int, int>, std::unique_ptr<Representation>> reps;
  std::shared_ptr<const MatrixCache> cache;
};

SharedRegistry& shared_registry() {
  static SharedRegistry r;
  return r;
}

}  // namespace

const Representation& Representation::get(int p, int genus) {
  SharedRegistry& r = shared_registry();
  std::lock_guard<std::mutex> lock(r.mu);
  auto& slot = r.reps[{p, genus}];
  if (!slot) slot = std::make_unique<Representation>(p, genus, r.cache);
  return *slot;
}

void Representation::set_shared_cache(std::shared_ptr<const MatrixCache> cache) {
  SharedRegistry& r = shared_registry();
  std::lock_guard<std::mutex> lock(r.mu);
  r.cache = std::move(cache);
}

Representation::Representation(int p, int genus, std::shared_ptr<const MatrixCache> cache)
    : rc_(&Recoupling::get(p)),
      genus_(genus),
      spine_(Spine::canonical(genus)),
      basis_(enumerate_even_colorings(genus, p)),
      cache_(std::move(cache)) {
  if (genus < 0) throw InvalidArgument("negative genus");
}

Representation::~Representation() = default;

SparseCycMatrix Representation::curve_operator(int i) const {
  const Recoupling& rc = *rc_;
  const ColoringBasis& basis = *basis_;
  const PrimeContext& ctx = rc.context();
  SparseCycMatrix z(ctx, dim(), dim());
  const int loop = spine_.loop_edge(i);
  if (genus_ == 1) {
    for (size_t j = 0; j < dim(); ++j)
      for (int y : rc.even_colors())
        if (rc.admissible(2, basis[j][loop], y)) {
          z.column(j).push_back({static_cast<size_t>(basis.index_of({y})), ctx.one()});
        }
    return z;
  }
  // The loop bounds a one-edge face; its corner is the loop vertex, whose
  // third edge is the stick.
  const PlanarGraph& g = spine_.graph();
  const HalfEdge h = spine_.hole_walk(i)[0];
  const int v = g.vertex_of({h.edge, 1 - h.end});
  int stick = -1;
  for (const HalfEdge& r : g.rotation(v))
    if (r.edge != loop) stick = r.edge;
  for (size_t j = 0; j < dim(); ++j) {
    const std::vector<int>& c = basis[j];
    const int x = c[loop], s = c[stick];
    for (int y : rc.even_colors()) {
      if (!rc.admissible(2, x, y) || !rc.admissible(y, y, s)) continue;
      std::vector<int> c2 = c;
      c2[loop] = y;
      const long row = basis.index_of(c2);
      if (row < 0) throw InvariantViolation("curve operator left the basis");
      CycNum val = rc.delta(y) * rc.theta_inverse(2, x, y) * rc.tet(y, y, 2, x, x, s) *
                   rc.theta_inverse(y, y, s);
      z.column(j).push_back({static_cast<size_t>(row), std::move(val)});
    }
  }
  return z;
}

RepMatrix twist_from_curve_operator(const Recoupling& rc, const SparseCycMatrix& z, int power,
                                    std::shared_ptr<const ColoringBasis> basis) {
  const PrimeContext& ctx = rc.context();
  const std::vector<int> ks = rc.even_colors();
  const size_t m = ks.size();
  std::vector<CycNum> nodes, values;
  for (int k : ks) {
    nodes.push_back(rc.curve_eigenvalue(2, k));
    values.push_back(power > 0 ? rc.twist_mu(k) : rc.twist_mu_inverse(k));
  }
  // Lagrange interpolation in the monomial basis over O[1/h].
  std::vector<LaurentCyc> coeff(m, LaurentCyc(ctx));
  for (size_t k = 0; k < m; ++k) {
    std::vector<CycNum> poly{ctx.one()};
    CycNum denom = ctx.one();
    for (size_t l = 0; l < m; ++l) {
      if (l == k) continue;
      std::vector<CycNum> next(poly.size() + 1, ctx.zero());
      for (size_t t = 0; t < poly.size(); ++t) {
        next[t + 1] += poly[t];
        next[t] -= poly[t] * nodes[l];
      }
      poly = std::move(next);
      denom *= nodes[k] - nodes[l];
    }
    const LaurentCyc scale = LaurentCyc(values[k]) * LaurentCyc(denom).inverse();
    for (size_t t = 0; t < m; ++t) coeff[t] += scale * LaurentCyc(poly[t]);
  }
  int e = 0;
  for (const auto& c : coeff) e = std::max(e, c.hexp());
  // h^e P(Z) by Horner's rule, entirely over O.
  const size_t n = z.cols();
  CycMatrix acc = CycMatrix::identity(ctx, n);
  acc *= coeff[m - 1].scaled_num(e);
  for (size_t t = m - 1; t-- > 0;) {
    acc = acc * z;
    acc.add_scaled_identity(coeff[t].scaled_num(e));
  }
  return RepMatrix(std::move(acc), e, 0, std::move(basis));
}

RepMatrix Representation::build_a(int i, int power) const {
  const int loop = spine_.loop_edge(i);
  std::vector<CycNum> diag;
  for (const auto& c : basis_->colorings()) {
    diag.push_back(power > 0 ? rc_->twist_mu(c[loop]) : rc_->twist_mu_inverse(c[loop]));
  }
  return RepMatrix(CycMatrix::diagonal(diag), 0, 0, basis_);
}

RepMatrix Representation::build_b(int i, int power) const {
  return twist_from_curve_operator(*rc_, curve_operator(i), power, basis_);
}

RepMatrix Representation::build_c(int i, int power) const {
  const Chain& ch = chain();
  const int e = ch.c_edges.at(i - 1);
  // D * B with D diagonal in the chain basis.
  CycMatrix x = *ch.to_chain;
  for (size_t r = 0; r < x.rows(); ++r) {
    const int col = (*ch.final_basis)[r][e];
    const CycNum& mu = power > 0 ? rc_->twist_mu(col) : rc_->twist_mu_inverse(col);
    for (size_t c = 0; c < x.cols(); ++c)
      if (!x(r, c).is_zero()) x(r, c) *= mu;
  }
  for (size_t k = ch.backward.size(); k-- > 0;) x = ch.backward[k] * x;
  return RepMatrix(std::move(x), 0, 0, basis_);
}

RepMatrix Representation::derive_generator(const Generator& g) const {
  check_word(MCGWord{{g}}, genus_);
  if (g.power != 1 && g.power != -1) throw InvalidArgument("generator power must be +1 or -1");
  switch (g.kind) {
    case CurveKind::A:
      return build_a(g.index, g.power);
    case CurveKind::B:
      return build_b(g.index, g.power);
    case CurveKind::C: {
      std::lock_guard<std::mutex> lock(mu_);
      return build_c(g.index, g.power);
    }
  }
  throw InvalidArgument("unknown generator");
}

const RepMatrix& Representation::generator(const Generator& g) const {
  const std::string key = gen_key(g);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = generators_.find(key);
    if (it != generators_.end()) return *it->second;
  }
  std::optional<RepMatrix> m;
  if (cache_) m = cache_->load(p(), genus_, g, basis_);
  if (!m) {
    m = derive_generator(g);
    if (cache_) cache_->store(p(), genus_, g, *m);
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto [it, inserted] = generators_.emplace(key, std::make_unique<RepMatrix>(std::move(*m)));
  return *it->second;
}

RepMatrix Representation::rho(const MCGWord& w) const {
  check_word(w, genus_);
  RepMatrix m = RepMatrix::identity(basis_);
  for (const auto& t : w.tokens) m = generator(t) * m;
  return m;
}

RepVector Representation::rho_column(const MCGWord& w, size_t col) const {
  check_word(w, genus_);
  if (col >= dim()) throw InvalidArgument("column index out of range");
  std::vector<CycNum> v(dim(), rc_->context().zero());
  v[col] = rc_->context().one();
  RepVector x(std::move(v), 0, 0);
  for (const auto& t : w.tokens) x = generator(t) * x;
  return x;
}

}  // namespace qtop
