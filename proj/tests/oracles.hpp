#pragma once
// Independent reference computations for the tests: floating point
// evaluation at the chosen roots of unity, Temperley-Lieb diagrams with
// Jones-Wenzl projectors, and a float Verlinde sum.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <random>
#include <vector>

#include "qtop/cycring.hpp"

namespace oracle {

using cplx = std::complex<double>;

inline cplx root_q(int p) { return std::polar(1.0, 2.0 * std::numbers::pi / p); }

// The complex number represented by x, with q = exp(2 pi i / p).
inline cplx evaluate(const qtop::CycNum& x) {
  const int p = x.context().p();
  const cplx q = root_q(p);
  cplx re = 0, im = 0, pw = 1;
  const auto r = x.re();
  const auto m = x.im();
  for (size_t k = 0; k < r.size(); ++k, pw *= q) {
    re += r[k].get_d() * pw;
    if (k < m.size()) im += m[k].get_d() * pw;
  }
  return re + cplx(0, 1) * im;
}

inline cplx evaluate(const qtop::LaurentCyc& x) {
  const cplx h = 1.0 - root_q(x.context().p());
  return evaluate(x.num()) / std::pow(h, x.hexp());
}

inline bool close(cplx a, cplx b, double tol = 1e-7) {
  return std::abs(a - b) <= tol * std::max(1.0, std::abs(b));
}

// A = -q^{(p+1)/2}, so A^2 = q.
inline cplx value_A(int p) { return -std::pow(root_q(p), (p + 1) / 2); }

inline qtop::CycNum random_element(const qtop::PrimeContext& ctx, std::mt19937_64& rng,
                                   int bound = 20) {
  std::vector<qtop::Integer> re(ctx.length()), im;
  for (auto& c : re) c = static_cast<long>(rng() % (2 * bound + 1)) - bound;
  if (ctx.needs_i() && rng() % 2 == 0) {
    im.resize(ctx.length());
    for (auto& c : im) c = static_cast<long>(rng() % (2 * bound + 1)) - bound;
  }
  return qtop::CycNum::from_coefficients(ctx, re, im);
}

// Float loop value Delta_n = (-1)^n (A^{2n+2} - A^{-2n-2}) / (A^2 - A^{-2}).
inline cplx delta(int p, int n) {
  const cplx a = value_A(p);
  const cplx v = (std::pow(a, 2 * n + 2) - std::pow(a, -2 * n - 2)) / (a * a - 1.0 / (a * a));
  return n % 2 ? -v : v;
}

// Dimension of the genus-g space as the float sum over even colors of
// (Delta_c eta)^{2-2g} with eta^{-2} = sum of Delta_c^2.
inline double verlinde_float(int g, int p) {
  double total = 0;
  for (int c = 0; c <= p - 3; c += 2) total += std::real(delta(p, c) * delta(p, c));
  const double eta2 = 1.0 / total;
  double sum = 0;
  for (int c = 0; c <= p - 3; c += 2) {
    const double s = std::real(delta(p, c)) * std::sqrt(eta2);
    sum += std::pow(s, 2 - 2 * g);
  }
  return sum;
}

// Temperley-Lieb diagrams from `bottom` points to `top` points. Points are
// numbered bottom 0..b-1 left to right, then top b..b+t-1 left to right;
// match[k] is the partner of point k.
struct Diagram {
  int bottom = 0, top = 0;
  std::vector<int> match;
  friend bool operator<(const Diagram& x, const Diagram& y) {
    return std::tie(x.bottom, x.top, x.match) < std::tie(y.bottom, y.top, y.match);
  }
};

using Element = std::map<Diagram, cplx>;

inline Diagram identity_diagram(int n) {
  Diagram d{n, n, std::vector<int>(2 * n)};
  for (int k = 0; k < n; ++k) {
    d.match[k] = n + k;
    d.match[n + k] = k;
  }
  return d;
}

// x on top of y (y first): y.top must equal x.bottom. Returns the diagram
// and the number of closed loops.
inline std::pair<Diagram, int> compose(const Diagram& x, const Diagram& y) {
  const int m = y.top;
  // Nodes: y points 0..yb+m-1, x points offset by yb+m.
  const int yn = y.bottom + y.top;
  auto partner = [&](int node) {
    return node < yn ? y.match[node] : yn + x.match[node - yn];
  };
  // Middle points: y top k (node y.bottom + k) glued to x bottom k (node yn + k).
  auto glue = [&](int node) -> int {
    if (node < yn && node >= y.bottom) return yn + (node - y.bottom);
    if (node >= yn && node - yn < m) return y.bottom + (node - yn);
    return -1;
  };
  Diagram out{y.bottom, x.top, std::vector<int>(y.bottom + x.top, -1)};
  auto outer = [&](int node) -> int {
    if (node < y.bottom) return node;
    if (node >= yn + m) return y.bottom + (node - yn - m);
    return -1;
  };
  std::vector<bool> seen(yn + x.bottom + x.top, false);
  for (int start = 0; start < yn + x.bottom + x.top; ++start) {
    if (outer(start) < 0 || seen[start]) continue;
    int node = start;
    seen[node] = true;
    int cur = partner(node);
    while (outer(cur) < 0) {
      seen[cur] = true;
      const int g = glue(cur);
      seen[g] = true;
      cur = partner(g);
    }
    seen[cur] = true;
    out.match[outer(start)] = outer(cur);
    out.match[outer(cur)] = outer(start);
  }
  int loops = 0;
  for (int start = 0; start < yn + x.bottom + x.top; ++start) {
    if (seen[start] || glue(start) < 0) continue;
    ++loops;
    int cur = start;
    while (!seen[cur]) {
      seen[cur] = true;
      const int pa = partner(cur);
      seen[pa] = true;
      cur = glue(pa);
    }
  }
  return {out, loops};
}

inline Element multiply(const Element& x, const Element& y, cplx loop) {
  Element out;
  for (const auto& [dx, cx] : x) {
    for (const auto& [dy, cy] : y) {
      auto [d, l] = compose(dx, dy);
      out[d] += cx * cy * std::pow(loop, l);
    }
  }
  return out;
}

// Side by side: x on the left.
inline Diagram tensor(const Diagram& x, const Diagram& y) {
  Diagram d{x.bottom + y.bottom, x.top + y.top, std::vector<int>(x.bottom + y.bottom + x.top + y.top)};
  auto map_x = [&](int k) { return k < x.bottom ? k : k - x.bottom + x.bottom + y.bottom; };
  auto map_y = [&](int k) {
    return k < y.bottom ? x.bottom + k : x.bottom + y.bottom + x.top + (k - y.bottom);
  };
  for (int k = 0; k < x.bottom + x.top; ++k) d.match[map_x(k)] = map_x(x.match[k]);
  for (int k = 0; k < y.bottom + y.top; ++k) d.match[map_y(k)] = map_y(y.match[k]);
  return d;
}

inline Element tensor(const Element& x, const Element& y) {
  Element out;
  for (const auto& [dx, cx] : x)
    for (const auto& [dy, cy] : y) out[tensor(dx, dy)] += cx * cy;
  return out;
}

inline Element single(const Diagram& d) { return Element{{d, 1.0}}; }

// e_k on n strands joins strands k, k+1 (0-based) with a cap and a cup.
inline Diagram generator_e(int n, int k) {
  Diagram d = identity_diagram(n);
  d.match[k] = k + 1;
  d.match[k + 1] = k;
  d.match[n + k] = n + k + 1;
  d.match[n + k + 1] = n + k;
  return d;
}

// Jones-Wenzl projector by the Wenzl recursion, with loop value
// delta = -A^2 - A^{-2}.
inline Element jones_wenzl(int n, cplx a) {
  const cplx loop = -a * a - 1.0 / (a * a);
  if (n == 0) return single(Diagram{0, 0, {}});
  Element cur = single(identity_diagram(1));
  std::vector<cplx> d{1.0, loop};
  for (int m = 2; m <= n; ++m) {
    d.push_back(loop * d[m - 1] - d[m - 2]);
    const Element ext = tensor(cur, single(identity_diagram(1)));
    Element t = multiply(multiply(ext, single(generator_e(m, m - 2)), loop), ext, loop);
    Element next = ext;
    const cplx r = d[m - 2] / d[m - 1];
    for (const auto& [dg, c] : t) next[dg] -= r * c;
    cur = std::move(next);
  }
  return cur;
}

// Nested caps taking the middle 2i of left + 2i + right points down to
// left + right points (as a diagram from bottom to top).
inline Diagram nested_caps(int left, int i, int right) {
  const int b = left + 2 * i + right, t = left + right;
  Diagram d{b, t, std::vector<int>(b + t)};
  for (int k = 0; k < left; ++k) {
    d.match[k] = b + k;
    d.match[b + k] = k;
  }
  for (int k = 0; k < i; ++k) {
    d.match[left + k] = left + 2 * i - 1 - k;
    d.match[left + 2 * i - 1 - k] = left + k;
  }
  for (int k = 0; k < right; ++k) {
    d.match[left + 2 * i + k] = b + left + k;
    d.match[b + left + k] = left + 2 * i + k;
  }
  return d;
}

inline Diagram flipped(const Diagram& x) {
  Diagram d{x.top, x.bottom, std::vector<int>(x.top + x.bottom)};
  auto f = [&](int k) { return k < x.bottom ? x.top + k : k - x.bottom; };
  for (int k = 0; k < x.bottom + x.top; ++k) d.match[f(k)] = f(x.match[k]);
  return d;
}

// Markov closure of an endomorphism: each diagram contributes loop^{cycles}.
inline cplx closure(const Element& x, cplx loop) {
  cplx s = 0;
  for (const auto& [d, c] : x) {
    const int n = d.bottom;
    std::vector<bool> seen(2 * n, false);
    int loops = 0;
    for (int k = 0; k < 2 * n; ++k) {
      if (seen[k]) continue;
      ++loops;
      int cur = k;
      while (!seen[cur]) {
        seen[cur] = true;
        const int pa = d.match[cur];
        seen[pa] = true;
        cur = pa < n ? pa + n : pa - n;  // closing strands join top j to bottom j
      }
    }
    s += c * std::pow(loop, loops);
  }
  return s;
}

// Theta network: trace of (P_a (x) P_b) composed with the fusion through
// P_c, where i = (a + b - c) / 2 strands pass between the a and b edges.
inline cplx theta(int a, int b, int c, cplx A) {
  const cplx loop = -A * A - 1.0 / (A * A);
  const int i = (a + b - c) / 2;
  const Element pab = tensor(jones_wenzl(a, A), jones_wenzl(b, A));
  const Diagram cap = nested_caps(a - i, i, b - i);
  const Element w = multiply(single(flipped(cap)), multiply(jones_wenzl(c, A), single(cap), loop), loop);
  return closure(multiply(pab, w, loop), loop);
}

}  // namespace oracle
