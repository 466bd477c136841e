#pragma once

// Brute-force reference computations. Everything here works on raw integer
// tables with arithmetic mod p and shares no code with the library, so a test
// that compares the two is comparing independent derivations.

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

using Table = std::vector<std::vector<std::size_t>>;
using Map = std::vector<std::size_t>;

inline std::size_t inv(const Table& t, std::size_t a) {
  for (std::size_t b = 0; b < t.size(); ++b)
    if (t[a][b] == 0) return b;
  return t.size();
}

/// 𝒟(gh) = 𝒟(g)·g·𝒟(h)·g⁻¹ read straight off the table.
inline bool is_difference_operator(const Table& t, const Map& d) {
  const std::size_t m = t.size();
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t h = 0; h < m; ++h)
      if (d[t[g][h]] != t[t[t[d[g]][g]][d[h]]][inv(t, g)]) return false;
  return true;
}

inline bool is_endomorphism(const Table& t, const Map& f) {
  for (std::size_t g = 0; g < t.size(); ++g)
    for (std::size_t h = 0; h < t.size(); ++h)
      if (f[t[g][h]] != t[f[g]][f[h]]) return false;
  return true;
}

/// Every function {0..n-1} → {0..q-1}, by odometer; only sensible for tiny sizes.
inline std::vector<Map> all_maps_into(std::size_t n, std::size_t q) {
  std::vector<Map> out;
  Map f(n, 0);
  while (true) {
    out.push_back(f);
    std::size_t k = 0;
    while (k < n && ++f[k] == q) f[k++] = 0;
    if (k == n) break;
  }
  return out;
}

/// Every map G → G.
inline std::vector<Map> all_maps(std::size_t m) { return all_maps_into(m, m); }

/// All maps satisfying `rel` on every pair, by backtracking: a pair (g,h) is
/// tested as soon as g, h and gh have images.
inline std::vector<Map> solve_pairwise(const Table& t,
                                       const std::function<bool(const Table&, const Map&, std::size_t, std::size_t)>& rel) {
  const std::size_t m = t.size();
  std::vector<Map> out;
  Map f(m, m);
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == m) {
      out.push_back(f);
      return;
    }
    for (std::size_t v = 0; v < m; ++v) {
      f[k] = v;
      bool ok = true;
      for (std::size_t g = 0; g <= k && ok; ++g)
        for (std::size_t h = 0; h <= k && ok; ++h)
          if (t[g][h] <= k && (g == k || h == k || t[g][h] == k)) ok = rel(t, f, g, h);
      if (ok) go(k + 1);
    }
    f[k] = m;
  };
  go(0);
  return out;
}

inline std::vector<Map> all_difference_operators(const Table& t) {
  return solve_pairwise(t, [](const Table& tt, const Map& d, std::size_t g, std::size_t h) {
    return d[tt[g][h]] == tt[tt[tt[d[g]][g]][d[h]]][inv(tt, g)];
  });
}

inline std::vector<Map> all_endomorphisms(const Table& t) {
  return solve_pairwise(t, [](const Table& tt, const Map& f, std::size_t g, std::size_t h) {
    return f[tt[g][h]] == tt[f[g]][f[h]];
  });
}

inline std::int64_t mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

/// Unnormalized n-cochains G^n → F_p (V one-dimensional, G acting by the
/// scalars `act`), encoded as base-p integers over tuples in lexicographic order.
struct CochainSpace {
  const Table& t;
  std::vector<std::int64_t> act;
  std::int64_t p;

  std::size_t tuples(int n) const {
    std::size_t c = 1;
    for (int k = 0; k < n; ++k) c *= t.size();
    return c;
  }
  std::vector<std::int64_t> decode(std::uint64_t code, int n) const {
    std::vector<std::int64_t> v(tuples(n));
    for (auto& x : v) {
      x = static_cast<std::int64_t>(code % static_cast<std::uint64_t>(p));
      code /= static_cast<std::uint64_t>(p);
    }
    return v;
  }
  std::size_t index(const std::vector<std::size_t>& g) const {
    std::size_t r = 0;
    for (auto x : g) r = r * t.size() + x;
    return r;
  }
  /// (dⁿf)(g₀..gₙ) = g₀·f(g₁..gₙ) + Σ(−1)ⁱ f(..gᵢ₋₁gᵢ..) + (−1)ⁿ⁺¹ f(g₀..gₙ₋₁).
  std::vector<std::int64_t> coboundary(const std::vector<std::int64_t>& f, int n) const {
    std::vector<std::int64_t> out(tuples(n + 1));
    for (std::size_t r = 0; r < out.size(); ++r) {
      std::vector<std::size_t> g(static_cast<std::size_t>(n + 1));
      std::size_t q = r;
      for (std::size_t k = g.size(); k-- > 0;) {
        g[k] = q % t.size();
        q /= t.size();
      }
      std::int64_t acc = act[g[0]] * f[index(std::vector<std::size_t>(g.begin() + 1, g.end()))];
      for (int i = 1; i <= n; ++i) {
        std::vector<std::size_t> a;
        for (int k = 0; k < i - 1; ++k) a.push_back(g[static_cast<std::size_t>(k)]);
        a.push_back(t[g[static_cast<std::size_t>(i - 1)]][g[static_cast<std::size_t>(i)]]);
        for (int k = i + 1; k <= n; ++k) a.push_back(g[static_cast<std::size_t>(k)]);
        acc += (i % 2 ? -1 : 1) * f[index(a)];
      }
      acc += ((n + 1) % 2 ? -1 : 1) * f[index(std::vector<std::size_t>(g.begin(), g.end() - 1))];
      out[r] = mod(acc, p);
    }
    return out;
  }
};

/// dim Hⁿ(G, F_p) by counting: every unnormalized n-cochain is enumerated,
/// cocycles are counted, and coboundaries are collected as a set from every
/// (n−1)-cochain (degree 0 included). Returns log_p(|Zⁿ| / |Bⁿ|).
inline int cohomology_dim_by_enumeration(const Table& t, const std::vector<std::int64_t>& act, std::int64_t p, int n) {
  const CochainSpace cs{t, act, p};
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < cs.tuples(n); ++k) total *= static_cast<std::uint64_t>(p);
  std::uint64_t cocycles = 0;
  for (std::uint64_t c = 0; c < total; ++c) {
    const auto df = cs.coboundary(cs.decode(c, n), n);
    bool zero = true;
    for (auto x : df) zero = zero && x == 0;
    cocycles += zero;
  }
  std::uint64_t lower = 1;
  for (std::size_t k = 0; k < cs.tuples(n - 1); ++k) lower *= static_cast<std::uint64_t>(p);
  std::set<std::vector<std::int64_t>> boundaries;
  for (std::uint64_t c = 0; c < lower; ++c) boundaries.insert(cs.coboundary(cs.decode(c, n - 1), n - 1));
  std::uint64_t ratio = cocycles / boundaries.size();
  int dim = 0;
  while (ratio > 1) {
    ratio /= static_cast<std::uint64_t>(p);
    ++dim;
  }
  return dim;
}

/// Order of each element, by repeated multiplication.
inline std::size_t element_order(const Table& t, std::size_t g) {
  std::size_t x = g, k = 1;
  while (x != 0) {
    x = t[x][g];
    ++k;
  }
  return k;
}

/// Adjugate of a 2×2 integer matrix, row-major {a, b, c, d}.
inline std::vector<long> adjugate2(const std::vector<long>& m) { return {m[3], -m[1], -m[2], m[0]}; }

/// One-dimensional abelian extension data over F_p on the carrier G × F_p,
/// element (g,u) at index g·p + u. alpha[g][h] and beta[g] are full tables
/// (zero on the identity for normalized cochains).
struct RawExtension {
  Table table;
  Map d;
};

inline RawExtension raw_extension(const Table& t, const Map& d, const std::vector<std::int64_t>& act, std::int64_t tv,
                                  std::int64_t p, const std::vector<std::vector<std::int64_t>>& alpha,
                                  const std::vector<std::int64_t>& beta) {
  const std::size_t m = t.size(), q = static_cast<std::size_t>(p);
  RawExtension e{Table(m * q, std::vector<std::size_t>(m * q)), Map(m * q)};
  for (std::size_t g = 0; g < m; ++g)
    for (std::size_t u = 0; u < q; ++u) {
      const auto ui = static_cast<std::int64_t>(u);
      e.d[g * q + u] = d[g] * q + static_cast<std::size_t>(mod(tv * ui + ui - act[d[g]] * ui + beta[g], p));
      for (std::size_t h = 0; h < m; ++h)
        for (std::size_t v = 0; v < q; ++v)
          e.table[g * q + u][h * q + v] =
              t[g][h] * q + static_cast<std::size_t>(mod(ui + act[g] * static_cast<std::int64_t>(v) + alpha[g][h], p));
    }
  return e;
}

/// Associativity, identity 0, and every row a permutation.
inline bool is_group(const Table& t) {
  const std::size_t m = t.size();
  for (std::size_t a = 0; a < m; ++a) {
    if (t[0][a] != a || t[a][0] != a) return false;
    std::vector<bool> seen(m);
    for (std::size_t b = 0; b < m; ++b) seen[t[a][b]] = true;
    for (bool x : seen)
      if (!x) return false;
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) return false;
  }
  return true;
}

/// Is the map φ a homomorphism of difference groups (t1, d1) → (t2, d2)?
inline bool is_difference_hom(const RawExtension& a, const RawExtension& b, const Map& phi) {
  for (std::size_t x = 0; x < phi.size(); ++x) {
    if (phi[a.d[x]] != b.d[phi[x]]) return false;
    for (std::size_t y = 0; y < phi.size(); ++y)
      if (phi[a.table[x][y]] != b.table[phi[x]][phi[y]]) return false;
  }
  return true;
}

/// Classes of extensions under the shears (g,u) ↦ (g, u + η(g)), η(e) = 0,
/// by union-find over every pair of inputs and every η.
inline std::size_t shear_classes(const std::vector<RawExtension>& exts, std::size_t m, std::int64_t p) {
  const std::size_t q = static_cast<std::size_t>(p);
  std::vector<std::size_t> parent(exts.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
  std::vector<Map> shears;
  for (const auto& eta : all_maps_into(m - 1, q)) {
    Map phi(m * q);
    for (std::size_t g = 0; g < m; ++g)
      for (std::size_t u = 0; u < q; ++u) phi[g * q + u] = g * q + (u + (g == 0 ? 0 : eta[g - 1])) % q;
    shears.push_back(std::move(phi));
  }
  for (std::size_t i = 0; i < exts.size(); ++i)
    for (std::size_t j = i + 1; j < exts.size(); ++j) {
      if (find(i) == find(j)) continue;
      for (const auto& phi : shears)
        if (is_difference_hom(exts[i], exts[j], phi)) {
          parent[find(j)] = find(i);
          break;
        }
    }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < exts.size(); ++i) roots.insert(find(i));
  return roots.size();
}

}  // namespace oracle
