#pragma once

// Cohomology of explicit cochain complexes given by differential matrices,
// the mapping-cone-like total complex of a difference representation, and
// exactness checks for its long exact sequence.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "diffcoh/linalg.hpp"

namespace diffcoh {

/// Zⁿ / Bⁿ with an explicit complement: `reps` extends the coboundary basis
/// to a cocycle basis, and classes are coordinates against `reps`.
template <ExactField S>
struct CohomologySpace {
  Mat<S> cocycles;      // basis of Zⁿ as columns
  Mat<S> coboundaries;  // basis of Bⁿ as columns
  Mat<S> reps;          // columns completing `coboundaries` to a basis of Zⁿ

  Index ambient() const { return cocycles.rows(); }
  Index dim() const { return reps.cols(); }

  /// Class of the cocycle z in the `reps` basis. Throws std::invalid_argument
  /// when z is not a cocycle.
  Vec<S> coordinates(const Vec<S>& z) const {
    Mat<S> both(ambient(), coboundaries.cols() + reps.cols());
    both << coboundaries, reps;
    const auto x = solve<S>(both, z);
    if (!x) throw std::invalid_argument("vector is not a cocycle");
    return x->tail(reps.cols());
  }
  bool is_coboundary(const Vec<S>& z) const {
    return coboundaries.cols() == 0 ? is_zero_matrix(z) : in_column_space<S>(coboundaries, z);
  }
};

/// H at a node with outgoing differential `d_out` (rows may be zero) and
/// incoming differential `d_in` (absent at the bottom of the complex).
template <ExactField S>
CohomologySpace<S> cohomology_space(Index ambient, const Mat<S>& d_out, const std::optional<Mat<S>>& d_in) {
  CohomologySpace<S> h;
  h.cocycles = d_out.rows() == 0 ? Mat<S>(Mat<S>::Identity(ambient, ambient)) : kernel_basis<S>(d_out);
  h.coboundaries = d_in ? column_basis<S>(*d_in) : Mat<S>(ambient, 0);
  Mat<S> both(ambient, h.coboundaries.cols() + h.cocycles.cols());
  both << h.coboundaries, h.cocycles;
  const auto e = row_echelon<S>(both);
  std::vector<Index> extra;
  for (Index c : e.pivots)
    if (c >= h.coboundaries.cols()) extra.push_back(c);
  h.reps = Mat<S>(ambient, static_cast<Index>(extra.size()));
  for (std::size_t k = 0; k < extra.size(); ++k) h.reps.col(static_cast<Index>(k)) = both.col(extra[k]);
  return h;
}

/// Matrix of the map induced on cohomology by a chain-level map f.
template <ExactField S>
Mat<S> induced_map(const CohomologySpace<S>& from, const CohomologySpace<S>& to, const Mat<S>& f) {
  Mat<S> out(to.dim(), from.dim());
  for (Index k = 0; k < from.dim(); ++k) out.col(k) = to.coordinates(f * from.reps.col(k));
  return out;
}

/// The matrices that define a difference complex up to degree N+1:
/// dA[n] : Cⁿ → Cⁿ⁺¹ for the Θ-complex, dAD[n] the same spaces with Θ_𝒟,
/// K[n] : Cⁿ → Cⁿ (landing in 𝔉Cⁿ⁺¹ = Cⁿ). Index 0 is unused; dims[n] = dim Cⁿ.
template <ExactField S>
struct DifferenceComplexData {
  std::vector<Index> dims;
  std::vector<Mat<S>> dA, dAD, K;
  Index top() const { return static_cast<Index>(dA.size()) - 1; }
};

/// Total complex Cⁿ ⊕ Cⁿ⁻¹ (no second slot at n = 1) with differential
/// [[dA, 0], [K, dAD]].
template <ExactField S>
Mat<S> total_differential(const DifferenceComplexData<S>& c, Index n) {
  const Index a_in = c.dims[n], b_in = n >= 2 ? c.dims[n - 1] : 0;
  const Index a_out = c.dims[n + 1], b_out = c.dims[n];
  Mat<S> m = Mat<S>::Zero(a_out + b_out, a_in + b_in);
  m.topLeftCorner(a_out, a_in) = c.dA[n];
  m.bottomLeftCorner(b_out, a_in) = c.K[n];
  if (n >= 2) m.bottomRightCorner(b_out, b_in) = c.dAD[n - 1];
  return m;
}

template <ExactField S>
Index total_dim(const DifferenceComplexData<S>& c, Index n) {
  return c.dims[n] + (n >= 2 ? c.dims[n - 1] : 0);
}

struct LesNode {
  std::string name;  // e.g. "H^2(D,T)"
  Index dim = 0;
  Index rank_in = 0;
  Index rank_out = 0;
  bool composite_zero = true;
  bool exact = true;
};

struct DegreeDims {
  Index degree = 0;
  Index group = 0;       // Hⁿ of the Θ-complex
  Index operator_ = 0;   // Hⁿ of the 𝔉-complex
  Index total = 0;       // Hⁿ of the total complex
};

template <ExactField S>
struct LesData {
  std::vector<DegreeDims> dims;
  std::vector<LesNode> nodes;
  bool exact() const {
    for (const auto& n : nodes)
      if (!n.exact) return false;
    return true;
  }
};

/// Hⁿ of the three complexes for n = 1..N with N = c.top(), plus H^{N+1} of
/// the 𝔉-complex (which only needs dAD[N]) as the last target.
template <ExactField S>
struct DifferenceCohomology {
  std::vector<CohomologySpace<S>> a, b, tot;  // index n; b has N+1 entries used

  explicit DifferenceCohomology(const DifferenceComplexData<S>& c) {
    const Index n_max = c.top();
    a.resize(static_cast<std::size_t>(n_max + 2));
    b.resize(static_cast<std::size_t>(n_max + 2));
    tot.resize(static_cast<std::size_t>(n_max + 2));
    for (Index n = 1; n <= n_max; ++n) {
      a[n] = cohomology_space<S>(c.dims[n], c.dA[n], n >= 2 ? std::optional<Mat<S>>(c.dA[n - 1]) : std::nullopt);
      tot[n] = cohomology_space<S>(total_dim(c, n), total_differential(c, n),
                                   n >= 2 ? std::optional<Mat<S>>(total_differential(c, n - 1)) : std::nullopt);
    }
    // 𝔉Cⁿ = Cⁿ⁻¹ with differential dAD[n−1]; 𝔉C¹ = 0.
    b[1] = cohomology_space<S>(0, Mat<S>(0, 0), std::nullopt);
    for (Index n = 2; n <= n_max + 1; ++n)
      b[n] = cohomology_space<S>(c.dims[n - 1], c.dAD[n - 1],
                                 n >= 3 ? std::optional<Mat<S>>(c.dAD[n - 2]) : std::nullopt);
  }
};

/// Materializes i_*, p_*, and the connecting map [α] ↦ [Kα], and checks
/// exactness at H¹(𝔉), and at Hⁿ(𝔉), Hⁿ(tot), Hⁿ(A) for n = 1..N.
template <ExactField S>
LesData<S> verify_les_data(const DifferenceComplexData<S>& c, const std::string& a_name, const std::string& b_name,
                            const std::string& total_name) {
  const DifferenceCohomology<S> h(c);
  const Index n_max = c.top();
  LesData<S> out;
  for (Index n = 1; n <= n_max; ++n) out.dims.push_back({n, h.a[n].dim(), h.b[n].dim(), h.tot[n].dim()});

  // The sequence as a list of spaces and maps between consecutive ones.
  struct Space {
    std::string name;
    Index dim;
  };
  std::vector<Space> spaces;
  std::vector<Mat<S>> maps;  // maps[k] : spaces[k] → spaces[k+1]
  for (Index n = 1; n <= n_max; ++n) {
    // i : 𝔉Cⁿ → totⁿ, β ↦ (0, β);  p : totⁿ → Cⁿ, (α, β) ↦ α.
    const Index tn = total_dim(c, n);
    Mat<S> i = Mat<S>::Zero(tn, n >= 2 ? c.dims[n - 1] : 0);
    if (n >= 2) i.bottomRows(c.dims[n - 1]) = Mat<S>::Identity(c.dims[n - 1], c.dims[n - 1]);
    Mat<S> p = Mat<S>::Zero(c.dims[n], tn);
    p.leftCols(c.dims[n]) = Mat<S>::Identity(c.dims[n], c.dims[n]);
    spaces.push_back({"H^" + std::to_string(n) + "(" + b_name + ")", h.b[n].dim()});
    maps.push_back(induced_map<S>(h.b[n], h.tot[n], i));
    spaces.push_back({"H^" + std::to_string(n) + "(" + total_name + ")", h.tot[n].dim()});
    maps.push_back(induced_map<S>(h.tot[n], h.a[n], p));
    spaces.push_back({"H^" + std::to_string(n) + "(" + a_name + ")", h.a[n].dim()});
    maps.push_back(induced_map<S>(h.a[n], h.b[n + 1], c.K[n]));
  }
  spaces.push_back({"H^" + std::to_string(n_max + 1) + "(" + b_name + ")", h.b[n_max + 1].dim()});

  // Exactness at spaces[k] for every k that has an outgoing map.
  for (std::size_t k = 0; k + 1 < spaces.size(); ++k) {
    LesNode node;
    node.name = spaces[k].name;
    node.dim = spaces[k].dim;
    const Mat<S>& out_map = maps[k];
    node.rank_out = rank<S>(out_map);
    if (k > 0) {
      const Mat<S>& in_map = maps[k - 1];
      node.rank_in = rank<S>(in_map);
      node.composite_zero = is_zero_matrix(Mat<S>(out_map * in_map));
    }
    node.exact = node.composite_zero && node.rank_in + node.rank_out == node.dim;
    out.nodes.push_back(node);
  }
  return out;
}

/// ‖δⁿ⁺¹δⁿ‖ = 0 for n = 1..top−1.
template <ExactField S>
bool total_square_zero(const DifferenceComplexData<S>& c, Index* failing_degree = nullptr) {
  for (Index n = 1; n + 1 <= c.top(); ++n)
    if (!is_zero_matrix(Mat<S>(total_differential(c, n + 1) * total_differential(c, n)))) {
      if (failing_degree) *failing_degree = n;
      return false;
    }
  return true;
}

/// dAD[n]·K[n] + K[n+1]·dA[n] = 0 for n = 1..top−1.
template <ExactField S>
bool anticommutes(const DifferenceComplexData<S>& c, Index* failing_degree = nullptr) {
  for (Index n = 1; n + 1 <= c.top(); ++n)
    if (!is_zero_matrix(Mat<S>(c.dAD[n] * c.K[n] + c.K[n + 1] * c.dA[n]))) {
      if (failing_degree) *failing_degree = n;
      return false;
    }
  return true;
}

}  // namespace diffcoh
