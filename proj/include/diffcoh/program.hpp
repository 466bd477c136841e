#pragma once

// Ring-generic matrix expression programs. A program is an immutable tree
// over numbered matrix inputs; it evaluates over any exact scalar ring that
// can host its constants (ℚ, ℚ(i), and jet rings over them).

#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <json.hpp>

#include "diffcoh/linalg.hpp"

namespace diffcoh {

enum class ProgramOp {
  input,
  constant,
  identity,
  add,
  sub,
  neg,
  mul,
  inverse,
  adjugate,
  det,
  trace,
  entry,
  transpose,
  kron,
  conj,
  vec,  // row-major flattening to a column
};

class Program {
 public:
  struct Node {
    ProgramOp op;
    std::vector<Program> args;
    Index index = 0;  // input number, or identity size
    Index row = 0, col = 0;
    Mat<GaussianRational> value;
  };

  static Program input(Index i);
  static Program constant(Mat<GaussianRational> value);
  static Program scalar(const GaussianRational& v);
  static Program identity(Index k);
  static Program unary(ProgramOp op, Program a);
  static Program binary(ProgramOp op, Program a, Program b);
  static Program entry(Program a, Index row, Index col);

  ProgramOp op() const { return node_->op; }
  const Node& node() const { return *node_; }
  /// One more than the largest input index used (0 for closed programs).
  Index arity() const;

  /// Replaces input i by inputs[i]; subtrees stay shared.
  Program substitute(const std::vector<Program>& inputs) const;

  nlohmann::json to_json() const;
  /// Throws std::invalid_argument naming the offending path on malformed input.
  static Program from_json(const nlohmann::json& j, const std::string& path = "program");

  friend Program operator+(const Program& a, const Program& b) { return binary(ProgramOp::add, a, b); }
  friend Program operator-(const Program& a, const Program& b) { return binary(ProgramOp::sub, a, b); }
  friend Program operator-(const Program& a) { return unary(ProgramOp::neg, a); }
  /// Matrix product; a 1×1 operand acts as a scalar.
  friend Program operator*(const Program& a, const Program& b) { return binary(ProgramOp::mul, a, b); }

 private:
  explicit Program(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Named programs of one matrix input g ∈ GL_k: "inverse", "adjugate", "det",
/// "trace-shift" (tr g − k), "identity" (constant I), "unit" (constant 1×1
/// identity), "conj-inverse" (ḡg⁻¹), "ad" (x ↦ gxg⁻¹ on row-major k×k
/// matrices), "vector" (g itself), "tensor" (g ⊗ g).
/// Throws std::invalid_argument on an unknown name.
Program builtin_program(const std::string& name, Index k);

namespace detail {

template <class R>
struct is_jet : std::false_type {};
template <class S>
struct is_jet<Jet<S>> : std::true_type {};

template <class R>
Mat<R> kron(const Mat<R>& a, const Mat<R>& b) {
  Mat<R> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

template <class R>
Mat<R> scalar_or_matrix_product(const Mat<R>& a, const Mat<R>& b) {
  if (a.rows() == 1 && a.cols() == 1 && !(b.rows() == 1)) return a(0, 0) * b;
  if (b.rows() == 1 && b.cols() == 1 && !(a.cols() == 1)) return a * b(0, 0);
  if (a.cols() != b.rows())
    throw std::invalid_argument("program product of " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " and " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  return a * b;
}

template <class R>
Mat<R> same_shape_sum(const Mat<R>& a, const Mat<R>& b, bool subtract) {
  auto lift = [](const Mat<R>& s, const Mat<R>& like) -> Mat<R> {
    // A 1×1 operand added to a square matrix acts as a scalar multiple of I.
    if (s.rows() == 1 && s.cols() == 1 && like.rows() == like.cols() && like.rows() > 1)
      return s(0, 0) * Mat<R>::Identity(like.rows(), like.cols());
    return s;
  };
  const Mat<R> x = lift(a, b), y = lift(b, a);
  if (x.rows() != y.rows() || x.cols() != y.cols()) throw std::invalid_argument("program sum of mismatched shapes");
  return subtract ? Mat<R>(x - y) : Mat<R>(x + y);
}

}  // namespace detail

/// Evaluates p with input i bound to inputs[i]. Shared subtrees are evaluated
/// once. Throws std::domain_error when an inverse meets a singular (base)
/// matrix.
template <class R>
Mat<R> evaluate(const Program& p, std::span<const Mat<R>> inputs) {
  std::map<const Program::Node*, Mat<R>> memo;
  auto rec = [&](auto&& self, const Program& q) -> Mat<R> {
    const auto* key = &q.node();
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const auto& n = q.node();
    auto arg = [&](std::size_t k) { return self(self, n.args[k]); };
    Mat<R> out;
    switch (n.op) {
      case ProgramOp::input:
        if (n.index >= static_cast<Index>(inputs.size()))
          throw std::invalid_argument("program input " + std::to_string(n.index) + " is unbound");
        out = inputs[static_cast<std::size_t>(n.index)];
        break;
      case ProgramOp::constant:
        out = n.value.unaryExpr([](const GaussianRational& x) { return ScalarTraits<R>::from_gaussian(x); });
        break;
      case ProgramOp::identity:
        out = Mat<R>::Identity(n.index, n.index);
        break;
      case ProgramOp::add:
        out = detail::same_shape_sum<R>(arg(0), arg(1), false);
        break;
      case ProgramOp::sub:
        out = detail::same_shape_sum<R>(arg(0), arg(1), true);
        break;
      case ProgramOp::neg:
        out = -arg(0);
        break;
      case ProgramOp::mul:
        out = detail::scalar_or_matrix_product<R>(arg(0), arg(1));
        break;
      case ProgramOp::inverse: {
        const Mat<R> a = arg(0);
        if constexpr (detail::is_jet<R>::value) {
          out = jet_matrix_inverse(a);
        } else {
          auto inv = diffcoh::inverse<R>(a);
          if (!inv) throw std::domain_error("program inverse of a singular matrix");
          out = *inv;
        }
        break;
      }
      case ProgramOp::adjugate:
        out = adjugate<R>(arg(0));
        break;
      case ProgramOp::det:
        out = Mat<R>::Constant(1, 1, determinant<R>(arg(0)));
        break;
      case ProgramOp::trace: {
        const Mat<R> a = arg(0);
        R t(0);
        for (Index i = 0; i < std::min(a.rows(), a.cols()); ++i) t += a(i, i);
        out = Mat<R>::Constant(1, 1, t);
        break;
      }
      case ProgramOp::entry: {
        const Mat<R> a = arg(0);
        if (n.row >= a.rows() || n.col >= a.cols()) throw std::invalid_argument("program entry out of range");
        out = Mat<R>::Constant(1, 1, a(n.row, n.col));
        break;
      }
      case ProgramOp::transpose:
        out = arg(0).transpose();
        break;
      case ProgramOp::kron:
        out = detail::kron<R>(arg(0), arg(1));
        break;
      case ProgramOp::conj:
        out = conjugate_matrix<R>(arg(0));
        break;
      case ProgramOp::vec: {
        const Mat<R> a = arg(0);
        out.resize(a.size(), 1);
        for (Index i = 0; i < a.rows(); ++i)
          for (Index j = 0; j < a.cols(); ++j) out(i * a.cols() + j, 0) = a(i, j);
        break;
      }
    }
    memo.emplace(key, out);
    return out;
  };
  return rec(rec, p);
}

template <class R>
Mat<R> evaluate(const Program& p, const std::vector<Mat<R>>& inputs) {
  return evaluate<R>(p, std::span<const Mat<R>>(inputs));
}

}  // namespace diffcoh
