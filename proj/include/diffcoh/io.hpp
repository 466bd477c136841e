#pragma once

// JSON fixture loading. Errors name the file position (for syntax errors) or
// the field path (for shape errors) and are thrown as FixtureError.

#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "diffcoh/group_cohomology.hpp"
#include "diffcoh/lie.hpp"
#include "diffcoh/vanest.hpp"

namespace diffcoh {

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LoadedJson {
  nlohmann::json value;
  std::string bytes;
};

/// Reads and parses a file; syntax errors report line and column.
LoadedJson load_json_file(const std::string& path);
nlohmann::json parse_json_text(const std::string& text, const std::string& source);

FieldSpec parse_field(const nlohmann::json& j, const std::string& path);

template <class S>
S parse_scalar(const nlohmann::json& j, const FieldSpec& f, const std::string& path);

template <>
inline Rational parse_scalar<Rational>(const nlohmann::json& j, const FieldSpec&, const std::string& path) {
  try {
    if (j.is_number_integer()) return Rational(j.get<long long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
  } catch (const std::exception& e) {
    throw FixtureError(path + ": " + e.what());
  }
  throw FixtureError(path + ": expected an integer or a \"a/b\" string");
}

template <>
inline Zp parse_scalar<Zp>(const nlohmann::json& j, const FieldSpec& f, const std::string& path) {
  try {
    if (j.is_number_integer()) return ScalarTraits<Zp>::from_integer(f, j.get<long long>());
    if (j.is_string()) return ScalarTraits<Zp>::parse(f, j.get<std::string>());
  } catch (const std::exception& e) {
    throw FixtureError(path + ": " + e.what());
  }
  throw FixtureError(path + ": expected an integer");
}

template <>
inline GaussianRational parse_scalar<GaussianRational>(const nlohmann::json& j, const FieldSpec& f,
                                                       const std::string& path) {
  if (j.is_object()) {
    auto part = [&](const char* key) {
      return j.contains(key) ? parse_scalar<Rational>(j.at(key), f, path + "." + key) : Rational(0);
    };
    return {part("re"), part("im")};
  }
  return parse_scalar<Rational>(j, f, path);
}

template <class S>
Mat<S> parse_matrix(const nlohmann::json& j, const FieldSpec& f, const std::string& path) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw FixtureError(path + ": expected a nonempty array of rows");
  const auto rows = static_cast<Index>(j.size()), cols = static_cast<Index>(j[0].size());
  Mat<S> m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) throw FixtureError(path + "[" + std::to_string(r) + "]: ragged row");
    for (Index c = 0; c < cols; ++c)
      m(r, c) = parse_scalar<S>(row[static_cast<std::size_t>(c)], f, path + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  }
  return m;
}

template <class S>
Vec<S> parse_vector(const nlohmann::json& j, const FieldSpec& f, Index dim, const std::string& path) {
  if (!j.is_array() || static_cast<Index>(j.size()) != dim)
    throw FixtureError(path + ": expected an array of " + std::to_string(dim) + " scalars");
  Vec<S> v(dim);
  for (Index k = 0; k < dim; ++k) v(k) = parse_scalar<S>(j[static_cast<std::size_t>(k)], f, path + "[" + std::to_string(k) + "]");
  return v;
}

/// The unvalidated content of a group fixture; validation belongs to the caller.
struct GroupFixtureData {
  FiniteGroup::Table table;
  std::vector<std::string> labels;
  std::vector<Element> d;
  FieldSpec field;
  bool has_rep = false;
  Index dim = 0;
  nlohmann::json rep_json;
  std::optional<nlohmann::json> cocycle_json;
};

struct LieFixtureData {
  FieldSpec field;
  Index dim = 0;
  nlohmann::json json;
};

struct VanEstFixtureData {
  bool gaussian = false;
  nlohmann::json json;
};

using FixtureData = std::variant<GroupFixtureData, LieFixtureData, VanEstFixtureData>;

/// Dispatches on the top-level keys: "group", "brackets" or "vanest".
FixtureData parse_fixture(const nlohmann::json& j);

template <ExactField S>
DifferenceRep<S> parse_rep(const GroupFixtureData& fx) {
  const auto& j = fx.rep_json;
  const std::size_t m = fx.table.size();
  DifferenceRep<S> rep{fx.field, fx.dim, {}, Mat<S>::Identity(fx.dim, fx.dim)};
  rep.theta.assign(m, Mat<S>::Identity(fx.dim, fx.dim));
  if (j.contains("theta")) {
    const auto& th = j.at("theta");
    if (!th.is_object()) throw FixtureError("rep.theta: expected an object keyed by element index");
    for (auto it = th.begin(); it != th.end(); ++it) {
      std::size_t g = 0;
      try {
        g = std::stoul(it.key());
      } catch (const std::exception&) {
        throw FixtureError("rep.theta." + it.key() + ": key is not an element index");
      }
      if (g >= m) throw FixtureError("rep.theta." + it.key() + ": element index out of range");
      rep.theta[g] = parse_matrix<S>(it.value(), fx.field, "rep.theta." + it.key());
      if (rep.theta[g].rows() != fx.dim || rep.theta[g].cols() != fx.dim)
        throw FixtureError("rep.theta." + it.key() + ": matrix is not dim x dim");
    }
  }
  if (!j.contains("T")) throw FixtureError("rep: missing \"T\"");
  rep.t = parse_matrix<S>(j.at("T"), fx.field, "rep.T");
  if (rep.t.rows() != fx.dim || rep.t.cols() != fx.dim) throw FixtureError("rep.T: matrix is not dim x dim");
  for (auto& t : rep.theta) t = detail::bind_field<S>(fx.field, t);
  rep.t = detail::bind_field<S>(fx.field, rep.t);
  return rep;
}

/// {"degree": n, "values": [{"args": [...], "value": [...]}]}; absent tuples
/// are zero and tuples containing the identity (index 0) are rejected.
template <ExactField S>
NormalizedCochain<S> parse_cochain(const nlohmann::json& j, std::size_t order, Index dim, const FieldSpec& f,
                                   const std::string& path) {
  if (!j.is_object() || !j.contains("degree") || !j.at("degree").is_number_integer())
    throw FixtureError(path + ": expected {\"degree\": n, \"values\": [...]}");
  const Index n = j.at("degree").get<Index>();
  if (n < 1) throw FixtureError(path + ".degree: must be at least 1");
  auto c = NormalizedCochain<S>::zero(order, n, dim);
  if (!j.contains("values")) return c;
  const auto& vals = j.at("values");
  if (!vals.is_array()) throw FixtureError(path + ".values: expected an array");
  for (std::size_t k = 0; k < vals.size(); ++k) {
    const std::string here = path + ".values[" + std::to_string(k) + "]";
    const auto& e = vals[k];
    if (!e.is_object() || !e.contains("args") || !e.contains("value")) throw FixtureError(here + ": expected {args, value}");
    const auto& args = e.at("args");
    if (!args.is_array() || static_cast<Index>(args.size()) != n)
      throw FixtureError(here + ".args: expected " + std::to_string(n) + " element indices");
    std::vector<Element> t;
    for (const auto& a : args) {
      if (!a.is_number_unsigned() || a.get<std::size_t>() >= order) throw FixtureError(here + ".args: element index out of range");
      if (a.get<std::size_t>() == 0) throw FixtureError(here + ".args: normalized cochains have no value at the identity");
      t.push_back(a.get<std::size_t>());
    }
    c.set(t, detail::bind_field<S>(f, Mat<S>(parse_vector<S>(e.at("value"), f, dim, here + ".value"))));
  }
  c.values = detail::bind_field<S>(f, Mat<S>(c.values));
  return c;
}

/// Lie fixture over S: brackets for i < j only ("i,j" keys, 0-based), the
/// rest completed by antisymmetry.
template <ExactField S>
struct LieFixture {
  typename LieAlgebra<S>::Constants constants;
  Mat<S> d;
  LieRep<S> rep;
};

template <ExactField S>
LieFixture<S> parse_lie_fixture(const LieFixtureData& data) {
  const auto& j = data.json;
  const Index n = data.dim;
  const FieldSpec& f = data.field;
  LieFixture<S> fx;
  fx.constants.assign(static_cast<std::size_t>(n), std::vector<Vec<S>>(static_cast<std::size_t>(n), Vec<S>::Zero(n)));
  if (j.contains("brackets")) {
    const auto& br = j.at("brackets");
    if (!br.is_object()) throw FixtureError("brackets: expected an object keyed by \"i,j\"");
    for (auto it = br.begin(); it != br.end(); ++it) {
      const std::string key = it.key();
      const auto comma = key.find(',');
      std::size_t a = 0, b = 0;
      try {
        if (comma == std::string::npos) throw std::invalid_argument("no comma");
        a = std::stoul(key.substr(0, comma));
        b = std::stoul(key.substr(comma + 1));
      } catch (const std::exception&) {
        throw FixtureError("brackets." + key + ": key must be \"i,j\"");
      }
      if (a >= static_cast<std::size_t>(n) || b >= static_cast<std::size_t>(n)) throw FixtureError("brackets." + key + ": index out of range");
      if (a >= b) throw FixtureError("brackets." + key + ": only i < j entries are accepted");
      const Vec<S> v = detail::bind_field<S>(f, Mat<S>(parse_vector<S>(it.value(), f, n, "brackets." + key)));
      fx.constants[a][b] = v;
      fx.constants[b][a] = -v;
    }
  }
  for (auto& row : fx.constants)
    for (auto& v : row) v = detail::bind_field<S>(f, Mat<S>(v));
  if (!j.contains("D")) throw FixtureError("missing \"D\"");
  fx.d = detail::bind_field<S>(f, parse_matrix<S>(j.at("D"), f, "D"));
  if (fx.d.rows() != n || fx.d.cols() != n) throw FixtureError("D: matrix is not dim x dim");
  if (!j.contains("rep")) throw FixtureError("missing \"rep\"");
  const auto& r = j.at("rep");
  if (!r.contains("dim") || !r.at("dim").is_number_unsigned()) throw FixtureError("rep.dim: expected a natural number");
  fx.rep.dim = r.at("dim").get<Index>();
  fx.rep.theta.assign(static_cast<std::size_t>(n), Mat<S>::Zero(fx.rep.dim, fx.rep.dim));
  if (r.contains("theta")) {
    const auto& th = r.at("theta");
    if (!th.is_object()) throw FixtureError("rep.theta: expected an object keyed by basis index");
    for (auto it = th.begin(); it != th.end(); ++it) {
      std::size_t i = 0;
      try {
        i = std::stoul(it.key());
      } catch (const std::exception&) {
        throw FixtureError("rep.theta." + it.key() + ": key is not a basis index");
      }
      if (i >= static_cast<std::size_t>(n)) throw FixtureError("rep.theta." + it.key() + ": basis index out of range");
      fx.rep.theta[i] = detail::bind_field<S>(f, parse_matrix<S>(it.value(), f, "rep.theta." + it.key()));
      if (fx.rep.theta[i].rows() != fx.rep.dim || fx.rep.theta[i].cols() != fx.rep.dim)
        throw FixtureError("rep.theta." + it.key() + ": matrix is not dim x dim");
    }
  }
  if (!r.contains("T")) throw FixtureError("rep: missing \"T\"");
  fx.rep.t = detail::bind_field<S>(f, parse_matrix<S>(r.at("T"), f, "rep.T"));
  if (fx.rep.t.rows() != fx.rep.dim || fx.rep.t.cols() != fx.rep.dim) throw FixtureError("rep.T: matrix is not dim x dim");
  return fx;
}

/// A van Est fixture with its cochain programs.
template <class M>
struct VanEstInput {
  VanEstFixture<M> fixture;
  Program alpha;
  std::optional<Program> beta;
  Index degree = 1;
};

/// Program from a builtin name (string) or an expression object.
Program parse_program(const nlohmann::json& j, Index size, const std::string& path);

/// "gl" or a list of matrices; over ℚ(i) "gl" means the real basis E_ij, iE_ij.
template <class M>
std::vector<Mat<M>> parse_basis(const nlohmann::json& j, Index size, const std::string& path) {
  std::vector<Mat<M>> out;
  if (j.is_string()) {
    if (j.get<std::string>() != "gl") throw FixtureError(path + ": the only named basis is \"gl\"");
    for (Index i = 0; i < size; ++i)
      for (Index k = 0; k < size; ++k) {
        Mat<M> e = Mat<M>::Zero(size, size);
        e(i, k) = M(1);
        out.push_back(e);
      }
    if constexpr (std::is_same_v<M, GaussianRational>) {
      for (Index i = 0; i < size; ++i)
        for (Index k = 0; k < size; ++k) {
          Mat<M> e = Mat<M>::Zero(size, size);
          e(i, k) = GaussianRational::i();
          out.push_back(e);
        }
    }
    return out;
  }
  if (!j.is_array() || j.empty()) throw FixtureError(path + ": expected \"gl\" or a nonempty list of matrices");
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(parse_matrix<M>(j[k], FieldSpec::rationals(), path + "[" + std::to_string(k) + "]"));
    if (out.back().rows() != size || out.back().cols() != size) throw FixtureError(path + "[" + std::to_string(k) + "]: wrong size");
  }
  return out;
}

template <class M>
VanEstInput<M> parse_vanest(const VanEstFixtureData& data) {
  const auto& j = data.json;
  auto need = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) throw FixtureError(std::string("vanest: missing \"") + key + "\"");
    return j.at(key);
  };
  if (!need("size").is_number_unsigned() || need("size").template get<Index>() < 1) throw FixtureError("vanest.size: expected a positive integer");
  const Index k = j.at("size").get<Index>();
  auto basis = parse_basis<M>(need("basis"), k, "vanest.basis");
  auto d = parse_program(need("difference"), k, "vanest.difference");
  auto theta = parse_program(need("theta"), k, "vanest.theta");
  Index vdim = 0;
  try {
    vdim = evaluate<M>(theta, std::vector<Mat<M>>{Mat<M>::Identity(k, k)}).rows();
  } catch (const std::exception& e) {
    throw FixtureError(std::string("vanest.theta: ") + e.what());
  }
  const auto& tj = need("T");
  Program t = tj.is_array()
                  ? Program::constant(parse_matrix<GaussianRational>(tj, FieldSpec::rationals(), "vanest.T")) * Program::input(0)
                  : parse_program(tj, k, "vanest.T");
  VanEstInput<M> in{VanEstFixture<M>{MatrixGroupSpec{k}, std::move(basis), std::move(d), std::move(theta), std::move(t), vdim},
                    parse_program(need("alpha"), k, "vanest.alpha"), std::nullopt, 1};
  if (j.contains("beta")) in.beta = parse_program(j.at("beta"), k, "vanest.beta");
  if (j.contains("degree")) {
    if (!j.at("degree").is_number_unsigned()) throw FixtureError("vanest.degree: expected 1 or 2");
    in.degree = j.at("degree").template get<Index>();
  }
  return in;
}

}  // namespace diffcoh
