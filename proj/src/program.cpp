#include "diffcoh/program.hpp"

#include <algorithm>

namespace diffcoh {

namespace {

const std::map<std::string, ProgramOp>& op_names() {
  static const std::map<std::string, ProgramOp> names{
      {"input", ProgramOp::input},         {"const", ProgramOp::constant}, {"identity", ProgramOp::identity},
      {"add", ProgramOp::add},             {"sub", ProgramOp::sub},        {"neg", ProgramOp::neg},
      {"mul", ProgramOp::mul},             {"inverse", ProgramOp::inverse}, {"adjugate", ProgramOp::adjugate},
      {"det", ProgramOp::det},             {"trace", ProgramOp::trace},    {"entry", ProgramOp::entry},
      {"transpose", ProgramOp::transpose}, {"kron", ProgramOp::kron},      {"conj", ProgramOp::conj},
      {"vec", ProgramOp::vec},
  };
  return names;
}

std::string op_name(ProgramOp op) {
  for (const auto& [name, o] : op_names())
    if (o == op) return name;
  return "?";
}

std::size_t expected_args(ProgramOp op) {
  switch (op) {
    case ProgramOp::input:
    case ProgramOp::constant:
    case ProgramOp::identity:
      return 0;
    case ProgramOp::add:
    case ProgramOp::sub:
    case ProgramOp::mul:
    case ProgramOp::kron:
      return 2;
    default:
      return 1;
  }
}

GaussianRational parse_gaussian(const nlohmann::json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_object() && j.contains("re")) {
    auto part = [&](const char* key) {
      if (!j.contains(key)) return Rational(0);
      const auto& v = j.at(key);
      return v.is_string() ? Rational::parse(v.get<std::string>()) : Rational(v.get<long>());
    };
    return {part("re"), part("im")};
  }
  throw std::invalid_argument(path + ": expected a number, \"a/b\" string or {\"re\",\"im\"} object");
}

nlohmann::json gaussian_json(const GaussianRational& x) {
  if (x.imag().is_zero()) return x.real().to_string();
  return {{"re", x.real().to_string()}, {"im", x.imag().to_string()}};
}

}  // namespace

Program Program::input(Index i) {
  if (i < 0) throw std::invalid_argument("negative program input index");
  return Program(std::make_shared<const Node>(Node{ProgramOp::input, {}, i, 0, 0, {}}));
}

Program Program::constant(Mat<GaussianRational> value) {
  return Program(std::make_shared<const Node>(Node{ProgramOp::constant, {}, 0, 0, 0, std::move(value)}));
}

Program Program::scalar(const GaussianRational& v) { return constant(Mat<GaussianRational>::Constant(1, 1, v)); }

Program Program::identity(Index k) {
  return Program(std::make_shared<const Node>(Node{ProgramOp::identity, {}, k, 0, 0, {}}));
}

Program Program::unary(ProgramOp op, Program a) {
  return Program(std::make_shared<const Node>(Node{op, {std::move(a)}, 0, 0, 0, {}}));
}

Program Program::binary(ProgramOp op, Program a, Program b) {
  return Program(std::make_shared<const Node>(Node{op, {std::move(a), std::move(b)}, 0, 0, 0, {}}));
}

Program Program::entry(Program a, Index row, Index col) {
  return Program(std::make_shared<const Node>(Node{ProgramOp::entry, {std::move(a)}, 0, row, col, {}}));
}

Index Program::arity() const {
  std::map<const Node*, Index> memo;
  auto rec = [&](auto&& self, const Program& p) -> Index {
    if (auto it = memo.find(p.node_.get()); it != memo.end()) return it->second;
    Index a = p.op() == ProgramOp::input ? p.node().index + 1 : 0;
    for (const auto& c : p.node().args) a = std::max(a, self(self, c));
    memo.emplace(p.node_.get(), a);
    return a;
  };
  return rec(rec, *this);
}

Program Program::substitute(const std::vector<Program>& inputs) const {
  std::map<const Node*, Program> memo;
  auto rec = [&](auto&& self, const Program& p) -> Program {
    if (auto it = memo.find(p.node_.get()); it != memo.end()) return it->second;
    Program out = p;
    if (p.op() == ProgramOp::input) {
      if (p.node().index >= static_cast<Index>(inputs.size()))
        throw std::invalid_argument("substitution leaves input " + std::to_string(p.node().index) + " unbound");
      out = inputs[static_cast<std::size_t>(p.node().index)];
    } else if (!p.node().args.empty()) {
      Node n = p.node();
      for (auto& c : n.args) c = self(self, c);
      out = Program(std::make_shared<const Node>(std::move(n)));
    }
    memo.emplace(p.node_.get(), out);
    return out;
  };
  return rec(rec, *this);
}

nlohmann::json Program::to_json() const {
  const auto& n = node();
  nlohmann::json j{{"op", op_name(n.op)}};
  switch (n.op) {
    case ProgramOp::input:
      j["index"] = n.index;
      break;
    case ProgramOp::identity:
      j["size"] = n.index;
      break;
    case ProgramOp::constant: {
      nlohmann::json rows = nlohmann::json::array();
      for (Index r = 0; r < n.value.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Index c = 0; c < n.value.cols(); ++c) row.push_back(gaussian_json(n.value(r, c)));
        rows.push_back(row);
      }
      j["value"] = rows;
      break;
    }
    case ProgramOp::entry:
      j["row"] = n.row;
      j["col"] = n.col;
      break;
    default:
      break;
  }
  if (!n.args.empty()) {
    j["args"] = nlohmann::json::array();
    for (const auto& a : n.args) j["args"].push_back(a.to_json());
  }
  return j;
}

Program Program::from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object() || !j.contains("op") || !j.at("op").is_string())
    throw std::invalid_argument(path + ": expected an object with a string \"op\"");
  const auto name = j.at("op").get<std::string>();
  if (name == "builtin") {
    if (!j.contains("name") || !j.contains("size")) throw std::invalid_argument(path + ": builtin needs name and size");
    Program p = builtin_program(j.at("name").get<std::string>(), j.at("size").get<Index>());
    if (j.contains("args")) {
      std::vector<Program> args;
      for (std::size_t k = 0; k < j.at("args").size(); ++k)
        args.push_back(from_json(j.at("args")[k], path + ".args[" + std::to_string(k) + "]"));
      p = p.substitute(args);
    }
    return p;
  }
  const auto it = op_names().find(name);
  if (it == op_names().end()) throw std::invalid_argument(path + ": unknown op \"" + name + "\"");
  const ProgramOp op = it->second;
  auto need = [&](const char* key) -> const nlohmann::json& {
    if (!j.contains(key)) throw std::invalid_argument(path + ": op \"" + name + "\" needs \"" + key + "\"");
    return j.at(key);
  };
  switch (op) {
    case ProgramOp::input:
      return input(need("index").get<Index>());
    case ProgramOp::identity:
      return identity(need("size").get<Index>());
    case ProgramOp::constant: {
      const auto& rows = need("value");
      if (!rows.is_array() || rows.empty() || !rows[0].is_array())
        throw std::invalid_argument(path + ".value: expected a nonempty array of rows");
      Mat<GaussianRational> m(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size()) throw std::invalid_argument(path + ".value: ragged rows");
        for (std::size_t c = 0; c < rows[r].size(); ++c)
          m(static_cast<Index>(r), static_cast<Index>(c)) =
              parse_gaussian(rows[r][c], path + ".value[" + std::to_string(r) + "][" + std::to_string(c) + "]");
      }
      return constant(std::move(m));
    }
    default:
      break;
  }
  const auto& args = need("args");
  if (!args.is_array() || args.size() != expected_args(op))
    throw std::invalid_argument(path + ": op \"" + name + "\" takes " + std::to_string(expected_args(op)) + " argument(s)");
  std::vector<Program> a;
  for (std::size_t k = 0; k < args.size(); ++k) a.push_back(from_json(args[k], path + ".args[" + std::to_string(k) + "]"));
  if (op == ProgramOp::entry) return entry(a[0], need("row").get<Index>(), need("col").get<Index>());
  if (a.size() == 2) return binary(op, a[0], a[1]);
  return unary(op, a[0]);
}

Program builtin_program(const std::string& name, Index k) {
  const Program g = Program::input(0);
  if (name == "inverse") return Program::unary(ProgramOp::inverse, g);
  if (name == "adjugate") return Program::unary(ProgramOp::adjugate, g);
  if (name == "det") return Program::unary(ProgramOp::det, g);
  if (name == "trace-shift") return Program::unary(ProgramOp::trace, g) - Program::scalar(Rational(static_cast<long>(k)));
  if (name == "identity") return Program::identity(k);
  if (name == "unit") return Program::identity(1);
  if (name == "conj-inverse") return Program::unary(ProgramOp::conj, g) * Program::unary(ProgramOp::inverse, g);
  if (name == "ad")
    return Program::binary(ProgramOp::kron, g,
                           Program::unary(ProgramOp::transpose, Program::unary(ProgramOp::inverse, g)));
  if (name == "vector") return g;
  if (name == "tensor") return Program::binary(ProgramOp::kron, g, g);
  throw std::invalid_argument("unknown builtin program \"" + name + "\"");
}

}  // namespace diffcoh
