#include "diffcoh/io.hpp"

#include <fstream>
#include <sstream>

namespace diffcoh {

namespace {

std::string position(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

std::vector<Element> parse_elements(const nlohmann::json& j, std::size_t order, const std::string& path) {
  if (!j.is_array()) throw FixtureError(path + ": expected an array of element indices");
  std::vector<Element> out;
  for (std::size_t k = 0; k < j.size(); ++k) {
    if (!j[k].is_number_unsigned() || j[k].get<std::size_t>() >= order)
      throw FixtureError(path + "[" + std::to_string(k) + "]: element index out of range");
    out.push_back(j[k].get<std::size_t>());
  }
  return out;
}

}  // namespace

nlohmann::json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::string what = e.what();
    const auto colon = what.find("syntax error");
    throw FixtureError(source + ": " + position(text, e.byte == 0 ? 0 : e.byte - 1) + ": " +
                       (colon == std::string::npos ? what : what.substr(colon)));
  }
}

LoadedJson load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FixtureError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  LoadedJson out;
  out.bytes = ss.str();
  out.value = parse_json_text(out.bytes, path);
  return out;
}

FieldSpec parse_field(const nlohmann::json& j, const std::string& path) {
  std::string kind;
  if (j.is_string()) {
    kind = j.get<std::string>();
  } else if (j.is_object() && j.contains("kind") && j.at("kind").is_string()) {
    kind = j.at("kind").get<std::string>();
  } else {
    throw FixtureError(path + ": expected {\"kind\": \"Q\"} or {\"kind\": \"Fp\", \"p\": p}");
  }
  if (kind == "Q") return FieldSpec::rationals();
  if (kind == "Fp") {
    if (!j.is_object() || !j.contains("p") || !j.at("p").is_number_unsigned()) throw FixtureError(path + ".p: expected a prime");
    try {
      return FieldSpec::prime(j.at("p").get<std::uint32_t>());
    } catch (const std::invalid_argument& e) {
      throw FixtureError(path + ".p: " + e.what());
    }
  }
  throw FixtureError(path + ".kind: unknown field \"" + kind + "\"");
}

FixtureData parse_fixture(const nlohmann::json& j) {
  if (!j.is_object()) throw FixtureError("fixture: expected a JSON object");
  if (j.contains("vanest")) {
    const auto& v = j.at("vanest");
    if (!v.is_object()) throw FixtureError("vanest: expected an object");
    VanEstFixtureData data;
    data.json = v;
    if (v.contains("field")) {
      const auto& f = v.at("field");
      if (!f.is_string() || (f.get<std::string>() != "Q" && f.get<std::string>() != "Q(i)"))
        throw FixtureError("vanest.field: expected \"Q\" or \"Q(i)\"");
      data.gaussian = f.get<std::string>() == "Q(i)";
    }
    return data;
  }
  if (j.contains("group")) {
    const auto& g = j.at("group");
    if (!g.is_object() || !g.contains("table")) throw FixtureError("group: expected an object with a \"table\"");
    GroupFixtureData data;
    const auto& table = g.at("table");
    if (!table.is_array() || table.empty()) throw FixtureError("group.table: expected a nonempty array of rows");
    const std::size_t m = table.size();
    if (g.contains("order") && (!g.at("order").is_number_unsigned() || g.at("order").get<std::size_t>() != m))
      throw FixtureError("group.order: does not match the table");
    if (g.contains("identity") && (!g.at("identity").is_number_unsigned() || g.at("identity").get<std::size_t>() != 0))
      throw FixtureError("group.identity: the identity must be index 0");
    for (std::size_t r = 0; r < m; ++r) data.table.push_back(parse_elements(table[r], m, "group.table[" + std::to_string(r) + "]"));
    if (g.contains("labels")) {
      const auto& l = g.at("labels");
      if (!l.is_array() || l.size() != m) throw FixtureError("group.labels: expected one label per element");
      for (const auto& s : l) {
        if (!s.is_string()) throw FixtureError("group.labels: labels must be strings");
        data.labels.push_back(s.get<std::string>());
      }
    }
    if (!j.contains("difference")) throw FixtureError("missing \"difference\"");
    const auto& d = j.at("difference");
    if (d.is_string()) {
      if (d.get<std::string>() != "inverse" && d.get<std::string>() != "identity" && d.get<std::string>() != "trivial")
        throw FixtureError("difference: named maps are \"inverse\", \"identity\" and \"trivial\"");
      data.d.assign(m, 0);
      if (d.get<std::string>() == "identity")
        for (std::size_t x = 0; x < m; ++x) data.d[x] = x;
      if (d.get<std::string>() == "inverse")
        for (std::size_t x = 0; x < m; ++x)
          for (std::size_t y = 0; y < m; ++y)
            if (data.table[x][y] == 0) data.d[x] = y;
    } else {
      data.d = parse_elements(d, m, "difference");
      if (data.d.size() != m) throw FixtureError("difference: expected one image per element");
    }
    if (j.contains("rep")) {
      const auto& r = j.at("rep");
      if (!r.is_object()) throw FixtureError("rep: expected an object");
      data.has_rep = true;
      data.field = r.contains("field") ? parse_field(r.at("field"), "rep.field") : FieldSpec::rationals();
      if (!r.contains("dim") || !r.at("dim").is_number_unsigned()) throw FixtureError("rep.dim: expected a natural number");
      data.dim = r.at("dim").get<Index>();
      data.rep_json = r;
    }
    if (j.contains("cocycle")) {
      if (!data.has_rep) throw FixtureError("cocycle: needs a \"rep\"");
      data.cocycle_json = j.at("cocycle");
    }
    return data;
  }
  if (j.contains("brackets") || j.contains("D")) {
    LieFixtureData data;
    if (!j.contains("dim") || !j.at("dim").is_number_unsigned() || j.at("dim").get<Index>() < 1)
      throw FixtureError("dim: expected a positive integer");
    data.dim = j.at("dim").get<Index>();
    data.field = j.contains("field") ? parse_field(j.at("field"), "field") : FieldSpec::rationals();
    data.json = j;
    return data;
  }
  throw FixtureError("fixture: expected a \"group\", \"brackets\" or \"vanest\" key");
}

Program parse_program(const nlohmann::json& j, Index size, const std::string& path) {
  try {
    if (j.is_string()) return builtin_program(j.get<std::string>(), size);
    return Program::from_json(j, path);
  } catch (const FixtureError&) {
    throw;
  } catch (const std::exception& e) {
    const std::string what = e.what();
    throw FixtureError(what.rfind(path, 0) == 0 ? what : path + ": " + what);
  }
}

}  // namespace diffcoh
