#include "diffcoh/group.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace diffcoh {

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::ostringstream os;
  os << violations_.size() << " violation(s); first: " << violations_.front().relation << " at "
     << violations_.front().witness;
  return os.str();
}

ValidationReport FiniteGroup::validate(const Table& table) {
  ValidationReport report;
  const std::size_t m = table.size();
  if (m == 0) {
    report.add("shape", "empty table");
    return report;
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (table[a].size() != m) {
      report.add("shape", "row " + std::to_string(a) + " has " + std::to_string(table[a].size()) + " entries");
      return report;
    }
    for (Element x : table[a])
      if (x >= m) {
        report.add("closure", "entry " + std::to_string(x) + " in row " + std::to_string(a));
        return report;
      }
  }
  for (std::size_t a = 0; a < m; ++a)
    if (table[0][a] != a || table[a][0] != a) report.add("identity", "index 0 does not fix " + std::to_string(a));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          report.add("associativity",
                     "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
  for (std::size_t a = 0; a < m; ++a) {
    bool found = false;
    for (std::size_t b = 0; b < m && !found; ++b) found = table[a][b] == 0 && table[b][a] == 0;
    if (!found) report.add("inverse", "element " + std::to_string(a) + " has no two-sided inverse");
  }
  return report;
}

FiniteGroup::FiniteGroup(const Table& table, std::vector<std::string> labels) : labels_(std::move(labels)) {
  auto report = validate(table);
  if (!labels_.empty() && labels_.size() != table.size())
    report.add("labels", std::to_string(labels_.size()) + " labels for order " + std::to_string(table.size()));
  if (!report.ok()) throw ValidationError(std::move(report));
  order_ = table.size();
  table_.reserve(order_ * order_);
  for (const auto& row : table) table_.insert(table_.end(), row.begin(), row.end());
  inverse_.resize(order_);
  for (Element a = 0; a < order_; ++a)
    for (Element b = 0; b < order_; ++b)
      if (mul(a, b) == 0) inverse_[a] = b;
}

bool FiniteGroup::is_abelian() const {
  for (Element a = 0; a < order_; ++a)
    for (Element b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

FiniteGroup::Table FiniteGroup::table() const {
  Table t(order_, std::vector<Element>(order_));
  for (Element a = 0; a < order_; ++a)
    for (Element b = 0; b < order_; ++b) t[a][b] = mul(a, b);
  return t;
}

std::string FiniteGroup::label(Element g) const { return labels_.empty() ? std::to_string(g) : labels_[g]; }

ValidationReport check_homomorphism(const FiniteGroup& from, const FiniteGroup& to, std::span<const Element> map) {
  ValidationReport report;
  if (map.size() != from.order())
    throw std::invalid_argument("map has length " + std::to_string(map.size()) + ", expected " +
                                std::to_string(from.order()));
  for (Element x : map)
    if (x >= to.order()) throw std::invalid_argument("map image " + std::to_string(x) + " out of range");
  for (Element a = 0; a < from.order(); ++a)
    for (Element b = 0; b < from.order(); ++b)
      if (map[from.mul(a, b)] != to.mul(map[a], map[b]))
        report.add("homomorphism", "(" + from.label(a) + "," + from.label(b) + ")");
  return report;
}

ValidationReport check_difference_operator(const FiniteGroup& g, std::span<const Element> d) {
  if (d.size() != g.order())
    throw std::invalid_argument("difference map has length " + std::to_string(d.size()) + ", expected " +
                                std::to_string(g.order()));
  for (Element x : d)
    if (x >= g.order()) throw std::invalid_argument("difference map image " + std::to_string(x) + " out of range");
  ValidationReport report;
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) {
      const Element rhs = g.mul(g.mul(g.mul(d[a], a), d[b]), g.inv(a));
      if (d[g.mul(a, b)] != rhs) report.add("difference identity", "(" + g.label(a) + "," + g.label(b) + ")");
    }
  if (!report.ok()) return report;
  if (d[0] != 0) report.add("D(e) = e", g.label(d[0]));
  for (Element a = 0; a < g.order(); ++a)
    if (d[g.inv(a)] != g.mul(g.inv(g.mul(d[a], a)), a)) report.add("inverse formula", g.label(a));
  return report;
}

DifferenceGroup::DifferenceGroup(FiniteGroup group, std::vector<Element> d) : group_(std::move(group)), d_(std::move(d)) {
  auto report = check_difference_operator(group_, d_);
  if (!report.ok()) throw ValidationError(std::move(report));
}

std::vector<Element> d_plus(const DifferenceGroup& dg) {
  const auto& g = dg.group();
  std::vector<Element> out(g.order());
  for (Element a = 0; a < g.order(); ++a) out[a] = g.mul(dg.d(a), a);
  auto report = check_homomorphism(g, g, out);
  if (!report.ok()) throw ValidationError(std::move(report));
  return out;
}

ValidationReport check_difference_homomorphism(const DifferenceGroup& from, const DifferenceGroup& to,
                                               std::span<const Element> map) {
  auto report = check_homomorphism(from.group(), to.group(), map);
  for (Element a = 0; a < from.order(); ++a)
    if (to.d(map[a]) != map[from.d(a)]) report.add("commutes with D", from.group().label(a));
  return report;
}

std::vector<Element> inverse_map(const FiniteGroup& g) {
  std::vector<Element> out(g.order());
  for (Element a = 0; a < g.order(); ++a) out[a] = g.inv(a);
  return out;
}

std::vector<Element> identity_map(const FiniteGroup& g) {
  std::vector<Element> out(g.order());
  std::iota(out.begin(), out.end(), Element{0});
  return out;
}

namespace groups {

FiniteGroup trivial() { return FiniteGroup({{0}}, {"e"}); }

FiniteGroup cyclic(std::size_t n) {
  if (n == 0) throw std::invalid_argument("cyclic group of order 0");
  FiniteGroup::Table t(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup(t);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t m = a.order() * b.order();
  FiniteGroup::Table t(m, std::vector<Element>(m));
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      t[x][y] = a.mul(x / b.order(), y / b.order()) * b.order() + b.mul(x % b.order(), y % b.order());
  return FiniteGroup(t);
}

FiniteGroup from_permutations(const std::vector<std::vector<std::size_t>>& generators) {
  if (generators.empty()) return trivial();
  const std::size_t n = generators.front().size();
  using Perm = std::vector<std::size_t>;
  Perm id(n);
  std::iota(id.begin(), id.end(), std::size_t{0});
  auto compose = [](const Perm& p, const Perm& q) {  // (p∘q)(i) = p(q(i))
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[q[i]];
    return r;
  };
  std::vector<Perm> elems{id};
  std::map<Perm, Element> index{{id, 0}};
  std::deque<Perm> queue{id};
  while (!queue.empty()) {
    Perm p = queue.front();
    queue.pop_front();
    for (const auto& s : generators) {
      Perm q = compose(p, s);
      if (index.emplace(q, elems.size()).second) {
        elems.push_back(q);
        queue.push_back(q);
      }
    }
  }
  const std::size_t m = elems.size();
  FiniteGroup::Table t(m, std::vector<Element>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) t[a][b] = index.at(compose(elems[a], elems[b]));
  return FiniteGroup(t);
}

FiniteGroup symmetric(std::size_t n) {
  if (n <= 1) return trivial();
  std::vector<std::size_t> swap01(n), cycle(n);
  std::iota(swap01.begin(), swap01.end(), std::size_t{0});
  std::swap(swap01[0], swap01[1]);
  for (std::size_t i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
  return from_permutations({swap01, cycle});
}

FiniteGroup alternating(std::size_t n) {
  if (n <= 2) return trivial();
  std::vector<std::vector<std::size_t>> gens;
  for (std::size_t k = 2; k < n; ++k) {  // 3-cycles (0 1 k)
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    p[0] = 1;
    p[1] = k;
    p[k] = 0;
    gens.push_back(p);
  }
  return from_permutations(gens);
}

FiniteGroup dihedral(std::size_t n) {
  std::vector<std::size_t> rot(n), refl(n);
  for (std::size_t i = 0; i < n; ++i) {
    rot[i] = (i + 1) % n;
    refl[i] = (n - i) % n;
  }
  return from_permutations({rot, refl});
}

FiniteGroup quaternion() {
  // Left multiplication by i and j on the eight units ±1, ±i, ±j, ±k,
  // indexed 1, i, j, k, −1, −i, −j, −k.
  const std::vector<std::size_t> left_i{1, 4, 3, 6, 5, 0, 7, 2};
  const std::vector<std::size_t> left_j{2, 7, 4, 1, 6, 3, 0, 5};
  return from_permutations({left_i, left_j});
}

std::vector<std::vector<Element>> endomorphisms(const FiniteGroup& g) {
  // Greedy generating set: add any element outside the subgroup generated so far.
  std::vector<Element> gens;
  std::vector<bool> reached(g.order(), false);
  reached[0] = true;
  auto close = [&](std::vector<bool>& in) {
    bool grew = true;
    while (grew) {
      grew = false;
      for (Element a = 0; a < g.order(); ++a)
        if (in[a])
          for (Element s : gens)
            if (!in[g.mul(a, s)]) in[g.mul(a, s)] = grew = true;
    }
  };
  for (Element x = 1; x < g.order(); ++x)
    if (!reached[x]) {
      gens.push_back(x);
      close(reached);
    }

  std::vector<std::vector<Element>> out;
  std::vector<Element> images(gens.size(), 0);
  while (true) {
    // Extend along words in the generators; reject on a conflicting value.
    std::vector<Element> f(g.order(), g.order());
    f[0] = 0;
    std::deque<Element> queue{0};
    bool consistent = true;
    while (!queue.empty() && consistent) {
      const Element a = queue.front();
      queue.pop_front();
      for (std::size_t k = 0; k < gens.size(); ++k) {
        const Element b = g.mul(a, gens[k]);
        const Element fb = g.mul(f[a], images[k]);
        if (f[b] == g.order()) {
          f[b] = fb;
          queue.push_back(b);
        } else if (f[b] != fb) {
          consistent = false;
          break;
        }
      }
    }
    if (consistent && check_homomorphism(g, g, f).ok()) out.push_back(f);
    std::size_t k = 0;
    while (k < images.size() && ++images[k] == g.order()) images[k++] = 0;
    if (k == images.size()) break;
  }
  return out;
}

}  // namespace groups

}  // namespace diffcoh
