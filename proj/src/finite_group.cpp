#include "sfconj/finite_group.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

namespace sfconj {

FiniteGroupTable::FiniteGroupTable(std::vector<std::vector<Element>> table,
                                   std::vector<std::string> labels)
    : table_(std::move(table)), labels_(std::move(labels)) {
  const std::size_t n = table_.size();
  if (n == 0) throw std::invalid_argument("group table is empty");
  for (const auto& row : table_) {
    if (row.size() != n) throw std::invalid_argument("group table is not square");
    for (Element e : row) {
      if (e >= n) throw std::invalid_argument("group table entry out of range");
    }
  }
  for (Element a = 0; a < n; ++a) {
    if (table_[0][a] != a || table_[a][0] != a) {
      throw std::invalid_argument("element 0 is not the identity");
    }
  }
  inverse_.assign(n, 0);
  for (Element a = 0; a < n; ++a) {
    auto it = std::find(table_[a].begin(), table_[a].end(), 0u);
    if (it == table_[a].end()) throw std::invalid_argument("element without inverse");
    const auto b = static_cast<Element>(it - table_[a].begin());
    if (table_[b][a] != 0) throw std::invalid_argument("left and right inverses differ");
    inverse_[a] = b;
  }
  for (Element a = 0; a < n; ++a) {
    for (Element b = 0; b < n; ++b) {
      const Element ab = table_[a][b];
      for (Element c = 0; c < n; ++c) {
        if (table_[ab][c] != table_[a][table_[b][c]]) {
          throw std::invalid_argument("group table is not associative");
        }
      }
    }
  }
  if (labels_.empty()) {
    for (std::size_t i = 0; i < n; ++i) labels_.push_back("g" + std::to_string(i));
  }
  if (labels_.size() != n) throw std::invalid_argument("label count does not match the order");

  class_id_.assign(n, n);
  std::size_t next = 0;
  for (Element a = 0; a < n; ++a) {
    if (class_id_[a] != n) continue;
    for (Element w = 0; w < n; ++w) class_id_[conjugate(a, w)] = next;
    ++next;
  }
}

Element FiniteGroupTable::pow(Element a, long long k) const {
  Element base = k < 0 ? inv(a) : a;
  unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
  Element out = 0;
  while (e > 0) {
    if (e & 1) out = mul(out, base);
    base = mul(base, base);
    e >>= 1;
  }
  return out;
}

std::size_t FiniteGroupTable::element_order(Element a) const {
  std::size_t k = 1;
  for (Element x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

std::vector<Element> FiniteGroupTable::conjugacy_class(Element a) const {
  std::vector<Element> out;
  for (Element b = 0; b < order(); ++b) {
    if (class_id_[b] == class_id_[a]) out.push_back(b);
  }
  return out;
}

std::vector<std::vector<Element>> FiniteGroupTable::conjugacy_classes() const {
  std::vector<std::vector<Element>> out;
  for (Element a = 0; a < order(); ++a) {
    if (class_id_[a] == out.size()) out.push_back(conjugacy_class(a));
  }
  return out;
}

bool FiniteGroupTable::is_abelian() const {
  for (Element a = 0; a < order(); ++a) {
    for (Element b = 0; b < a; ++b) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

std::vector<Element> FiniteGroupTable::subgroup(const std::vector<Element>& gens) const {
  std::vector<bool> seen(order(), false);
  std::vector<Element> out{0};
  seen[0] = true;
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Element g : gens) {
      const Element x = mul(out[i], g);
      if (!seen[x]) {
        seen[x] = true;
        out.push_back(x);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool FiniteGroupTable::is_subgroup(const std::vector<Element>& elements) const {
  std::vector<bool> in(order(), false);
  for (Element e : elements) {
    if (e >= order()) return false;
    in[e] = true;
  }
  if (!in[0]) return false;
  for (Element a : elements) {
    for (Element b : elements) {
      if (!in[mul(a, inv(b))]) return false;
    }
  }
  return true;
}

bool FiniteGroupTable::is_normal(const std::vector<Element>& elements) const {
  if (!is_subgroup(elements)) return false;
  std::vector<bool> in(order(), false);
  for (Element e : elements) in[e] = true;
  for (Element s : elements) {
    for (Element w = 0; w < order(); ++w) {
      if (!in[conjugate(s, w)]) return false;
    }
  }
  return true;
}

FiniteGroupTable induced_table(const FiniteGroupTable& g, const std::vector<Element>& elements) {
  if (!std::is_sorted(elements.begin(), elements.end()) || !g.is_subgroup(elements)) {
    throw std::invalid_argument("induced_table: not a sorted subgroup");
  }
  std::vector<Element> pos(g.order(), 0);
  for (std::size_t i = 0; i < elements.size(); ++i) pos[elements[i]] = static_cast<Element>(i);
  std::vector<std::vector<Element>> table(elements.size(), std::vector<Element>(elements.size()));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    labels.push_back(g.label(elements[i]));
    for (std::size_t j = 0; j < elements.size(); ++j) {
      table[i][j] = pos[g.mul(elements[i], elements[j])];
    }
  }
  return FiniteGroupTable(std::move(table), std::move(labels));
}

FiniteGroupTable direct_product(const FiniteGroupTable& a, const FiniteGroupTable& b) {
  const std::size_t na = a.order();
  const std::size_t nb = b.order();
  std::vector<std::vector<Element>> table(na * nb, std::vector<Element>(na * nb));
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < na * nb; ++x) {
    labels.push_back("(" + a.label(static_cast<Element>(x / nb)) + "," +
                     b.label(static_cast<Element>(x % nb)) + ")");
    for (std::size_t y = 0; y < na * nb; ++y) {
      const Element p = a.mul(static_cast<Element>(x / nb), static_cast<Element>(y / nb));
      const Element q = b.mul(static_cast<Element>(x % nb), static_cast<Element>(y % nb));
      table[x][y] = static_cast<Element>(p * nb + q);
    }
  }
  return FiniteGroupTable(std::move(table), std::move(labels));
}

nlohmann::json to_json(const FiniteGroupTable& g) {
  return {{"order", g.order()}, {"labels", g.labels()}, {"table", g.table()}};
}

FiniteGroupTable group_from_json(const nlohmann::json& j) {
  auto table = j.at("table").get<std::vector<std::vector<Element>>>();
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  if (j.contains("order") && j.at("order").get<std::size_t>() != table.size()) {
    throw std::invalid_argument("group order does not match the table");
  }
  return FiniteGroupTable(std::move(table), std::move(labels));
}

namespace {

using Perm = std::vector<std::uint8_t>;

// Apply a, then b.
Perm compose(const Perm& a, const Perm& b) {
  Perm out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = b[a[i]];
  return out;
}

std::string cycle_label(const Perm& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += "(";
    for (std::size_t j = i; !seen[j]; j = p[j]) {
      seen[j] = true;
      if (out.back() != '(') out += " ";
      out += std::to_string(j);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

Perm identity_perm(std::size_t n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

GeneratedGroup perm_group(std::size_t n, const std::vector<Perm>& gens) {
  return generate_group(identity_perm(n), gens, compose, cycle_label);
}

using Mat2 = std::array<int, 4>;

GeneratedGroup mat2_mod3_group(const std::vector<Mat2>& gens) {
  auto mul = [](const Mat2& a, const Mat2& b) {
    return Mat2{(a[0] * b[0] + a[1] * b[2]) % 3, (a[0] * b[1] + a[1] * b[3]) % 3,
                (a[2] * b[0] + a[3] * b[2]) % 3, (a[2] * b[1] + a[3] * b[3]) % 3};
  };
  auto label = [](const Mat2& m) {
    return "[" + std::to_string(m[0]) + std::to_string(m[1]) + ";" + std::to_string(m[2]) +
           std::to_string(m[3]) + "]";
  };
  return generate_group(Mat2{1, 0, 0, 1}, gens, mul, label);
}

}  // namespace

GeneratedGroup cyclic_group(std::size_t n) {
  using T = std::uint32_t;
  const auto m = static_cast<T>(n);
  return generate_group(
      T{0}, n > 1 ? std::vector<T>{1} : std::vector<T>{},
      [m](T a, T b) { return (a + b) % m; }, [](T a) { return std::to_string(a); });
}

GeneratedGroup dihedral_group(std::size_t n) {
  Perm r(n);
  Perm s(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = static_cast<std::uint8_t>((i + 1) % n);
    s[i] = static_cast<std::uint8_t>((n - i) % n);
  }
  return perm_group(n, {r, s});
}

GeneratedGroup symmetric_group(std::size_t n) {
  Perm t = identity_perm(n);
  std::swap(t[0], t[1]);
  Perm c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = static_cast<std::uint8_t>((i + 1) % n);
  return perm_group(n, {t, c});
}

GeneratedGroup alternating_group(std::size_t n) {
  // Generated by the 3-cycles (0 1 k).
  std::vector<Perm> gens;
  for (std::size_t k = 2; k < n; ++k) {
    Perm p = identity_perm(n);
    p[0] = 1;
    p[1] = static_cast<std::uint8_t>(k);
    p[k] = 0;
    gens.push_back(p);
  }
  return perm_group(n, gens);
}

GeneratedGroup quaternion_group() { return mat2_mod3_group({{0, 1, 2, 0}, {1, 1, 1, 2}}); }

GeneratedGroup special_linear_2_3() {
  return mat2_mod3_group({{0, 1, 2, 0}, {1, 1, 1, 2}, {1, 1, 0, 1}});
}

GeneratedGroup heisenberg_group(std::uint32_t q) {
  // (a, b, c) <-> [[1, a, c], [0, 1, b], [0, 0, 1]].
  using T = std::array<std::uint32_t, 3>;
  auto mul = [q](const T& x, const T& y) {
    return T{(x[0] + y[0]) % q, (x[1] + y[1]) % q, (x[2] + y[2] + x[0] * y[1]) % q};
  };
  auto label = [](const T& x) {
    return "(" + std::to_string(x[0]) + "," + std::to_string(x[1]) + "," + std::to_string(x[2]) + ")";
  };
  return generate_group(T{0, 0, 0}, {T{1, 0, 0}, T{0, 1, 0}, T{0, 0, 1}}, mul, label);
}

GeneratedGroup metacyclic_group(std::uint32_t n, std::uint32_t m, std::uint32_t a) {
  // (x, y) <-> t^y applied after translation; (x1, y1)(x2, y2) = (x1 + a^y1 x2, y1 + y2).
  using T = std::array<std::uint32_t, 2>;
  std::vector<std::uint32_t> apow(m, 1);
  for (std::uint32_t i = 1; i < m; ++i) apow[i] = apow[i - 1] * a % n;
  if (apow[m - 1] * a % n != 1) throw std::invalid_argument("metacyclic_group: a^m != 1 mod n");
  auto mul = [n, m, apow](const T& x, const T& y) {
    return T{(x[0] + apow[x[1]] * y[0]) % n, (x[1] + y[1]) % m};
  };
  auto label = [](const T& x) { return "(" + std::to_string(x[0]) + "," + std::to_string(x[1]) + ")"; };
  return generate_group(T{0, 0}, {T{1, 0}, T{0, 1}}, mul, label);
}

}  // namespace sfconj
