#pragma once

// Finite groups as explicit multiplication tables, element 0 the identity.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace sfconj {

using Element = std::uint32_t;

class FiniteGroupTable {
 public:
  FiniteGroupTable() : FiniteGroupTable(std::vector<std::vector<Element>>{{0}}) {}
  /// table[a][b] == a * b. Checks identity at 0, inverses and associativity.
  explicit FiniteGroupTable(std::vector<std::vector<Element>> table,
                            std::vector<std::string> labels = {});

  std::size_t order() const { return table_.size(); }
  Element mul(Element a, Element b) const { return table_[a][b]; }
  Element inv(Element a) const { return inverse_[a]; }
  Element pow(Element a, long long k) const;
  std::size_t element_order(Element a) const;
  /// w^-1 g w.
  Element conjugate(Element g, Element w) const { return mul(mul(inv(w), g), w); }
  const std::string& label(Element a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<Element>>& table() const { return table_; }

  /// Index of the conjugacy class of a; classes numbered by least member.
  std::size_t class_id(Element a) const { return class_id_[a]; }
  bool are_conjugate(Element a, Element b) const { return class_id_[a] == class_id_[b]; }
  std::vector<Element> conjugacy_class(Element a) const;
  std::vector<std::vector<Element>> conjugacy_classes() const;
  bool is_abelian() const;

  /// Sorted elements of the subgroup generated by `gens`.
  std::vector<Element> subgroup(const std::vector<Element>& gens) const;
  bool is_subgroup(const std::vector<Element>& elements) const;
  bool is_normal(const std::vector<Element>& elements) const;

 private:
  std::vector<std::vector<Element>> table_;
  std::vector<Element> inverse_;
  std::vector<std::string> labels_;
  std::vector<std::size_t> class_id_;
};

/// The subgroup `elements` (sorted, containing 0) as a table of its own;
/// index i corresponds to elements[i].
FiniteGroupTable induced_table(const FiniteGroupTable& g, const std::vector<Element>& elements);

FiniteGroupTable direct_product(const FiniteGroupTable& a, const FiniteGroupTable& b);

struct GeneratedGroup {
  FiniteGroupTable table;
  /// Indices of the generators in `table`.
  std::vector<Element> generators;
};

class GroupTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Closure of `gens` under `mul` starting from `identity`. Elements are
/// numbered in breadth-first order. Throws GroupTooLarge past `max_order`.
template <class T, class Mul, class Label>
GeneratedGroup generate_group(const T& identity, const std::vector<T>& gens, Mul mul,
                              Label label, std::size_t max_order = 1024) {
  std::vector<T> elems{identity};
  std::map<T, Element> index{{identity, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      T next = mul(elems[i], g);
      if (index.count(next)) continue;
      if (elems.size() >= max_order) throw GroupTooLarge("generated group exceeds the order limit");
      index.emplace(next, static_cast<Element>(elems.size()));
      elems.push_back(std::move(next));
    }
  }
  const std::size_t n = elems.size();
  std::vector<std::vector<Element>> table(n, std::vector<Element>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) table[a][b] = index.at(mul(elems[a], elems[b]));
  }
  std::vector<std::string> labels;
  labels.reserve(n);
  for (const auto& e : elems) labels.push_back(label(e));
  std::vector<Element> gen_idx;
  for (const auto& g : gens) gen_idx.push_back(index.at(g));
  return {FiniteGroupTable(std::move(table), std::move(labels)), std::move(gen_idx)};
}

nlohmann::json to_json(const FiniteGroupTable& g);
FiniteGroupTable group_from_json(const nlohmann::json& j);

// Concrete families.
GeneratedGroup cyclic_group(std::size_t n);
GeneratedGroup dihedral_group(std::size_t n);    ///< order 2n; generators r, s
GeneratedGroup symmetric_group(std::size_t n);   ///< generators (0 1), (0 1 ... n-1)
GeneratedGroup alternating_group(std::size_t n);
GeneratedGroup quaternion_group();               ///< generators i, j
GeneratedGroup special_linear_2_3();             ///< SL(2, 3); generators i, j, u
GeneratedGroup heisenberg_group(std::uint32_t q);  ///< unitriangular 3x3 mod q; X, Y, Z
/// Z/n semidirect Z/m with the generator of Z/m acting by multiplication by a.
GeneratedGroup metacyclic_group(std::uint32_t n, std::uint32_t m, std::uint32_t a);

}  // namespace sfconj
