#pragma once

#include "skewtilt/field.hpp"

#include <string>
#include <vector>

namespace skewtilt {

/// Finite group given by an explicit multiplication table. Element 0 is the
/// identity; table[i][j] is the index of the product g_i * g_j.
struct FiniteGroup {
  std::vector<std::string> elements;
  std::vector<std::vector<int>> table;

  int order() const { return static_cast<int>(elements.size()); }
  int mul(int i, int j) const { return table[i][j]; }

  int inverse(int i) const {
    for (int j = 0; j < order(); ++j)
      if (table[i][j] == 0) return j;
    throw Error(ErrorCode::InvalidInput, "group element without inverse");
  }

  int element_order(int g) const {
    int x = g, n = 1;
    while (x != 0) {
      x = mul(x, g);
      ++n;
      if (n > order()) throw Error(ErrorCode::InvalidInput, "broken multiplication table");
    }
    return n;
  }

  /// Index of a generator when the group is cyclic, -1 otherwise.
  int cyclic_generator() const {
    for (int g = 0; g < order(); ++g)
      if (element_order(g) == order()) return g;
    return -1;
  }

  int power(int g, int k) const {
    int x = 0;
    for (int i = 0; i < k; ++i) x = mul(x, g);
    return x;
  }

  void validate() const {
    int n = order();
    if (n == 0) throw Error(ErrorCode::InvalidInput, "empty group");
    if ((int)table.size() != n) throw Error(ErrorCode::InvalidInput, "multiplication table size mismatch");
    for (const auto& row : table) {
      if ((int)row.size() != n) throw Error(ErrorCode::InvalidInput, "multiplication table row size mismatch");
      for (int v : row)
        if (v < 0 || v >= n) throw Error(ErrorCode::InvalidInput, "multiplication table entry out of range");
    }
    for (int i = 0; i < n; ++i)
      if (table[0][i] != i || table[i][0] != i)
        throw Error(ErrorCode::InvalidInput, "element 0 is not a two-sided identity");
    for (int i = 0; i < n; ++i) inverse(i);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (table[table[i][j]][k] != table[i][table[j][k]])
            throw Error(ErrorCode::InvalidInput, "multiplication table is not associative");
  }

  static FiniteGroup trivial() { return FiniteGroup{{"1"}, {{0}}}; }

  static FiniteGroup cyclic(int n) {
    FiniteGroup g;
    for (int i = 0; i < n; ++i) g.elements.push_back(i == 0 ? "1" : "s" + std::to_string(i));
    g.table.assign(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g.table[i][j] = (i + j) % n;
    return g;
  }

  static FiniteGroup klein_four() {
    FiniteGroup g;
    g.elements = {"1", "a", "b", "ab"};
    g.table = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    return g;
  }
};

/// Smallest prime p with n | p-1 and p coprime to n (so GF(p) has the needed
/// roots of unity). Used in error messages.
inline std::int64_t suggest_prime_with_roots(int n) {
  for (std::int64_t p = n + 1;; p += n)
    if (FieldSpec::is_prime(p)) return p;
}

}  // namespace skewtilt
