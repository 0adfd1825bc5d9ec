// Brute-force reference implementations used only by tests.  They stay
// independent of the library's precomputed tables and closure tricks so the
// suites genuinely cross-check two routes.
#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "metaloop/binary_system.hpp"

namespace oracles {

using metaloop::elem;

using Rows = std::vector<std::vector<elem>>;

inline std::optional<elem> brute_div_l(const Rows& t, elem a, elem b) {
  std::optional<elem> found;
  for (elem x = 0; x < static_cast<elem>(t.size()); ++x)
    if (t[a][x] == b) {
      if (found) return std::nullopt;  // not unique
      found = x;
    }
  return found;
}

inline std::optional<elem> brute_div_r(const Rows& t, elem b, elem a) {
  std::optional<elem> found;
  for (elem y = 0; y < static_cast<elem>(t.size()); ++y)
    if (t[y][a] == b) {
      if (found) return std::nullopt;
      found = y;
    }
  return found;
}

inline bool brute_associative(const Rows& t) {
  int n = static_cast<int>(t.size());
  for (elem a = 0; a < n; ++a)
    for (elem b = 0; b < n; ++b)
      for (elem c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) return false;
  return true;
}

inline std::optional<std::array<elem, 3>> brute_nonassoc_triple(const Rows& t) {
  int n = static_cast<int>(t.size());
  for (elem a = 0; a < n; ++a)
    for (elem b = 0; b < n; ++b)
      for (elem c = 0; c < n; ++c)
        if (t[t[a][b]][c] != t[a][t[b][c]]) return std::array<elem, 3>{a, b, c};
  return std::nullopt;
}

/// Enumerates every order-n loop with identity 0 (equivalently every reduced
/// Latin square bordered by the identity row/column), in lexicographic table
/// order, invoking fn on each completed table.
inline void brute_enumerate_loops(int n, const std::function<void(const Rows&)>& fn) {
  Rows t(static_cast<std::size_t>(n), std::vector<elem>(static_cast<std::size_t>(n), -1));
  for (int i = 0; i < n; ++i) {
    t[0][i] = i;
    t[i][0] = i;
  }
  std::vector<unsigned> row_used(static_cast<std::size_t>(n)), col_used(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    row_used[static_cast<std::size_t>(i)] = 1u << i;     // column 0 entry
    col_used[static_cast<std::size_t>(i)] = 1u << i;     // row 0 entry
  }
  row_used[0] = col_used[0] = (n >= 32 ? ~0u : (1u << n) - 1);
  std::function<void(int)> rec = [&](int cell) {
    if (cell == (n - 1) * (n - 1)) {
      fn(t);
      return;
    }
    int r = 1 + cell / (n - 1);
    int c = 1 + cell % (n - 1);
    for (elem v = 0; v < n; ++v) {
      unsigned bit = 1u << v;
      if ((row_used[static_cast<std::size_t>(r)] & bit) || (col_used[static_cast<std::size_t>(c)] & bit)) continue;
      t[r][c] = v;
      row_used[static_cast<std::size_t>(r)] |= bit;
      col_used[static_cast<std::size_t>(c)] |= bit;
      rec(cell + 1);
      row_used[static_cast<std::size_t>(r)] &= ~bit;
      col_used[static_cast<std::size_t>(c)] &= ~bit;
    }
    t[r][c] = -1;
  };
  rec(0);
}

}  // namespace oracles
