/**
 * @file binary_system.hpp
 * @brief Cayley-table representation of finite binary systems.
 *
 * A BinarySystem is an order-n carrier {0,...,n-1} together with an n x n
 * multiplication table.  On construction the table is validated, an identity
 * (if any) is normalized to index 0, both division tables are precomputed,
 * and the structure is classified on the chain
 *
 *   magma < quasigroup < loop < metagroup < central metagroup / group.
 *
 * Instances are immutable; every operation is a pure read.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metaloop/errors.hpp"

namespace metaloop {

/// Element of a finite binary system: a dense index in 0..order-1.
using elem = int;

/// Strongest-first classification tags.  `group` beats `central_metagroup`
/// when both hold; neither implies the other in general.
enum class ClassTag : int {
  magma = 0,
  quasigroup = 1,
  loop = 2,
  metagroup = 3,
  central_metagroup = 4,
  group = 5,
};

inline const char* to_string(ClassTag t) {
  switch (t) {
    case ClassTag::magma: return "magma";
    case ClassTag::quasigroup: return "quasigroup";
    case ClassTag::loop: return "loop";
    case ClassTag::metagroup: return "metagroup";
    case ClassTag::central_metagroup: return "central-metagroup";
    case ClassTag::group: return "group";
  }
  return "?";
}

class BinarySystem {
 public:
  /// The trivial one-element group.
  BinarySystem() : BinarySystem(std::vector<std::vector<elem>>{{0}}) {}

  /// Builds and classifies a system from explicit table rows.  Throws
  /// InputError on ragged rows or out-of-range entries.  If a two-sided
  /// identity exists at an index other than 0, the table is relabeled by the
  /// transposition swapping it with 0 (names follow).
  explicit BinarySystem(std::vector<std::vector<elem>> rows,
                        std::optional<std::vector<std::string>> names = std::nullopt) {
    order_ = static_cast<int>(rows.size());
    if (order_ <= 0) throw InputError("table must have positive order");
    if (order_ > 65535) throw InputError("order exceeds 65535");
    table_.resize(static_cast<std::size_t>(order_) * order_);
    for (int a = 0; a < order_; ++a) {
      if (static_cast<int>(rows[a].size()) != order_)
        throw InputError("row " + std::to_string(a) + " has length " +
                         std::to_string(rows[a].size()) + ", expected " + std::to_string(order_));
      for (int b = 0; b < order_; ++b) {
        elem v = rows[a][b];
        if (v < 0 || v >= order_)
          throw InputError("table[" + std::to_string(a) + "][" + std::to_string(b) + "] = " +
                           std::to_string(v) + " out of range for order " + std::to_string(order_));
        table_[idx(a, b)] = static_cast<std::uint16_t>(v);
      }
    }
    if (names) {
      if (static_cast<int>(names->size()) != order_)
        throw InputError("names list has wrong length");
      names_ = std::move(names);
    }
    normalize_identity();
    classify_now();
  }

  int order() const { return order_; }

  /// a*b.
  elem mul(elem a, elem b) const {
    check_elem(a);
    check_elem(b);
    return table_[idx(a, b)];
  }

  /// The unique x with a*x = b (notation a\b).  Requires a quasigroup.
  elem div_l(elem a, elem b) const {
    require_quasigroup();
    check_elem(a);
    check_elem(b);
    return ldiv_[idx(a, b)];
  }

  /// The unique y with y*a = b (notation b/a).  Requires a quasigroup.
  elem div_r(elem b, elem a) const {
    require_quasigroup();
    check_elem(a);
    check_elem(b);
    return rdiv_[idx(b, a)];
  }

  /// Inv_l(a) = a\e.  Requires a loop.
  elem inv_l(elem a) const {
    require_identity();
    return div_l(a, *identity_);
  }

  /// Inv_r(a) = e/a.  Requires a loop.
  elem inv_r(elem a) const {
    require_identity();
    return div_r(*identity_, a);
  }

  std::optional<elem> identity() const { return identity_; }

  /// Cached classification; recomputing would reproduce it.
  ClassTag class_tag() const { return tag_; }

  /// True when the tag certifies at least `floor` on the chain
  /// magma < quasigroup < loop < metagroup < group.  Do not pass
  /// central_metagroup here; query is_central_metagroup_tag() instead.
  bool at_least(ClassTag floor) const {
    if (floor == ClassTag::central_metagroup) return central_ok_;
    if (floor == ClassTag::metagroup) return meta_ok_;
    return static_cast<int>(tag_) >= static_cast<int>(floor);
  }

  bool is_quasigroup() const { return latin_; }
  bool is_loop() const { return latin_ && identity_.has_value(); }
  bool is_associative() const { return assoc_; }
  /// Classification-route metagroup flag (structure_analysis re-derives the
  /// same fact independently with witnesses).
  bool is_metagroup_tag() const { return meta_ok_; }
  bool is_central_metagroup_tag() const { return central_ok_; }

  const std::optional<std::vector<std::string>>& names() const { return names_; }

  std::string display(elem a) const {
    if (names_) return (*names_)[static_cast<std::size_t>(a)];
    return std::to_string(a);
  }

  /// Table rows (post-normalization), mainly for serialization.
  std::vector<std::vector<elem>> rows() const {
    std::vector<std::vector<elem>> out(static_cast<std::size_t>(order_));
    for (int a = 0; a < order_; ++a) {
      out[a].resize(static_cast<std::size_t>(order_));
      for (int b = 0; b < order_; ++b) out[a][b] = table_[idx(a, b)];
    }
    return out;
  }

  bool same_table(const BinarySystem& other) const {
    return order_ == other.order_ && table_ == other.table_;
  }

  // Unchecked variants for inner loops.
  elem raw_mul(elem a, elem b) const { return table_[idx(a, b)]; }
  elem raw_ldiv(elem a, elem b) const { return ldiv_[idx(a, b)]; }
  elem raw_rdiv(elem b, elem a) const { return rdiv_[idx(b, a)]; }

 private:
  std::size_t idx(elem a, elem b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(order_) +
           static_cast<std::size_t>(b);
  }

  void check_elem(elem a) const {
    if (a < 0 || a >= order_)
      throw InputError("element index " + std::to_string(a) + " out of range for order " +
                       std::to_string(order_));
  }

  void require_quasigroup() const {
    if (!latin_)
      throw StructureError("division undefined: structure is not a quasigroup");
  }

  void require_identity() const {
    if (!identity_)
      throw StructureError("no identity element: structure is not a loop");
  }

  void normalize_identity() {
    int e = -1;
    for (int c = 0; c < order_; ++c) {
      bool ok = true;
      for (int g = 0; g < order_ && ok; ++g)
        ok = table_[idx(c, g)] == g && table_[idx(g, c)] == g;
      if (ok) {
        e = c;
        break;
      }
    }
    if (e < 0) return;
    if (e != 0) {
      // Relabel by the transposition (0 e).
      auto p = [&](elem x) -> elem { return x == 0 ? e : (x == e ? 0 : x); };
      std::vector<std::uint16_t> moved(table_.size());
      for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
          moved[idx(p(a), p(b))] = static_cast<std::uint16_t>(p(table_[idx(a, b)]));
      table_ = std::move(moved);
      if (names_) std::swap((*names_)[0], (*names_)[static_cast<std::size_t>(e)]);
    }
    identity_ = 0;
  }

  void classify_now() {
    latin_ = check_latin();
    if (latin_) build_division_tables();
    assoc_ = latin_ ? associative_light() : associative_direct();
    meta_ok_ = false;
    central_ok_ = false;
    if (latin_ && identity_) {
      if (assoc_) {
        meta_ok_ = true;
        compute_center();
        central_ok_ = all_t2_central();
      } else {
        compute_center();
        meta_ok_ = all_associators_central();
        central_ok_ = meta_ok_ && all_t2_central();
      }
    }
    if (latin_ && identity_ && assoc_)
      tag_ = ClassTag::group;
    else if (central_ok_)
      tag_ = ClassTag::central_metagroup;
    else if (meta_ok_)
      tag_ = ClassTag::metagroup;
    else if (latin_ && identity_)
      tag_ = ClassTag::loop;
    else if (latin_)
      tag_ = ClassTag::quasigroup;
    else
      tag_ = ClassTag::magma;
  }

  bool check_latin() const {
    std::vector<char> seen(static_cast<std::size_t>(order_));
    for (int a = 0; a < order_; ++a) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int b = 0; b < order_; ++b) {
        elem v = table_[idx(a, b)];
        if (seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
      }
    }
    for (int b = 0; b < order_; ++b) {
      std::fill(seen.begin(), seen.end(), 0);
      for (int a = 0; a < order_; ++a) {
        elem v = table_[idx(a, b)];
        if (seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
      }
    }
    return true;
  }

  void build_division_tables() {
    ldiv_.resize(table_.size());
    rdiv_.resize(table_.size());
    for (int a = 0; a < order_; ++a)
      for (int b = 0; b < order_; ++b) {
        elem v = table_[idx(a, b)];
        ldiv_[idx(a, v)] = static_cast<std::uint16_t>(b);  // a\v = b
        rdiv_[idx(v, b)] = static_cast<std::uint16_t>(a);  // v/b = a
      }
  }

  // Light's associativity test: if (a s) c = a (s c) for every s in a set
  // whose multiplicative closure is the whole carrier, the middle slot
  // propagates over products and the table is associative.
  bool associative_light() const {
    std::vector<char> in_closure(static_cast<std::size_t>(order_), 0);
    std::vector<elem> closure;
    std::vector<elem> gens;
    closure.reserve(static_cast<std::size_t>(order_));
    auto absorb = [&](elem g) {
      std::vector<elem> work{g};
      if (!in_closure[static_cast<std::size_t>(g)]) {
        in_closure[static_cast<std::size_t>(g)] = 1;
        closure.push_back(g);
      }
      while (!work.empty()) {
        elem x = work.back();
        work.pop_back();
        for (std::size_t i = 0; i < closure.size(); ++i) {
          elem y = closure[i];
          for (elem z : {table_[idx(x, y)], table_[idx(y, x)]}) {
            if (!in_closure[static_cast<std::size_t>(z)]) {
              in_closure[static_cast<std::size_t>(z)] = 1;
              closure.push_back(z);
              work.push_back(z);
            }
          }
        }
      }
    };
    for (elem g = 0; g < order_; ++g) {
      if (in_closure[static_cast<std::size_t>(g)]) continue;
      gens.push_back(g);
      absorb(g);
    }
    for (elem s : gens)
      for (elem a = 0; a < order_; ++a) {
        elem as = table_[idx(a, s)];
        for (elem c = 0; c < order_; ++c)
          if (table_[idx(as, c)] != table_[idx(a, table_[idx(s, c)])]) return false;
      }
    return true;
  }

  bool associative_direct() const {
    for (elem a = 0; a < order_; ++a)
      for (elem b = 0; b < order_; ++b) {
        elem ab = table_[idx(a, b)];
        for (elem c = 0; c < order_; ++c)
          if (table_[idx(ab, c)] != table_[idx(a, table_[idx(b, c)])]) return false;
      }
    return true;
  }

  // Center membership used by the classification route only;
  // structure_analysis owns the public, witness-reporting computation.
  void compute_center() {
    in_center_.assign(static_cast<std::size_t>(order_), 0);
    for (elem x = 0; x < order_; ++x) {
      bool ok = true;
      for (elem b = 0; b < order_ && ok; ++b)
        ok = table_[idx(x, b)] == table_[idx(b, x)];
      if (ok && !assoc_) {
        // x must lie in all three nuclei.
        for (elem b = 0; b < order_ && ok; ++b)
          for (elem c = 0; c < order_ && ok; ++c) {
            ok = table_[idx(table_[idx(x, b)], c)] == table_[idx(x, table_[idx(b, c)])] &&
                 table_[idx(table_[idx(b, x)], c)] == table_[idx(b, table_[idx(x, c)])] &&
                 table_[idx(table_[idx(b, c)], x)] == table_[idx(b, table_[idx(c, x)])];
          }
      }
      in_center_[static_cast<std::size_t>(x)] = ok ? 1 : 0;
    }
  }

  bool all_associators_central() const {
    for (elem a = 0; a < order_; ++a)
      for (elem b = 0; b < order_; ++b) {
        elem ab = table_[idx(a, b)];
        for (elem c = 0; c < order_; ++c) {
          elem lhs = table_[idx(ab, c)];
          elem rhs = table_[idx(a, table_[idx(b, c)])];
          elem t = rdiv_[idx(lhs, rhs)];
          if (!in_center_[static_cast<std::size_t>(t)]) return false;
        }
      }
    return true;
  }

  bool all_t2_central() const {
    for (elem a = 0; a < order_; ++a)
      for (elem b = 0; b < order_; ++b) {
        elem t2 = rdiv_[idx(table_[idx(a, b)], table_[idx(b, a)])];
        if (!in_center_[static_cast<std::size_t>(t2)]) return false;
      }
    return true;
  }

  int order_ = 0;
  std::vector<std::uint16_t> table_;
  std::vector<std::uint16_t> ldiv_;
  std::vector<std::uint16_t> rdiv_;
  std::optional<std::vector<std::string>> names_;
  std::optional<elem> identity_;
  std::vector<char> in_center_;
  ClassTag tag_ = ClassTag::magma;
  bool latin_ = false;
  bool assoc_ = false;
  bool meta_ok_ = false;
  bool central_ok_ = false;
};

}  // namespace metaloop
