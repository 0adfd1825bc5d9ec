/**
 * @file structure_analysis.hpp
 * @brief Commutant, nuclei, center, associator, and the metagroup /
 *        invariance predicates, all by exhaustive scan with witnesses.
 *
 * Boolean predicates report the first violating tuple in lexicographic
 * order, so failures are deterministic across runs.
 */
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "metaloop/binary_system.hpp"
#include "metaloop/subset.hpp"

namespace metaloop {

/// Witness for a failed predicate: the offending tuple of elements.
struct Witness {
  std::vector<elem> tuple;
  std::string detail;
};

struct CheckResult {
  bool ok = true;
  std::optional<Witness> witness;
  explicit operator bool() const { return ok; }
};

inline CheckResult check_pass() { return CheckResult{}; }

inline CheckResult check_fail(std::vector<elem> tuple, std::string detail) {
  CheckResult r;
  r.ok = false;
  r.witness = Witness{std::move(tuple), std::move(detail)};
  return r;
}

/// Itemized pass/fail report with one witness per failed item.
struct ReportItem {
  std::string name;
  bool pass = true;
  std::optional<Witness> witness;
};

struct Report {
  std::vector<ReportItem> items;
  bool all_pass = true;

  void add(std::string name, CheckResult r) {
    all_pass = all_pass && r.ok;
    items.push_back(ReportItem{std::move(name), r.ok, std::move(r.witness)});
  }

  const ReportItem* find(const std::string& name) const {
    for (const auto& it : items)
      if (it.name == name) return &it;
    return nullptr;
  }
};

/// Com(G): elements commuting with the whole carrier.
inline Subset commutant(const BinarySystem& T) {
  Subset out(T.order());
  for (elem a = 0; a < T.order(); ++a) {
    bool ok = true;
    for (elem b = 0; b < T.order() && ok; ++b) ok = T.raw_mul(a, b) == T.raw_mul(b, a);
    if (ok) out.add(a);
  }
  return out;
}

namespace detail {

enum class NucleusSlot { left, middle, right };

inline bool in_nucleus(const BinarySystem& T, elem a, NucleusSlot slot) {
  for (elem b = 0; b < T.order(); ++b)
    for (elem c = 0; c < T.order(); ++c) {
      bool ok = true;
      switch (slot) {
        case NucleusSlot::left:
          ok = T.raw_mul(T.raw_mul(a, b), c) == T.raw_mul(a, T.raw_mul(b, c));
          break;
        case NucleusSlot::middle:
          ok = T.raw_mul(T.raw_mul(b, a), c) == T.raw_mul(b, T.raw_mul(a, c));
          break;
        case NucleusSlot::right:
          ok = T.raw_mul(T.raw_mul(b, c), a) == T.raw_mul(b, T.raw_mul(c, a));
          break;
      }
      if (!ok) return false;
    }
  return true;
}

inline Subset nucleus_scan(const BinarySystem& T, NucleusSlot slot) {
  Subset out(T.order());
  for (elem a = 0; a < T.order(); ++a)
    if (in_nucleus(T, a, slot)) out.add(a);
  return out;
}

}  // namespace detail

inline Subset nucleus_left(const BinarySystem& T) {
  return detail::nucleus_scan(T, detail::NucleusSlot::left);
}
inline Subset nucleus_middle(const BinarySystem& T) {
  return detail::nucleus_scan(T, detail::NucleusSlot::middle);
}
inline Subset nucleus_right(const BinarySystem& T) {
  return detail::nucleus_scan(T, detail::NucleusSlot::right);
}

/// N(G) = N_l(G) n N_m(G) n N_r(G).
inline Subset nucleus(const BinarySystem& T) {
  return nucleus_left(T).intersect(nucleus_middle(T)).intersect(nucleus_right(T));
}

/// C(G) = Com(G) n N(G).
inline Subset center(const BinarySystem& T) { return commutant(T).intersect(nucleus(T)); }

/// The unique t with (ab)c = t * (a(bc)).  Defined in any loop; lands in the
/// center exactly when the loop is a metagroup.
inline elem associator_t(const BinarySystem& T, elem a, elem b, elem c) {
  return T.div_r(T.mul(T.mul(a, b), c), T.mul(a, T.mul(b, c)));
}

/// t2 with ab = t2 * ba.
inline elem commutator_t2(const BinarySystem& T, elem a, elem b) {
  return T.div_r(T.mul(a, b), T.mul(b, a));
}

/// True iff T is a loop and every associator is central.  On failure the
/// witness is the lexicographically first non-central triple (or empty when
/// T is not even a loop).
inline CheckResult is_metagroup(const BinarySystem& T) {
  if (!T.is_loop()) return check_fail({}, "not a loop");
  Subset c = center(T);
  for (elem a = 0; a < T.order(); ++a)
    for (elem b = 0; b < T.order(); ++b)
      for (elem x = 0; x < T.order(); ++x) {
        elem t = associator_t(T, a, b, x);
        if (!c.contains(t))
          return check_fail({a, b, x}, "associator t = " + T.display(t) + " is not central");
      }
  return check_pass();
}

/// True iff T is a metagroup and every t2(a,b) is central.
inline CheckResult is_central_metagroup(const BinarySystem& T) {
  CheckResult meta = is_metagroup(T);
  if (!meta.ok) return meta;
  Subset c = center(T);
  for (elem a = 0; a < T.order(); ++a)
    for (elem b = 0; b < T.order(); ++b) {
      elem t2 = commutator_t2(T, a, b);
      if (!c.contains(t2))
        return check_fail({a, b}, "t2 = " + T.display(t2) + " is not central");
    }
  return check_pass();
}

/// Closure of S under mul, div_l and div_r, containing the identity.
inline CheckResult is_submetagroup(const BinarySystem& T, const Subset& S) {
  if (!T.is_loop()) return check_fail({}, "parent is not a loop");
  if (!S.contains(*T.identity())) return check_fail({*T.identity()}, "identity not in subset");
  auto ms = S.members();
  for (elem a : ms)
    for (elem b : ms) {
      if (!S.contains(T.raw_mul(a, b))) return check_fail({a, b}, "not closed under mul");
      if (!S.contains(T.raw_ldiv(a, b))) return check_fail({a, b}, "not closed under div_l");
      if (!S.contains(T.raw_rdiv(a, b))) return check_fail({a, b}, "not closed under div_r");
    }
  return check_pass();
}

/// gH = Hg for every g (condition (1.1.11)).
inline CheckResult is_almost_invariant(const BinarySystem& T, const Subset& S) {
  for (elem g = 0; g < T.order(); ++g) {
    if (left_translate(T, g, S) != right_translate(T, S, g))
      return check_fail({g}, "gH != Hg");
  }
  return check_pass();
}

/// (1.1.11) plus the mixed associativity conditions (1.1.12):
/// (gH)k = g(Hk) and k(gH) = (kg)H for all g, k.
inline CheckResult is_invariant(const BinarySystem& T, const Subset& S) {
  CheckResult almost = is_almost_invariant(T, S);
  if (!almost.ok) return almost;
  for (elem g = 0; g < T.order(); ++g) {
    Subset gH = left_translate(T, g, S);
    Subset Hg = right_translate(T, S, g);
    for (elem k = 0; k < T.order(); ++k) {
      if (right_translate(T, gH, k) != left_translate(T, g, right_translate(T, S, k)))
        return check_fail({g, k}, "(gH)k != g(Hk)");
      if (left_translate(T, k, gH) != right_translate(T, S, T.raw_mul(k, g)))
        return check_fail({g, k}, "k(gH) != (kg)H");
    }
    (void)Hg;
  }
  return check_pass();
}

/// C_m(D): the smallest subgroup containing every associator value, closed
/// under mul and div_l (worklist closure; finiteness terminates it).
inline Subset minimal_t_subgroup(const BinarySystem& T) {
  if (!T.is_loop()) throw StructureError("minimal_t_subgroup requires a loop");
  Subset out(T.order());
  std::vector<elem> work;
  auto push = [&](elem x) {
    if (!out.contains(x)) {
      out.add(x);
      work.push_back(x);
    }
  };
  push(*T.identity());
  for (elem a = 0; a < T.order(); ++a)
    for (elem b = 0; b < T.order(); ++b)
      for (elem c = 0; c < T.order(); ++c) push(associator_t(T, a, b, c));
  while (!work.empty()) {
    elem x = work.back();
    work.pop_back();
    for (elem y : out.members()) {
      push(T.raw_mul(x, y));
      push(T.raw_mul(y, x));
      push(T.raw_ldiv(x, y));
      push(T.raw_ldiv(y, x));
      push(T.raw_rdiv(x, y));
      push(T.raw_rdiv(y, x));
    }
  }
  return out;
}

/// Convenience: classification consistent with the cached tag.
inline ClassTag classify(const BinarySystem& T) { return T.class_tag(); }

}  // namespace metaloop
