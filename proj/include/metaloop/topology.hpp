/**
 * @file topology.hpp
 * @brief Finite-topology machinery: neighborhood-base axioms (2.7.1)-(2.7.8),
 *        topology generation from bases, joint continuity of mul/div_l/div_r,
 *        and the W(S,Q) set algebra of Lemma 2.8.
 *
 * On a finite carrier T1 forces the discrete topology; reports state this
 * rather than silently passing, so nontrivial finite examples are expected
 * to be non-T1.
 */
#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "metaloop/binary_system.hpp"
#include "metaloop/errors.hpp"
#include "metaloop/function_space.hpp"
#include "metaloop/structure_analysis.hpp"
#include "metaloop/subset.hpp"

namespace metaloop {

namespace detail {

inline void canonicalize(std::vector<Subset>& sets) {
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

inline bool family_contains(const std::vector<Subset>& sorted, const Subset& s) {
  return std::binary_search(sorted.begin(), sorted.end(), s);
}

}  // namespace detail

/// A topology as the explicit list of open sets; closure under union and
/// pairwise intersection is verified on construction.
class FiniteTopology {
 public:
  FiniteTopology(int carrier, std::vector<Subset> opens) : n_(carrier), opens_(std::move(opens)) {
    detail::canonicalize(opens_);
    if (!detail::family_contains(opens_, Subset(n_)))
      throw InputError("topology must contain the empty set");
    if (!detail::family_contains(opens_, Subset::full(n_)))
      throw InputError("topology must contain the whole carrier");
    bool complete = n_ < 30 && opens_.size() == (std::size_t{1} << n_);
    if (!complete) {
      for (std::size_t i = 0; i < opens_.size(); ++i)
        for (std::size_t j = i + 1; j < opens_.size(); ++j) {
          if (!detail::family_contains(opens_, opens_[i].unite(opens_[j])))
            throw InputError("topology not closed under union: " + opens_[i].to_string() +
                             " | " + opens_[j].to_string());
          if (!detail::family_contains(opens_, opens_[i].intersect(opens_[j])))
            throw InputError("topology not closed under intersection: " + opens_[i].to_string() +
                             " & " + opens_[j].to_string());
        }
    }
  }

  static FiniteTopology discrete(int carrier) {
    if (carrier > 20) throw ResourceError("discrete topology too large to materialize");
    std::vector<Subset> opens;
    opens.reserve(std::size_t{1} << carrier);
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << carrier); ++mask) {
      Subset s(carrier);
      for (int g = 0; g < carrier; ++g)
        if (mask & (std::uint32_t{1} << g)) s.add(g);
      opens.push_back(std::move(s));
    }
    return FiniteTopology(carrier, std::move(opens));
  }

  static FiniteTopology indiscrete(int carrier) {
    return FiniteTopology(carrier, {Subset(carrier), Subset::full(carrier)});
  }

  int carrier() const { return n_; }
  const std::vector<Subset>& opens() const { return opens_; }
  bool is_open(const Subset& s) const { return detail::family_contains(opens_, s); }

  bool operator==(const FiniteTopology& other) const {
    return n_ == other.n_ && opens_ == other.opens_;
  }

  /// T1 <=> every singleton is the intersection of its open neighborhoods.
  bool is_t1() const {
    for (int g = 0; g < n_; ++g) {
      Subset meet = Subset::full(n_);
      for (const Subset& u : opens_)
        if (u.contains(g)) meet = meet.intersect(u);
      if (meet != Subset::singleton(n_, g)) return false;
    }
    return true;
  }

 private:
  int n_;
  std::vector<Subset> opens_;
};

/// Per-element collections B_g of subsets of the carrier.
struct BaseFamily {
  int carrier = 0;
  std::vector<std::vector<Subset>> at;  // index g -> B_g, canonicalized

  BaseFamily(int n, std::vector<std::vector<Subset>> families)
      : carrier(n), at(std::move(families)) {
    if (static_cast<int>(at.size()) != n) throw InputError("base family needs one entry per element");
    for (auto& f : at) detail::canonicalize(f);
  }

  static BaseFamily discrete(int n) {
    std::vector<std::vector<Subset>> fams(static_cast<std::size_t>(n));
    for (int g = 0; g < n; ++g) fams[static_cast<std::size_t>(g)] = {Subset::singleton(n, g)};
    return BaseFamily(n, std::move(fams));
  }
};

/// (2.7.9): B_g = { U in T : g in U }.
inline BaseFamily base_from_topology(const FiniteTopology& t) {
  std::vector<std::vector<Subset>> fams(static_cast<std::size_t>(t.carrier()));
  for (int g = 0; g < t.carrier(); ++g)
    for (const Subset& u : t.opens())
      if (u.contains(g)) fams[static_cast<std::size_t>(g)].push_back(u);
  return BaseFamily(t.carrier(), std::move(fams));
}

namespace detail {

inline std::vector<Subset> translate_family(const BinarySystem& G, const std::vector<Subset>& fam,
                                            int mode, elem h) {
  // mode 0: hU, 1: Uh, 2: h\U, 3: U/h
  std::vector<Subset> out;
  out.reserve(fam.size());
  for (const Subset& u : fam) {
    Subset v(G.order());
    for (elem x : u.members()) {
      switch (mode) {
        case 0: v.add(G.raw_mul(h, x)); break;
        case 1: v.add(G.raw_mul(x, h)); break;
        case 2: v.add(G.raw_ldiv(h, x)); break;
        default: v.add(G.raw_rdiv(x, h)); break;
      }
    }
    out.push_back(std::move(v));
  }
  canonicalize(out);
  return out;
}

}  // namespace detail

/// Theorem 2.7 items (2.7.1)-(2.7.8), each evaluated exhaustively.
inline Report verify_base_axioms(const BinarySystem& G, const BaseFamily& base) {
  if (base.carrier != G.order()) throw InputError("base family carrier mismatch");
  if (!G.is_quasigroup()) throw StructureError("base axioms require a quasigroup");
  const int n = G.order();
  Report rep;

  {  // (2.7.1) B_{hg} = h B_g and B_{gh} = B_g h.
    CheckResult r = check_pass();
    for (elem h = 0; h < n && r.ok; ++h)
      for (elem g = 0; g < n; ++g) {
        if (base.at[static_cast<std::size_t>(G.raw_mul(h, g))] !=
            detail::translate_family(G, base.at[static_cast<std::size_t>(g)], 0, h)) {
          r = check_fail({h, g}, "B_{hg} != h B_g");
          break;
        }
        if (base.at[static_cast<std::size_t>(G.raw_mul(g, h))] !=
            detail::translate_family(G, base.at[static_cast<std::size_t>(g)], 1, h)) {
          r = check_fail({h, g}, "B_{gh} != B_g h");
          break;
        }
      }
    rep.add("(2.7.1)", r);
  }

  {  // (2.7.2) B_{h\g} = h\B_g and B_{g/h} = B_g/h.
    CheckResult r = check_pass();
    for (elem h = 0; h < n && r.ok; ++h)
      for (elem g = 0; g < n; ++g) {
        if (base.at[static_cast<std::size_t>(G.raw_ldiv(h, g))] !=
            detail::translate_family(G, base.at[static_cast<std::size_t>(g)], 2, h)) {
          r = check_fail({h, g}, "B_{h\\g} != h\\B_g");
          break;
        }
        if (base.at[static_cast<std::size_t>(G.raw_rdiv(g, h))] !=
            detail::translate_family(G, base.at[static_cast<std::size_t>(g)], 3, h)) {
          r = check_fail({h, g}, "B_{g/h} != B_g/h");
          break;
        }
      }
    rep.add("(2.7.2)", r);
  }

  {  // (2.7.3) every member of B_g contains g.
    CheckResult r = check_pass();
    for (elem g = 0; g < n && r.ok; ++g) {
      if (base.at[static_cast<std::size_t>(g)].empty()) {
        r = check_fail({g}, "B_g is empty");
        break;
      }
      for (const Subset& u : base.at[static_cast<std::size_t>(g)])
        if (!u.contains(g)) {
          r = check_fail({g}, "a member of B_g misses g");
          break;
        }
    }
    rep.add("(2.7.3)", r);
  }

  // (2.7.4)-(2.7.6): product/quotient refinement conditions.
  auto refinement = [&](int which) {
    CheckResult r = check_pass();
    for (elem g = 0; g < n && r.ok; ++g)
      for (const Subset& ug : base.at[static_cast<std::size_t>(g)]) {
        if (!r.ok) break;
        for (elem a = 0; a < n; ++a) {
          elem b = which == 0 ? G.raw_ldiv(a, g)   // a b = g
                   : which == 1 ? G.raw_ldiv(g, a)  // a / b ... b = g\a so a/b = g
                                : G.raw_rdiv(a, g);  // b \ a = g
          bool found = false;
          for (const Subset& ua : base.at[static_cast<std::size_t>(a)]) {
            for (const Subset& ub : base.at[static_cast<std::size_t>(b)]) {
              bool inside = true;
              for (elem x : ua.members()) {
                for (elem y : ub.members()) {
                  elem z = which == 0 ? G.raw_mul(x, y)
                           : which == 1 ? G.raw_rdiv(x, y)
                                        : G.raw_ldiv(y, x);
                  if (!ug.contains(z)) {
                    inside = false;
                    break;
                  }
                }
                if (!inside) break;
              }
              if (inside) {
                found = true;
                break;
              }
            }
            if (found) break;
          }
          if (!found) {
            r = check_fail({g, a}, "no base pair refines U_g");
            break;
          }
        }
      }
    return r;
  };
  rep.add("(2.7.4)", refinement(0));
  rep.add("(2.7.5)", refinement(1));
  rep.add("(2.7.6)", refinement(2));

  {  // (2.7.7) directedness under intersection.
    CheckResult r = check_pass();
    for (elem g = 0; g < n && r.ok; ++g)
      for (const Subset& u : base.at[static_cast<std::size_t>(g)]) {
        if (!r.ok) break;
        for (const Subset& v : base.at[static_cast<std::size_t>(g)]) {
          Subset meet = u.intersect(v);
          bool found = false;
          for (const Subset& w : base.at[static_cast<std::size_t>(g)])
            if (w.subset_of(meet) && w.contains(g)) {
              found = true;
              break;
            }
          if (!found) {
            r = check_fail({g}, "no W in B_g inside U & V");
            break;
          }
        }
      }
    rep.add("(2.7.7)", r);
  }

  {  // (2.7.8) the intersection of B_g is {g}.
    CheckResult r = check_pass();
    for (elem g = 0; g < n; ++g) {
      Subset meet = Subset::full(n);
      for (const Subset& u : base.at[static_cast<std::size_t>(g)]) meet = meet.intersect(u);
      if (base.at[static_cast<std::size_t>(g)].empty() || meet != Subset::singleton(n, g)) {
        r = check_fail({g}, "intersection of B_g is " + meet.to_string() + ", not {g}");
        break;
      }
    }
    rep.add("(2.7.8)", r);
  }

  return rep;
}

/// (2.7.11): all unions of subfamilies of the base; asserts the result is
/// intersection-closed, which is what (2.7.7) guarantees for valid bases.
inline FiniteTopology topology_from_base(const BaseFamily& base,
                                         std::size_t max_opens = std::size_t{1} << 20) {
  std::vector<Subset> sets;
  sets.push_back(Subset(base.carrier));
  for (const auto& fam : base.at)
    for (const Subset& u : fam) sets.push_back(u);
  detail::canonicalize(sets);
  // Union closure to a fixpoint.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Subset> fresh;
    for (std::size_t a = 0; a < sets.size(); ++a)
      for (std::size_t b = a + 1; b < sets.size(); ++b) {
        Subset u = sets[a].unite(sets[b]);
        if (!detail::family_contains(sets, u)) fresh.push_back(std::move(u));
      }
    if (!fresh.empty()) {
      grew = true;
      sets.insert(sets.end(), fresh.begin(), fresh.end());
      detail::canonicalize(sets);
      if (sets.size() > max_opens) throw ResourceError("generated topology exceeds the bound");
    }
  }
  if (!detail::family_contains(sets, Subset::full(base.carrier)))
    throw InputError("base invalid: the carrier is not a union of base sets");
  for (std::size_t a = 0; a < sets.size(); ++a)
    for (std::size_t b = a + 1; b < sets.size(); ++b)
      if (!detail::family_contains(sets, sets[a].intersect(sets[b])))
        throw InputError("base invalid: generated family is not intersection-closed at " +
                         sets[a].to_string() + " & " + sets[b].to_string());
  return FiniteTopology(base.carrier, std::move(sets));
}

/// Joint continuity of mul, div_l, div_r on (G, T): every preimage of an
/// open set must be open in the product topology.  Also reports whether T is
/// T1 (on a finite carrier that forces the discrete topology).
inline Report check_continuity(const BinarySystem& G, const FiniteTopology& t) {
  if (t.carrier() != G.order()) throw InputError("topology carrier mismatch");
  if (!G.is_quasigroup()) throw StructureError("continuity checks require a quasigroup");
  const int n = G.order();
  Report rep;

  bool discrete = true;
  for (elem g = 0; g < n && discrete; ++g) discrete = t.is_open(Subset::singleton(n, g));

  auto check_map = [&](int mode) {  // 0 mul, 1 div_l, 2 div_r
    if (discrete) return check_pass();
    for (const Subset& u : t.opens()) {
      // Preimage as a set of pairs.
      std::vector<std::pair<elem, elem>> pre;
      for (elem a = 0; a < n; ++a)
        for (elem b = 0; b < n; ++b) {
          elem v = mode == 0 ? G.raw_mul(a, b) : mode == 1 ? G.raw_ldiv(a, b) : G.raw_rdiv(a, b);
          if (u.contains(v)) pre.emplace_back(a, b);
        }
      auto in_pre = [&](elem x, elem y) {
        elem v = mode == 0 ? G.raw_mul(x, y) : mode == 1 ? G.raw_ldiv(x, y) : G.raw_rdiv(x, y);
        return u.contains(v);
      };
      for (auto [a, b] : pre) {
        bool boxed = false;
        for (const Subset& ua : t.opens()) {
          if (!ua.contains(a)) continue;
          for (const Subset& ub : t.opens()) {
            if (!ub.contains(b)) continue;
            bool inside = true;
            for (elem x : ua.members()) {
              for (elem y : ub.members())
                if (!in_pre(x, y)) {
                  inside = false;
                  break;
                }
              if (!inside) break;
            }
            if (inside) {
              boxed = true;
              break;
            }
          }
          if (boxed) break;
        }
        if (!boxed)
          return check_fail({a, b}, "preimage of " + u.to_string() +
                                        " is not open in the product topology");
      }
    }
    return check_pass();
  };

  rep.add("mul-continuous", check_map(0));
  rep.add("div_l-continuous", check_map(1));
  rep.add("div_r-continuous", check_map(2));
  rep.add(t.is_t1() ? "T1 (finite T1 forces the discrete topology)" : "not T1",
          check_pass());
  return rep;
}

/// W(S,Q) = { f in F : f(S) subset Q } as a subset of function indices.
/// S is a set of point positions, Q a subset of B.
inline Subset w_set(const FunctionSpace& f, const Subset& s, const Subset& q) {
  if (s.empty() || q.empty()) throw InputError("W(S,Q) requires nonempty S and Q");
  Subset out(static_cast<int>(f.size()));
  auto pts = s.members();
  for (std::int64_t fi = 0; fi < f.size(); ++fi) {
    bool ok = true;
    for (elem p : pts)
      if (!q.contains(f.value(fi, p))) {
        ok = false;
        break;
      }
    if (ok) out.add(static_cast<elem>(fi));
  }
  return out;
}

namespace detail {

inline Subset fn_set_zip(const FunctionSpace& f, const Subset& ws, const Subset& ws1, int mode) {
  // mode 0: pointwise mul, 1: ldiv, 2: rdiv over all pairs
  Subset out(static_cast<int>(f.size()));
  for (elem a : ws.members())
    for (elem b : ws1.members()) {
      std::int64_t v = mode == 0 ? f.mul(a, b) : mode == 1 ? f.ldiv(a, b) : f.rdiv(a, b);
      out.add(static_cast<elem>(v));
    }
  return out;
}

}  // namespace detail

/// Lemma 2.8 items (2.8.1)-(2.8.6), exhaustively over all nonempty S, Q and
/// index families (subfamilies of the nonempty subsets).
inline Report verify_lemma28(const FunctionSpace& f) {
  const BinarySystem& B = f.base();
  const int k = f.point_count();
  const int nb = B.order();
  const std::uint32_t smax = (std::uint32_t{1} << k) - 1;
  const std::uint32_t qmax = (std::uint32_t{1} << nb) - 1;

  auto s_of = [&](std::uint32_t mask) {
    Subset s(k);
    for (int p = 0; p < k; ++p)
      if (mask & (std::uint32_t{1} << p)) s.add(p);
    return s;
  };
  auto q_of = [&](std::uint32_t mask) {
    Subset q(nb);
    for (int x = 0; x < nb; ++x)
      if (mask & (std::uint32_t{1} << x)) q.add(x);
    return q;
  };

  Report rep;

  {  // (2.8.1) monotone in Q.
    CheckResult r = check_pass();
    for (std::uint32_t sm = 1; sm <= smax && r.ok; ++sm) {
      Subset s = s_of(sm);
      for (std::uint32_t q2 = 1; q2 <= qmax && r.ok; ++q2)
        for (std::uint32_t q1 = q2; q1; q1 = (q1 - 1) & q2) {
          if (!w_set(f, s, q_of(q1)).subset_of(w_set(f, s, q_of(q2)))) {
            r = check_fail({static_cast<elem>(sm), static_cast<elem>(q1), static_cast<elem>(q2)},
                           "W(S,Q1) not inside W(S,Q2)");
            break;
          }
        }
    }
    rep.add("(2.8.1)", r);
  }

  {  // (2.8.2) W(S,b/Q) = b/W(S,Q) and W(S,Q\b) = W(S,Q)\b.
    CheckResult r = check_pass();
    for (elem b = 0; b < nb && r.ok; ++b)
      for (std::uint32_t sm = 1; sm <= smax && r.ok; ++sm) {
        Subset s = s_of(sm);
        for (std::uint32_t qm = 1; qm <= qmax; ++qm) {
          Subset q = q_of(qm);
          Subset bq = image_rdiv(B, Subset::singleton(nb, b), q);  // b/Q
          Subset lhs = w_set(f, s, bq);
          Subset rhs(static_cast<int>(f.size()));
          for (elem fi : w_set(f, s, q).members())
            rhs.add(static_cast<elem>(f.rdiv(f.constant(b), fi)));
          if (lhs != rhs) {
            r = check_fail({b, static_cast<elem>(sm), static_cast<elem>(qm)},
                           "W(S,b/Q) != b/W(S,Q)");
            break;
          }
          Subset qb = image_ldiv(B, q, Subset::singleton(nb, b));  // Q\b
          lhs = w_set(f, s, qb);
          Subset rhs2(static_cast<int>(f.size()));
          for (elem fi : w_set(f, s, q).members())
            rhs2.add(static_cast<elem>(f.ldiv(fi, f.constant(b))));
          if (lhs != rhs2) {
            r = check_fail({b, static_cast<elem>(sm), static_cast<elem>(qm)},
                           "W(S,Q\\b) != W(S,Q)\\b");
            break;
          }
        }
      }
    rep.add("(2.8.2)", r);
  }

  {  // (2.8.3) the three containments.
    CheckResult r = check_pass();
    for (std::uint32_t sm = 1; sm <= smax && r.ok; ++sm) {
      Subset s = s_of(sm);
      for (std::uint32_t qm = 1; qm <= qmax && r.ok; ++qm)
        for (std::uint32_t q1m = 1; q1m <= qmax; ++q1m) {
          Subset q = q_of(qm), q1 = q_of(q1m);
          Subset wq = w_set(f, s, q), wq1 = w_set(f, s, q1);
          if (!detail::fn_set_zip(f, wq, wq1, 1).subset_of(w_set(f, s, image_ldiv(B, q, q1))) ||
              !detail::fn_set_zip(f, wq, wq1, 2).subset_of(w_set(f, s, image_rdiv(B, q, q1))) ||
              !detail::fn_set_zip(f, wq, wq1, 0).subset_of(w_set(f, s, image_mul(B, q, q1)))) {
            r = check_fail({static_cast<elem>(sm), static_cast<elem>(qm), static_cast<elem>(q1m)},
                           "a (2.8.3) containment fails");
            break;
          }
        }
    }
    rep.add("(2.8.3)", r);
  }

  {  // (2.8.4) antitone in S.
    CheckResult r = check_pass();
    for (std::uint32_t s2 = 1; s2 <= smax && r.ok; ++s2)
      for (std::uint32_t s1 = s2; s1; s1 = (s1 - 1) & s2) {
        for (std::uint32_t qm = 1; qm <= qmax; ++qm)
          if (!w_set(f, s_of(s2), q_of(qm)).subset_of(w_set(f, s_of(s1), q_of(qm)))) {
            r = check_fail({static_cast<elem>(s2), static_cast<elem>(s1), static_cast<elem>(qm)},
                           "W(S2,Q) not inside W(S1,Q)");
            break;
          }
        if (!r.ok) break;
      }
    rep.add("(2.8.4)", r);
  }

  {  // (2.8.5) W(U S_i, Q) = intersection of W(S_i, Q) over subfamilies.
    CheckResult r = check_pass();
    std::uint32_t families = (std::uint32_t{1} << smax) - 1;  // subsets of {1..smax}
    for (std::uint32_t fam = 1; fam <= families && r.ok; ++fam) {
      std::uint32_t uni = 0;
      Subset meet = Subset::full(static_cast<int>(f.size()));
      bool any = false;
      for (std::uint32_t sm = 1; sm <= smax; ++sm)
        if (fam & (std::uint32_t{1} << (sm - 1))) {
          uni |= sm;
          any = true;
        }
      if (!any) continue;
      for (std::uint32_t qm = 1; qm <= qmax; ++qm) {
        Subset q = q_of(qm);
        meet = Subset::full(static_cast<int>(f.size()));
        for (std::uint32_t sm = 1; sm <= smax; ++sm)
          if (fam & (std::uint32_t{1} << (sm - 1))) meet = meet.intersect(w_set(f, s_of(sm), q));
        if (w_set(f, s_of(uni), q) != meet) {
          r = check_fail({static_cast<elem>(fam), static_cast<elem>(qm)},
                         "W(U S_i, Q) != intersection of W(S_i, Q)");
          break;
        }
      }
    }
    rep.add("(2.8.5)", r);
  }

  {  // (2.8.6) W(S, /\ Q_i) = intersection of W(S, Q_i), nonempty meets only.
    CheckResult r = check_pass();
    std::uint32_t families = (std::uint32_t{1} << qmax) - 1;
    for (std::uint32_t fam = 1; fam <= families && r.ok; ++fam) {
      std::uint32_t meet_mask = qmax;
      bool any = false;
      for (std::uint32_t qm = 1; qm <= qmax; ++qm)
        if (fam & (std::uint32_t{1} << (qm - 1))) {
          meet_mask &= qm;
          any = true;
        }
      if (!any || meet_mask == 0) continue;
      for (std::uint32_t sm = 1; sm <= smax; ++sm) {
        Subset s = s_of(sm);
        Subset meet = Subset::full(static_cast<int>(f.size()));
        for (std::uint32_t qm = 1; qm <= qmax; ++qm)
          if (fam & (std::uint32_t{1} << (qm - 1))) meet = meet.intersect(w_set(f, s, q_of(qm)));
        if (w_set(f, s, q_of(meet_mask)) != meet) {
          r = check_fail({static_cast<elem>(fam), static_cast<elem>(sm)},
                         "W(S, /\\ Q_i) != intersection of W(S, Q_i)");
          break;
        }
      }
    }
    rep.add("(2.8.6)", r);
  }

  return rep;
}

}  // namespace metaloop
