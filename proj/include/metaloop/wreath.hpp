/**
 * @file wreath.hpp
 * @brief The smashed twisted wreath product C = D Delta_A F on D x B^V,
 *        with the twisted action f^{{d}} and the theta_{i,j} transport of
 *        Proposition 2.12.
 *
 * Multiplication follows (2.6.6):
 *
 *   (d1,f1)(d,f) = ( d1 d , xi((d1^psi,f1),(d^psi,f)) f1 f^{{d1}} )
 *
 * with xi applied pointwise and valued in a designated central subgroup C1
 * of B, and f^{{d}}(v) = phi(s(d,v)) f(v^{[d\e]}), where s(d,v) =
 * psi(v (d\e)) and v^{[c]} = tau(v c).
 */
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "metaloop/binary_system.hpp"
#include "metaloop/coset_transversal.hpp"
#include "metaloop/function_space.hpp"
#include "metaloop/structure_analysis.hpp"
#include "metaloop/subset.hpp"

namespace metaloop {

struct WreathSpec {
  BinarySystem d;
  std::vector<elem> a_members;
  BinarySystem b;
  std::vector<elem> c1_members;
  std::vector<std::vector<elem>> phi;                           // [apos][b] -> B
  std::vector<std::vector<std::vector<std::vector<elem>>>> xi;  // [apos][b1][apos][b2] -> C1
  std::int64_t max_functions = 4096;
};

struct WreathStructure {
  BinarySystem d;
  Subset a;
  Transversal tr;    // D over A, carrier = D
  FunctionSpace f;   // B^V
  Subset c1;
  std::vector<std::vector<elem>> phi;
  std::vector<std::vector<std::vector<std::vector<elem>>>> xi;
  std::vector<int> apos;  // element of A -> row index into phi/xi
  BinarySystem product;

  std::int64_t function_count() const { return f.size(); }
  int order() const { return product.order(); }
  elem index_of(elem dd, std::int64_t fidx) const {
    return static_cast<elem>(dd * f.size() + fidx);
  }
  elem d_part(elem g) const { return static_cast<elem>(g / f.size()); }
  std::int64_t f_part(elem g) const { return g % f.size(); }
};

namespace detail {

struct ActionTables {
  // Per point p: the phi row to apply and the source point.
  std::vector<int> phi_row;
  std::vector<int> source;
};

inline ActionTables action_tables(const BinarySystem& D, const Transversal& tr,
                                  const std::vector<int>& apos, elem d) {
  int k = static_cast<int>(tr.reps.size());
  ActionTables t{std::vector<int>(static_cast<std::size_t>(k)),
                 std::vector<int>(static_cast<std::size_t>(k))};
  elem c = D.raw_ldiv(d, 0);  // d \ e
  for (int p = 0; p < k; ++p) {
    elem x = D.raw_mul(tr.reps[static_cast<std::size_t>(p)], c);
    t.phi_row[static_cast<std::size_t>(p)] = apos[static_cast<std::size_t>(tr.psi_of(x))];
    t.source[static_cast<std::size_t>(p)] = tr.rep_index(tr.tau_of(x));
  }
  return t;
}

}  // namespace detail

/// f^{{d}} as a function index.
inline std::int64_t f_action(const WreathStructure& w, elem d, std::int64_t fidx) {
  auto at = detail::action_tables(w.d, w.tr, w.apos, d);
  auto digits = w.f.values(fidx);
  std::vector<elem> out(digits.size());
  for (std::size_t p = 0; p < digits.size(); ++p)
    out[p] = w.phi[static_cast<std::size_t>(at.phi_row[p])]
                  [static_cast<std::size_t>(digits[static_cast<std::size_t>(at.source[p])])];
  return w.f.index_of(out);
}

/// Builds the wreath product, validating the factor data and rejecting any
/// spec whose table fails to be a loop with identity (e_D, const_e).
/// `explicit_reps` overrides the least-index transversal (used by theta).
inline WreathStructure wreath_product(const WreathSpec& spec,
                                      const std::vector<elem>* explicit_reps = nullptr) {
  const BinarySystem& D = spec.d;
  const BinarySystem& B = spec.b;
  if (!D.is_loop() || !B.is_loop()) throw InputError("wreath product requires loops D and B");
  Subset A = Subset::of(D.order(), spec.a_members);
  if (auto r = is_submetagroup(D, A); !r.ok)
    throw PreconditionError("A is not a submetagroup of D: " + r.witness->detail);
  Subset C1 = Subset::of(B.order(), spec.c1_members);
  if (!C1.subset_of(center(B))) throw PreconditionError("C1 is not central in B");
  if (auto r = is_subquasigroup(B, C1); !r.ok)
    throw PreconditionError("C1 is not a subgroup of B: " + r.witness->detail);
  if (!C1.contains(0)) throw PreconditionError("C1 misses the identity of B");

  Transversal tr = explicit_reps
                       ? transversal_with_reps(D, A, Subset::full(D.order()), *explicit_reps)
                       : transversal(D, A);

  auto amembers = A.members();
  int na = static_cast<int>(amembers.size());
  std::vector<int> apos(static_cast<std::size_t>(D.order()), -1);
  for (int i = 0; i < na; ++i) apos[static_cast<std::size_t>(amembers[static_cast<std::size_t>(i)])] = i;

  // phi: defaults to the identity action; phi(e) = id and phi(a)e = e are
  // required for (e, const_e) to be a two-sided identity.
  std::vector<std::vector<elem>> phi = spec.phi;
  if (phi.empty()) {
    phi.assign(static_cast<std::size_t>(na), std::vector<elem>(static_cast<std::size_t>(B.order())));
    for (int i = 0; i < na; ++i)
      for (elem bb = 0; bb < B.order(); ++bb) phi[static_cast<std::size_t>(i)][static_cast<std::size_t>(bb)] = bb;
  }
  if (static_cast<int>(phi.size()) != na)
    throw InputError("phi must have one row per member of A");
  for (auto& row : phi)
    if (static_cast<int>(row.size()) != B.order())
      throw InputError("phi rows must have |B| entries");
  for (elem bb = 0; bb < B.order(); ++bb)
    if (phi[static_cast<std::size_t>(apos[0])][static_cast<std::size_t>(bb)] != bb)
      throw PreconditionError("factor rejection: phi(e_A) is not the identity map");
  for (int i = 0; i < na; ++i)
    if (phi[static_cast<std::size_t>(i)][0] != 0)
      throw PreconditionError("factor rejection: phi(a) does not fix e_B at a = " +
                              std::to_string(amembers[static_cast<std::size_t>(i)]));

  // xi: defaults to the constant identity; values must lie in C1.
  auto xi = spec.xi;
  if (xi.empty())
    xi.assign(static_cast<std::size_t>(na),
              std::vector<std::vector<std::vector<elem>>>(
                  static_cast<std::size_t>(B.order()),
                  std::vector<std::vector<elem>>(static_cast<std::size_t>(na),
                                                 std::vector<elem>(static_cast<std::size_t>(B.order()), 0))));
  if (static_cast<int>(xi.size()) != na) throw InputError("xi must be indexed by A positions");
  for (auto& cube : xi) {
    if (static_cast<int>(cube.size()) != B.order()) throw InputError("xi shape mismatch");
    for (auto& plane : cube) {
      if (static_cast<int>(plane.size()) != na) throw InputError("xi shape mismatch");
      for (auto& row : plane) {
        if (static_cast<int>(row.size()) != B.order()) throw InputError("xi shape mismatch");
        for (elem v : row)
          if (!C1.contains(v))
            throw PreconditionError("factor rejection: xi value " + std::to_string(v) +
                                    " outside C1");
      }
    }
  }

  FunctionSpace F(static_cast<int>(tr.reps.size()), B, spec.max_functions);
  std::int64_t nf = F.size();
  std::int64_t n64 = nf * D.order();
  if (n64 > 65535)
    throw ResourceError("wreath product order " + std::to_string(n64) + " exceeds 65535");
  int n = static_cast<int>(n64);

  // Precompute the action tables of every d1 and the digit tables.
  std::vector<detail::ActionTables> acts;
  acts.reserve(static_cast<std::size_t>(D.order()));
  for (elem dd = 0; dd < D.order(); ++dd) acts.push_back(detail::action_tables(D, tr, apos, dd));
  std::vector<std::vector<elem>> digit_cache(static_cast<std::size_t>(nf));
  for (std::int64_t fi = 0; fi < nf; ++fi) digit_cache[static_cast<std::size_t>(fi)] = F.values(fi);

  int k = F.point_count();
  std::vector<std::vector<elem>> rows(static_cast<std::size_t>(n),
                                      std::vector<elem>(static_cast<std::size_t>(n)));
  std::vector<elem> out(static_cast<std::size_t>(k));
  for (elem d1 = 0; d1 < D.order(); ++d1) {
    int psi1 = apos[static_cast<std::size_t>(tr.psi_of(d1))];
    const auto& act = acts[static_cast<std::size_t>(d1)];
    for (std::int64_t f1 = 0; f1 < nf; ++f1) {
      const auto& dig1 = digit_cache[static_cast<std::size_t>(f1)];
      for (elem d2 = 0; d2 < D.order(); ++d2) {
        int psi2 = apos[static_cast<std::size_t>(tr.psi_of(d2))];
        elem dprod = D.raw_mul(d1, d2);
        for (std::int64_t f2 = 0; f2 < nf; ++f2) {
          const auto& dig2 = digit_cache[static_cast<std::size_t>(f2)];
          for (int p = 0; p < k; ++p) {
            elem acted = phi[static_cast<std::size_t>(act.phi_row[static_cast<std::size_t>(p)])]
                            [static_cast<std::size_t>(dig2[static_cast<std::size_t>(
                                act.source[static_cast<std::size_t>(p)])])];
            elem tw = xi[static_cast<std::size_t>(psi1)]
                        [static_cast<std::size_t>(dig1[static_cast<std::size_t>(p)])]
                        [static_cast<std::size_t>(psi2)]
                        [static_cast<std::size_t>(dig2[static_cast<std::size_t>(p)])];
            out[static_cast<std::size_t>(p)] =
                B.raw_mul(tw, B.raw_mul(dig1[static_cast<std::size_t>(p)], acted));
          }
          rows[static_cast<std::size_t>(d1 * nf + f1)][static_cast<std::size_t>(d2 * nf + f2)] =
              static_cast<elem>(dprod * nf + F.index_of(out));
        }
      }
    }
  }

  // Identity must sit at (e_D, const_e) = index 0; anything else is a
  // rejected factor system (normalization would scramble the indexing).
  for (int g = 0; g < n; ++g)
    if (rows[0][static_cast<std::size_t>(g)] != g || rows[static_cast<std::size_t>(g)][0] != g)
      throw StructureError("factor rejection: (e, const_e) is not a two-sided identity (witness " +
                           std::to_string(g) + ")");

  BinarySystem product{std::move(rows)};
  if (!product.is_loop())
    throw StructureError("factor rejection: wreath table is not a loop (tag " +
                         std::string(to_string(product.class_tag())) + ")");

  return WreathStructure{D,  A,  std::move(tr), std::move(F), C1, std::move(phi), std::move(xi),
                         std::move(apos), std::move(product)};
}

/// Verified automorphism: a bijection preserving mul, div_l and div_r.
inline CheckResult verify_automorphism(const BinarySystem& T, const std::vector<elem>& map) {
  if (static_cast<int>(map.size()) != T.order()) return check_fail({}, "wrong map length");
  std::vector<char> seen(static_cast<std::size_t>(T.order()), 0);
  for (elem x : map) {
    if (x < 0 || x >= T.order() || seen[static_cast<std::size_t>(x)])
      return check_fail({x}, "not a bijection");
    seen[static_cast<std::size_t>(x)] = 1;
  }
  for (elem a = 0; a < T.order(); ++a)
    for (elem b = 0; b < T.order(); ++b) {
      if (map[static_cast<std::size_t>(T.raw_mul(a, b))] !=
          T.raw_mul(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]))
        return check_fail({a, b}, "does not preserve mul");
      if (map[static_cast<std::size_t>(T.raw_ldiv(a, b))] !=
          T.raw_ldiv(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]))
        return check_fail({a, b}, "does not preserve div_l");
      if (map[static_cast<std::size_t>(T.raw_rdiv(a, b))] !=
          T.raw_rdiv(map[static_cast<std::size_t>(a)], map[static_cast<std::size_t>(b)]))
        return check_fail({a, b}, "does not preserve div_r");
    }
  return check_pass();
}

struct ThetaResult {
  WreathStructure c_ij;
  std::vector<elem> theta;  // index map C -> C_ij
};

/// Proposition 2.12: transports the wreath data along automorphisms i of D
/// and j of B, builds C_{i,j}, and asserts that theta(d,f) = (i(d), j o f o i^{-1})
/// preserves mul, div_l and div_r on every pair.
inline ThetaResult theta_isomorphism(const WreathStructure& w, const std::vector<elem>& i,
                                     const std::vector<elem>& j) {
  const BinarySystem& D = w.d;
  const BinarySystem& B = w.f.base();
  if (auto r = verify_automorphism(D, i); !r.ok)
    throw PreconditionError("i is not an automorphism of D: " + r.witness->detail);
  if (auto r = verify_automorphism(B, j); !r.ok)
    throw PreconditionError("j is not an automorphism of B: " + r.witness->detail);
  {  // Agreement on C1: j must map the common central subgroup onto itself.
    Subset image(B.order());
    for (elem c : w.c1.members()) image.add(j[static_cast<std::size_t>(c)]);
    if (image != w.c1)
      throw PreconditionError("i|C1 = j|C1 unrealizable: j does not preserve C1");
  }

  std::vector<elem> iinv(i.size()), jinv(j.size());
  for (std::size_t x = 0; x < i.size(); ++x) iinv[static_cast<std::size_t>(i[x])] = static_cast<elem>(x);
  for (std::size_t x = 0; x < j.size(); ++x) jinv[static_cast<std::size_t>(j[x])] = static_cast<elem>(x);

  // Transported spec per (2.12.2).
  WreathSpec spec;
  spec.d = D;
  spec.b = B;
  spec.max_functions = w.f.size();
  auto amem = w.a.members();
  Subset aimg(D.order());
  for (elem a : amem) aimg.add(i[static_cast<std::size_t>(a)]);
  spec.a_members = aimg.members();
  for (elem c : w.c1.members()) spec.c1_members.push_back(j[static_cast<std::size_t>(c)]);

  int na = static_cast<int>(amem.size());
  std::vector<int> apos_new(static_cast<std::size_t>(D.order()), -1);
  {
    auto sorted_new = aimg.members();
    for (int p = 0; p < na; ++p) apos_new[static_cast<std::size_t>(sorted_new[static_cast<std::size_t>(p)])] = p;
  }
  spec.phi.assign(static_cast<std::size_t>(na), std::vector<elem>(static_cast<std::size_t>(B.order())));
  spec.xi.assign(static_cast<std::size_t>(na),
                 std::vector<std::vector<std::vector<elem>>>(
                     static_cast<std::size_t>(B.order()),
                     std::vector<std::vector<elem>>(static_cast<std::size_t>(na),
                                                    std::vector<elem>(static_cast<std::size_t>(B.order())))));
  for (elem a1 : aimg.members()) {
    int p1 = apos_new[static_cast<std::size_t>(a1)];
    int q1 = w.apos[static_cast<std::size_t>(iinv[static_cast<std::size_t>(a1)])];
    for (elem b1 = 0; b1 < B.order(); ++b1) {
      spec.phi[static_cast<std::size_t>(p1)][static_cast<std::size_t>(b1)] =
          j[static_cast<std::size_t>(w.phi[static_cast<std::size_t>(q1)]
                                          [static_cast<std::size_t>(jinv[static_cast<std::size_t>(b1)])])];
      for (elem a2 : aimg.members()) {
        int p2 = apos_new[static_cast<std::size_t>(a2)];
        int q2 = w.apos[static_cast<std::size_t>(iinv[static_cast<std::size_t>(a2)])];
        for (elem b2 = 0; b2 < B.order(); ++b2)
          spec.xi[static_cast<std::size_t>(p1)][static_cast<std::size_t>(b1)]
                 [static_cast<std::size_t>(p2)][static_cast<std::size_t>(b2)] =
              j[static_cast<std::size_t>(
                  w.xi[static_cast<std::size_t>(q1)]
                      [static_cast<std::size_t>(jinv[static_cast<std::size_t>(b1)])]
                      [static_cast<std::size_t>(q2)]
                      [static_cast<std::size_t>(jinv[static_cast<std::size_t>(b2)])])];
      }
    }
  }

  // V_{D,i(A)} = i(V_{D,A}), order preserved.
  std::vector<elem> reps;
  reps.reserve(w.tr.reps.size());
  for (elem v : w.tr.reps) reps.push_back(i[static_cast<std::size_t>(v)]);
  WreathStructure cij = wreath_product(spec, &reps);

  // theta(d,f)(i(v)) = (i(d), j(f(v))): digit p transports by j.
  std::vector<elem> theta(static_cast<std::size_t>(w.order()));
  for (elem dd = 0; dd < D.order(); ++dd)
    for (std::int64_t fi = 0; fi < w.f.size(); ++fi) {
      auto digits = w.f.values(fi);
      std::vector<elem> moved(digits.size());
      for (std::size_t p = 0; p < digits.size(); ++p) moved[p] = j[static_cast<std::size_t>(digits[p])];
      theta[static_cast<std::size_t>(w.index_of(dd, fi))] =
          cij.index_of(i[static_cast<std::size_t>(dd)], cij.f.index_of(moved));
    }

  // (2.12.4) plus the division transports on all pairs.
  const BinarySystem& C = w.product;
  const BinarySystem& C2 = cij.product;
  for (elem g1 = 0; g1 < C.order(); ++g1)
    for (elem g = 0; g < C.order(); ++g) {
      if (theta[static_cast<std::size_t>(C.raw_mul(g1, g))] !=
          C2.raw_mul(theta[static_cast<std::size_t>(g1)], theta[static_cast<std::size_t>(g)]))
        throw StructureError("theta fails to preserve mul at (" + std::to_string(g1) + "," +
                             std::to_string(g) + ")");
      if (theta[static_cast<std::size_t>(C.raw_ldiv(g1, g))] !=
          C2.raw_ldiv(theta[static_cast<std::size_t>(g1)], theta[static_cast<std::size_t>(g)]))
        throw StructureError("theta fails to preserve div_l at (" + std::to_string(g1) + "," +
                             std::to_string(g) + ")");
      if (theta[static_cast<std::size_t>(C.raw_rdiv(g1, g))] !=
          C2.raw_rdiv(theta[static_cast<std::size_t>(g1)], theta[static_cast<std::size_t>(g)]))
        throw StructureError("theta fails to preserve div_r at (" + std::to_string(g1) + "," +
                             std::to_string(g) + ")");
    }

  return ThetaResult{std::move(cij), std::move(theta)};
}

}  // namespace metaloop
