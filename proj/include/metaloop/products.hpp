/**
 * @file products.hpp
 * @brief Direct products and smashed twisted products A * B with smashing
 *        factors (phi, eta, kappa, xi), plus the Proposition 3.20 structure
 *        checks (embeddings, invariance of theta_B(B), the transversal
 *        V_{G,B} = theta_A(A), and the explicit psi/tau formulas).
 *
 * The general multiplication is fixed as
 *
 *   (a1,b1)(a2,b2) = ( a1 a2 , ((phi(a1) b2) b1) xi((a1,b1),(a2,b2)) ),
 *
 * the unique form reproducing every displayed special case of the
 * Proposition 3.20 proof.  Factor systems are data; admissibility is decided
 * a posteriori from what the constructed table actually satisfies.
 */
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "metaloop/binary_system.hpp"
#include "metaloop/coset_transversal.hpp"
#include "metaloop/structure_analysis.hpp"
#include "metaloop/subset.hpp"

namespace metaloop {

/// Optional raw factor maps; empty containers mean the trivial choice.
struct FactorMaps {
  std::optional<std::vector<elem>> c;                          // members of C in B
  std::vector<std::vector<elem>> phi;                          // [a][b] -> B
  std::vector<std::vector<std::vector<elem>>> eta;             // [a1][a2][b] -> C
  std::vector<std::vector<std::vector<elem>>> kappa;           // [a][b3][b2] -> C
  std::vector<std::vector<std::vector<std::vector<elem>>>> xi; // [a1][b1][a2][b2] -> C
};

struct SmashingFactors {
  BinarySystem A;
  BinarySystem B;
  Subset C;  // designated central subgroup of B holding all twist values
  std::vector<std::vector<elem>> phi;
  std::vector<std::vector<std::vector<elem>>> eta;
  std::vector<std::vector<std::vector<elem>>> kappa;
  std::vector<std::vector<std::vector<std::vector<elem>>>> xi;

  elem phi_at(elem a, elem b) const { return phi[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  elem eta_at(elem a1, elem a2, elem b) const {
    return eta[static_cast<std::size_t>(a1)][static_cast<std::size_t>(a2)][static_cast<std::size_t>(b)];
  }
  elem kappa_at(elem a, elem b3, elem b2) const {
    return kappa[static_cast<std::size_t>(a)][static_cast<std::size_t>(b3)][static_cast<std::size_t>(b2)];
  }
  elem xi_at(elem a1, elem b1, elem a2, elem b2) const {
    return xi[static_cast<std::size_t>(a1)][static_cast<std::size_t>(b1)][static_cast<std::size_t>(a2)]
             [static_cast<std::size_t>(b2)];
  }

  int pair_count() const { return A.order() * B.order(); }
  elem pair_index(elem a, elem b) const { return a * B.order() + b; }
  elem a_part(elem g) const { return g / B.order(); }
  elem b_part(elem g) const { return g % B.order(); }
};

namespace detail {

template <typename Container>
inline void require_shape(const Container& v, std::size_t want, const char* what) {
  if (v.size() != want)
    throw InputError(std::string(what) + " has size " + std::to_string(v.size()) + ", expected " +
                     std::to_string(want));
}

inline void require_range(elem v, int order, const char* what) {
  if (v < 0 || v >= order)
    throw InputError(std::string(what) + " value " + std::to_string(v) + " out of range");
}

}  // namespace detail

/// Fills defaults, validates shapes/ranges, and computes the default C
/// (the closure of C_m(B) together with every eta/kappa/xi value) when no
/// explicit C is supplied.
inline SmashingFactors make_smashing_factors(BinarySystem A, BinarySystem B, FactorMaps maps) {
  if (!A.is_loop() || !B.is_loop()) throw InputError("smashing factors require loops A and B");
  const int na = A.order(), nb = B.order();
  SmashingFactors F{std::move(A), std::move(B), Subset(nb), {}, {}, {}, {}};

  if (maps.phi.empty()) {
    F.phi.assign(static_cast<std::size_t>(na), std::vector<elem>(static_cast<std::size_t>(nb)));
    for (int a = 0; a < na; ++a)
      for (int b = 0; b < nb; ++b) F.phi[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = b;
  } else {
    detail::require_shape(maps.phi, static_cast<std::size_t>(na), "phi");
    for (auto& row : maps.phi) {
      detail::require_shape(row, static_cast<std::size_t>(nb), "phi row");
      for (elem v : row) detail::require_range(v, nb, "phi");
    }
    F.phi = std::move(maps.phi);
  }

  elem e = 0;
  if (maps.eta.empty())
    F.eta.assign(static_cast<std::size_t>(na),
                 std::vector<std::vector<elem>>(static_cast<std::size_t>(na),
                                                std::vector<elem>(static_cast<std::size_t>(nb), e)));
  else {
    detail::require_shape(maps.eta, static_cast<std::size_t>(na), "eta");
    for (auto& plane : maps.eta) {
      detail::require_shape(plane, static_cast<std::size_t>(na), "eta plane");
      for (auto& row : plane) {
        detail::require_shape(row, static_cast<std::size_t>(nb), "eta row");
        for (elem v : row) detail::require_range(v, nb, "eta");
      }
    }
    F.eta = std::move(maps.eta);
  }

  if (maps.kappa.empty())
    F.kappa.assign(static_cast<std::size_t>(na),
                   std::vector<std::vector<elem>>(static_cast<std::size_t>(nb),
                                                  std::vector<elem>(static_cast<std::size_t>(nb), e)));
  else {
    detail::require_shape(maps.kappa, static_cast<std::size_t>(na), "kappa");
    for (auto& plane : maps.kappa) {
      detail::require_shape(plane, static_cast<std::size_t>(nb), "kappa plane");
      for (auto& row : plane) {
        detail::require_shape(row, static_cast<std::size_t>(nb), "kappa row");
        for (elem v : row) detail::require_range(v, nb, "kappa");
      }
    }
    F.kappa = std::move(maps.kappa);
  }

  if (maps.xi.empty())
    F.xi.assign(static_cast<std::size_t>(na),
                std::vector<std::vector<std::vector<elem>>>(
                    static_cast<std::size_t>(nb),
                    std::vector<std::vector<elem>>(static_cast<std::size_t>(na),
                                                   std::vector<elem>(static_cast<std::size_t>(nb), e))));
  else {
    detail::require_shape(maps.xi, static_cast<std::size_t>(na), "xi");
    for (auto& cube : maps.xi) {
      detail::require_shape(cube, static_cast<std::size_t>(nb), "xi cube");
      for (auto& plane : cube) {
        detail::require_shape(plane, static_cast<std::size_t>(na), "xi plane");
        for (auto& row : plane) {
          detail::require_shape(row, static_cast<std::size_t>(nb), "xi row");
          for (elem v : row) detail::require_range(v, nb, "xi");
        }
      }
    }
    F.xi = std::move(maps.xi);
  }

  if (maps.c) {
    F.C = Subset::of(nb, *maps.c);
  } else {
    // Smallest central target consistent with C_m(B) plus the used values.
    Subset seed = minimal_t_subgroup(F.B);
    for (const auto& plane : F.eta)
      for (const auto& row : plane)
        for (elem v : row) seed.add(v);
    for (const auto& plane : F.kappa)
      for (const auto& row : plane)
        for (elem v : row) seed.add(v);
    for (const auto& cube : F.xi)
      for (const auto& plane : cube)
        for (const auto& row : plane)
          for (elem v : row) seed.add(v);
    std::vector<elem> work = seed.members();
    while (!work.empty()) {
      elem x = work.back();
      work.pop_back();
      for (elem y : seed.members())
        for (elem z : {F.B.raw_mul(x, y), F.B.raw_ldiv(x, y), F.B.raw_rdiv(x, y)})
          if (!seed.contains(z)) {
            seed.add(z);
            work.push_back(z);
          }
    }
    F.C = seed;
  }
  return F;
}

inline SmashingFactors trivial_factors(BinarySystem A, BinarySystem B) {
  return make_smashing_factors(std::move(A), std::move(B), FactorMaps{});
}

namespace detail {

inline std::optional<std::vector<std::string>> pair_names(const BinarySystem& A,
                                                          const BinarySystem& B) {
  if (!A.names() && !B.names()) return std::nullopt;
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(A.order()) * static_cast<std::size_t>(B.order()));
  for (elem a = 0; a < A.order(); ++a)
    for (elem b = 0; b < B.order(); ++b) out.push_back("(" + A.display(a) + "," + B.display(b) + ")");
  return out;
}

}  // namespace detail

/// Componentwise multiplication on A x B; index (a,b) -> a*|B| + b.
inline BinarySystem direct_product(const BinarySystem& A, const BinarySystem& B) {
  const int nb = B.order();
  const int n = A.order() * nb;
  std::vector<std::vector<elem>> rows(static_cast<std::size_t>(n),
                                      std::vector<elem>(static_cast<std::size_t>(n)));
  for (elem a1 = 0; a1 < A.order(); ++a1)
    for (elem b1 = 0; b1 < nb; ++b1)
      for (elem a2 = 0; a2 < A.order(); ++a2)
        for (elem b2 = 0; b2 < nb; ++b2)
          rows[static_cast<std::size_t>(a1 * nb + b1)][static_cast<std::size_t>(a2 * nb + b2)] =
              A.raw_mul(a1, a2) * nb + B.raw_mul(b1, b2);
  return BinarySystem(std::move(rows), detail::pair_names(A, B));
}

/// The smashed twisted product table.  Rejects factor systems whose table is
/// not a quasigroup (witness pair in the message) or whose identity does not
/// sit at (e_A, e_B).
inline BinarySystem smashed_twisted_product(const SmashingFactors& F) {
  const BinarySystem& A = F.A;
  const BinarySystem& B = F.B;
  const int nb = B.order();
  const int n = A.order() * nb;
  std::vector<std::vector<elem>> rows(static_cast<std::size_t>(n),
                                      std::vector<elem>(static_cast<std::size_t>(n)));
  for (elem a1 = 0; a1 < A.order(); ++a1)
    for (elem b1 = 0; b1 < nb; ++b1)
      for (elem a2 = 0; a2 < A.order(); ++a2)
        for (elem b2 = 0; b2 < nb; ++b2) {
          elem second = B.raw_mul(B.raw_mul(F.phi_at(a1, b2), b1), F.xi_at(a1, b1, a2, b2));
          rows[static_cast<std::size_t>(a1 * nb + b1)][static_cast<std::size_t>(a2 * nb + b2)] =
              A.raw_mul(a1, a2) * nb + second;
        }
  // Latin check with a witness pair before handing to BinarySystem.
  for (int r = 0; r < n; ++r) {
    std::vector<int> first(static_cast<std::size_t>(n), -1);
    for (int c = 0; c < n; ++c) {
      elem v = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (first[static_cast<std::size_t>(v)] != -1)
        throw StructureError("factor system rejected: row " + std::to_string(r) +
                             " repeats value at columns " +
                             std::to_string(first[static_cast<std::size_t>(v)]) + " and " +
                             std::to_string(c));
      first[static_cast<std::size_t>(v)] = c;
    }
  }
  for (int c = 0; c < n; ++c) {
    std::vector<int> first(static_cast<std::size_t>(n), -1);
    for (int r = 0; r < n; ++r) {
      elem v = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (first[static_cast<std::size_t>(v)] != -1)
        throw StructureError("factor system rejected: column " + std::to_string(c) +
                             " repeats value at rows " +
                             std::to_string(first[static_cast<std::size_t>(v)]) + " and " +
                             std::to_string(r));
      first[static_cast<std::size_t>(v)] = r;
    }
  }
  // An identity anywhere other than (e_A,e_B) would be silently relabeled to
  // index 0 and break the pair indexing; treat it as an inconsistent system.
  bool zero_is_identity = true;
  for (int g = 0; g < n && zero_is_identity; ++g)
    zero_is_identity = rows[0][static_cast<std::size_t>(g)] == g &&
                       rows[static_cast<std::size_t>(g)][0] == g;
  for (int c0 = 1; c0 < n && !zero_is_identity; ++c0) {
    bool is_id = true;
    for (int g = 0; g < n && is_id; ++g)
      is_id = rows[static_cast<std::size_t>(c0)][static_cast<std::size_t>(g)] == g &&
              rows[static_cast<std::size_t>(g)][static_cast<std::size_t>(c0)] == g;
    if (is_id)
      throw StructureError("factor system rejected: identity sits at index " + std::to_string(c0) +
                           ", not at (e_A,e_B)");
  }
  return BinarySystem(std::move(rows), detail::pair_names(A, B));
}

/// Itemized factor-system report; "admissible" additionally requires the
/// constructed table to classify as a loop or better.
inline Report validate_factors(const SmashingFactors& F) {
  const BinarySystem& B = F.B;
  Report rep;

  {  // C is a subgroup of the center of B.
    CheckResult r = check_pass();
    Subset cent = center(B);
    if (!F.C.contains(0)) r = check_fail({0}, "C misses the identity");
    for (elem x : F.C.members()) {
      if (!r.ok) break;
      if (!cent.contains(x)) {
        r = check_fail({x}, "C member not central in B");
        break;
      }
      for (elem y : F.C.members())
        if (!F.C.contains(B.raw_mul(x, y)) || !F.C.contains(B.raw_ldiv(x, y)) ||
            !F.C.contains(B.raw_rdiv(x, y))) {
          r = check_fail({x, y}, "C not closed under the group operations");
          break;
        }
    }
    rep.add("C-central-subgroup", r);
  }

  {  // Every eta/kappa/xi value lies in C.
    CheckResult r = check_pass();
    auto in_c = [&](elem v) { return F.C.contains(v); };
    for (elem a1 = 0; a1 < F.A.order() && r.ok; ++a1)
      for (elem a2 = 0; a2 < F.A.order() && r.ok; ++a2)
        for (elem b = 0; b < B.order() && r.ok; ++b)
          if (!in_c(F.eta_at(a1, a2, b))) r = check_fail({a1, a2, b}, "eta value outside C");
    for (elem a = 0; a < F.A.order() && r.ok; ++a)
      for (elem b3 = 0; b3 < B.order() && r.ok; ++b3)
        for (elem b2 = 0; b2 < B.order() && r.ok; ++b2)
          if (!in_c(F.kappa_at(a, b3, b2))) r = check_fail({a, b3, b2}, "kappa value outside C");
    for (elem a1 = 0; a1 < F.A.order() && r.ok; ++a1)
      for (elem b1 = 0; b1 < B.order() && r.ok; ++b1)
        for (elem a2 = 0; a2 < F.A.order() && r.ok; ++a2)
          for (elem b2 = 0; b2 < B.order() && r.ok; ++b2)
            if (!in_c(F.xi_at(a1, b1, a2, b2)))
              r = check_fail({a1, b1, a2, b2}, "xi value outside C");
    rep.add("twist-values-in-C", r);
  }

  {  // phi(e_A) = id.
    CheckResult r = check_pass();
    for (elem b = 0; b < B.order(); ++b)
      if (F.phi_at(0, b) != b) {
        r = check_fail({b}, "phi(e_A) is not the identity map");
        break;
      }
    rep.add("phi-identity-at-e", r);
  }

  {  // Each phi(a) is a bijection of B.
    CheckResult r = check_pass();
    for (elem a = 0; a < F.A.order() && r.ok; ++a) {
      std::vector<char> seen(static_cast<std::size_t>(B.order()), 0);
      for (elem b = 0; b < B.order(); ++b) {
        elem v = F.phi_at(a, b);
        if (seen[static_cast<std::size_t>(v)]) {
          r = check_fail({a, b}, "phi(a) is not a bijection");
          break;
        }
        seen[static_cast<std::size_t>(v)] = 1;
      }
    }
    rep.add("phi-bijective", r);
  }

  {  // xi((e,b),(a,e)) does not depend on b.
    CheckResult r = check_pass();
    for (elem a = 0; a < F.A.order() && r.ok; ++a) {
      elem ref = F.xi_at(0, 0, a, 0);
      for (elem b = 0; b < B.order(); ++b)
        if (F.xi_at(0, b, a, 0) != ref) {
          r = check_fail({a, b}, "xi((e,b),(a,e)) varies with b");
          break;
        }
    }
    rep.add("xi-independent-of-b", r);
  }

  {  // kappa as the multiplicativity defect of phi(a).
    CheckResult r = check_pass();
    for (elem a = 0; a < F.A.order() && r.ok; ++a)
      for (elem b3 = 0; b3 < B.order() && r.ok; ++b3)
        for (elem b2 = 0; b2 < B.order(); ++b2) {
          elem lhs = F.phi_at(a, B.raw_mul(b3, b2));
          elem rhs = B.raw_mul(B.raw_mul(F.phi_at(a, b3), F.phi_at(a, b2)), F.kappa_at(a, b3, b2));
          if (lhs != rhs) {
            r = check_fail({a, b3, b2}, "phi(a)(b3 b2) != (b3^a b2^a) kappa(a,b3,b2)");
            break;
          }
        }
    rep.add("kappa-defect", r);
  }

  {  // (3.20.8) consistency: phi(e/a) undoes phi(a) up to eta(e/a, a, .).
    CheckResult r = check_pass();
    for (elem a = 0; a < F.A.order() && r.ok; ++a) {
      elem ainv = F.A.raw_rdiv(0, a);  // e/a
      for (elem b = 0; b < B.order(); ++b) {
        elem x = F.phi_at(ainv, F.phi_at(a, b));
        if (x != B.raw_mul(b, F.eta_at(ainv, a, x))) {
          r = check_fail({a, b}, "(b^a)^{e/a} != b * eta(e/a, a, (b^a)^{e/a})");
          break;
        }
      }
    }
    rep.add("eta-roundtrip", r);
  }

  {  // Admissibility: the table itself must classify as a loop or better.
    CheckResult r = check_pass();
    try {
      BinarySystem G = smashed_twisted_product(F);
      if (!G.is_loop()) r = check_fail({}, "product is not a loop");
    } catch (const StructureError& e) {
      r = check_fail({}, e.what());
    }
    rep.add("product-classifies-as-loop", r);
  }

  return rep;
}

/// theta_A(a) = (a,e), theta_B(b) = (e,b) as index sets in G.
inline Subset theta_a_image(const SmashingFactors& F) {
  Subset s(F.pair_count());
  for (elem a = 0; a < F.A.order(); ++a) s.add(F.pair_index(a, 0));
  return s;
}

inline Subset theta_b_image(const SmashingFactors& F) {
  Subset s(F.pair_count());
  for (elem b = 0; b < F.B.order(); ++b) s.add(F.pair_index(0, b));
  return s;
}

/// Proposition 3.20 structure report for G = smashed_twisted_product(F).
inline Report embeddings_and_invariance(const BinarySystem& G, const SmashingFactors& F) {
  if (G.order() != F.pair_count())
    throw InputError("G does not have |A|*|B| elements");
  Report rep;
  const int nb = F.B.order();
  Subset thA = theta_a_image(F);
  Subset thB = theta_b_image(F);

  {  // theta_A is an injective homomorphism.
    CheckResult r = check_pass();
    for (elem a1 = 0; a1 < F.A.order() && r.ok; ++a1)
      for (elem a2 = 0; a2 < F.A.order(); ++a2)
        if (G.raw_mul(a1 * nb, a2 * nb) != F.A.raw_mul(a1, a2) * nb) {
          r = check_fail({a1, a2}, "theta_A(a1 a2) != theta_A(a1) theta_A(a2)");
          break;
        }
    rep.add("theta_A-homomorphism", r);
    rep.add("theta_A-image-submetagroup", is_submetagroup(G, thA));
  }

  {  // theta_B is an injective homomorphism.
    CheckResult r = check_pass();
    for (elem b1 = 0; b1 < nb && r.ok; ++b1)
      for (elem b2 = 0; b2 < nb; ++b2)
        if (G.raw_mul(b1, b2) != F.B.raw_mul(b1, b2)) {
          r = check_fail({b1, b2}, "theta_B(b1 b2) != theta_B(b1) theta_B(b2)");
          break;
        }
    rep.add("theta_B-homomorphism", r);
    rep.add("theta_B-image-submetagroup", is_submetagroup(G, thB));
  }

  {  // (3.20.5) g theta_B(B) = theta_B(B) g.
    CheckResult r = check_pass();
    for (elem g = 0; g < G.order(); ++g)
      if (left_translate(G, g, thB) != right_translate(G, thB, g)) {
        r = check_fail({g}, "g theta_B(B) != theta_B(B) g");
        break;
      }
    rep.add("(3.20.5)", r);
  }

  {  // (3.20.6) (g1 theta_B(B)) g2 = g1 (theta_B(B) g2).
    CheckResult r = check_pass();
    for (elem g1 = 0; g1 < G.order() && r.ok; ++g1) {
      Subset g1H = left_translate(G, g1, thB);
      for (elem g2 = 0; g2 < G.order(); ++g2)
        if (right_translate(G, g1H, g2) !=
            left_translate(G, g1, right_translate(G, thB, g2))) {
          r = check_fail({g1, g2}, "(g1 theta_B(B)) g2 != g1 (theta_B(B) g2)");
          break;
        }
    }
    rep.add("(3.20.6)", r);
  }

  {  // The Prop. 3.20 proof's intermediate step: theta_B(B) satisfies (3.2.1).
    rep.add("(3.2.1)-for-theta_B", check_condition_321(G, thB));
  }

  {  // V_{G,B} = theta_A(A) is a transversal.
    CheckResult r = check_pass();
    try {
      (void)transversal_with_reps(G, thB, Subset::full(G.order()), thA.members());
    } catch (const PreconditionError& e) {
      r = check_fail({}, std::string("theta_A(A) is not a transversal of theta_B(B): ") +
                             e.what());
    }
    rep.add("transversal-V_GB-is-theta_A", r);
  }

  {  // psi/tau per (3.20.2)-(3.20.4) induce the same partition as the cosets.
    CheckResult r = check_pass();
    try {
      QuotientSpace q = quotient(G, thB);
      for (elem g = 0; g < G.order() && r.ok; ++g)
        for (elem h = 0; h < G.order(); ++h) {
          bool same_tau = F.a_part(g) == F.a_part(h);
          bool same_coset = q.pi[static_cast<std::size_t>(g)] == q.pi[static_cast<std::size_t>(h)];
          if (same_tau != same_coset) {
            r = check_fail({g, h}, "psi/tau partition disagrees with the coset partition");
            break;
          }
        }
    } catch (const PreconditionError& e) {
      r = check_fail({}, std::string("coset partition unavailable: ") + e.what());
    }
    rep.add("psi-tau-partition-matches-cosets", r);
  }

  return rep;
}

/// (3.20.2)-(3.20.4): g = (a1,b1) factors as g^psi = (e, b1 / xi((e,b1),(a1,e)))
/// and g^tau = (a1, e); the product identity g = g^psi g^tau is asserted.
inline std::pair<elem, elem> psi_tau_product(const BinarySystem& G, const SmashingFactors& F,
                                             elem g) {
  if (g < 0 || g >= G.order()) throw InputError("element out of range");
  elem a1 = F.a_part(g), b1 = F.b_part(g);
  elem b = F.B.div_r(b1, F.xi_at(0, b1, a1, 0));
  elem psi = F.pair_index(0, b);
  elem tau = F.pair_index(a1, 0);
  if (G.mul(psi, tau) != g)
    throw StructureError("factor-system inconsistency: g != g^psi g^tau at g = " +
                         std::to_string(g));
  return {psi, tau};
}

/// Input to the Corollary 3.22 composition: two factor systems sharing
/// B1 = B2, the third system's maps for the pair (A', B), and the subset of
/// A2 standing in for the corollary's C when checking phi_2-triviality.
struct ComposeSpec {
  SmashingFactors f1;
  SmashingFactors f2;
  FactorMaps f3;
  std::optional<std::vector<elem>> c_in_a2;  // default: all of A2
};

struct ComposeResult {
  BinarySystem d;
  SmashingFactors f3;
  Subset a_image;   // theta_{A2}(A2) in D
  Subset c1_image;  // theta_{B2}(B2) in D
  Report report;
};

/// D = A' * B with A' = A1*B1 and B = A2*B2 (Corollary 3.22).  Verifies the
/// table-checkable hypotheses, builds D, and checks x A = A x for x in C1,
/// invariance of C1 in D, and the factorization d = (a1 a2) b with
/// b ranging over theta_{B1}(B1) theta_{B2}(B2).
inline ComposeResult compose_smashed(const ComposeSpec& spec) {
  const BinarySystem& B1 = spec.f1.B;
  const BinarySystem& B2 = spec.f2.B;
  if (!B1.same_table(B2)) throw PreconditionError("hypothesis B1 = B2 fails: tables differ");

  {  // phi_2(a) b = b for each a in the designated C-subset of A2.
    std::vector<elem> cs = spec.c_in_a2 ? *spec.c_in_a2 : Subset::full(spec.f2.A.order()).members();
    for (elem a : cs)
      for (elem b = 0; b < B2.order(); ++b)
        if (spec.f2.phi_at(a, b) != b)
          throw PreconditionError("hypothesis phi_2(a)b = b fails at (a,b) = (" +
                                  std::to_string(a) + "," + std::to_string(b) + ")");
  }
  {  // xi_2((a,e),(e,b)) = xi_2((e,b),(a,e)).
    for (elem a = 0; a < spec.f2.A.order(); ++a)
      for (elem b = 0; b < B2.order(); ++b)
        if (spec.f2.xi_at(a, 0, 0, b) != spec.f2.xi_at(0, b, a, 0))
          throw PreconditionError("hypothesis xi_2 symmetry fails at (a,b) = (" +
                                  std::to_string(a) + "," + std::to_string(b) + ")");
  }

  BinarySystem aprime = smashed_twisted_product(spec.f1);
  BinarySystem b = smashed_twisted_product(spec.f2);
  SmashingFactors f3 = make_smashing_factors(aprime, b, spec.f3);
  BinarySystem d = smashed_twisted_product(f3);

  const int nb = b.order();        // |B| = |A2|*|B2|
  const int nb2 = B2.order();
  Subset a_image(d.order());       // theta_{A2}(A2): (e_{A'}, (a2, e))
  for (elem a2 = 0; a2 < spec.f2.A.order(); ++a2) a_image.add(a2 * nb2);
  Subset c1_image(d.order());      // theta_{B2}(B2): (e_{A'}, (e, b2))
  for (elem b2 = 0; b2 < nb2; ++b2) c1_image.add(b2);

  Report rep;
  {  // x A = A x for every x in C1.
    CheckResult r = check_pass();
    for (elem x : c1_image.members())
      if (left_translate(d, x, a_image) != right_translate(d, a_image, x)) {
        r = check_fail({x}, "x A != A x");
        break;
      }
    rep.add("xA-equals-Ax", r);
  }
  rep.add("C1-submetagroup", is_submetagroup(d, c1_image));
  rep.add("C1-invariant-in-D", is_invariant(d, c1_image));

  {  // Every d factors as (a1 a2) b.
    Subset thA1(d.order());  // ((a1,e), e_B)
    for (elem a1 = 0; a1 < spec.f1.A.order(); ++a1)
      thA1.add((a1 * spec.f1.B.order()) * nb);
    Subset thB1(d.order());  // ((e,b1), e_B)
    for (elem b1 = 0; b1 < spec.f1.B.order(); ++b1) thB1.add(b1 * nb);
    Subset bset = image_mul(d, thB1, c1_image);
    Subset covered(d.order());
    for (elem x : thA1.members())
      for (elem y : a_image.members()) {
        elem xy = d.raw_mul(x, y);
        for (elem z : bset.members()) covered.add(d.raw_mul(xy, z));
      }
    CheckResult r = covered == Subset::full(d.order())
                        ? check_pass()
                        : check_fail({covered.complement().members().front()},
                                     "element admits no factorization a1 a2 b");
    rep.add("factorization-a1-a2-b", r);
  }

  return ComposeResult{std::move(d), std::move(f3), std::move(a_image), std::move(c1_image),
                       std::move(rep)};
}

}  // namespace metaloop
