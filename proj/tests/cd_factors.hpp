// The quaternion-to-octonion doubling step expressed as a smashed twisted
// product: A = Z2 (the doubling bit), B = the quaternion sign group, C =
// {+e0, -e0}.  phi(1) is quaternion conjugation; xi and kappa are extracted
// pointwise from the doubling oracle, so the product construction is checked
// against an independent route.
#pragma once

#include <vector>

#include "metaloop/catalog.hpp"
#include "metaloop/products.hpp"

namespace cdfactors {

using metaloop::BinarySystem;
using metaloop::elem;

/// Pair (s, x) with s the doubling bit and x = sigma*4 + i a quaternion sign
/// index maps to the octonion sign index sigma*8 + 4s + i.
inline elem pair_to_octonion(elem s, elem x) {
  int sigma = x / 4, i = x % 4;
  return sigma * 8 + 4 * s + i;
}

/// Relabeling of the smashed product carrier (index s*8 + x) onto cd_basis(3).
inline std::vector<elem> relabeling() {
  std::vector<elem> map(16);
  for (elem s = 0; s < 2; ++s)
    for (elem x = 0; x < 8; ++x) map[static_cast<std::size_t>(s * 8 + x)] = pair_to_octonion(s, x);
  return map;
}

inline metaloop::SmashingFactors cd_factor_system() {
  BinarySystem a = metaloop::catalog::cyclic(2);
  BinarySystem b = metaloop::catalog::cd_basis(2);
  BinarySystem oct = metaloop::catalog::cd_basis(3);

  metaloop::FactorMaps maps;
  maps.c = std::vector<elem>{0, 4};  // {+e0, -e0}

  // phi(0) = id, phi(1) = conjugation on the quaternion sign basis.
  maps.phi.assign(2, std::vector<elem>(8));
  for (elem x = 0; x < 8; ++x) {
    maps.phi[0][static_cast<std::size_t>(x)] = x;
    int sigma = x / 4, i = x % 4;
    maps.phi[1][static_cast<std::size_t>(x)] = i == 0 ? x : (1 - sigma) * 4 + i;
  }

  // xi((s,x),(t,y)) corrects (phi(s)(y) x) to the oracle's product component.
  maps.xi.assign(2, std::vector<std::vector<std::vector<elem>>>(
                        8, std::vector<std::vector<elem>>(2, std::vector<elem>(8))));
  for (elem s = 0; s < 2; ++s)
    for (elem x = 0; x < 8; ++x)
      for (elem t = 0; t < 2; ++t)
        for (elem y = 0; y < 8; ++y) {
          elem prod = oct.mul(pair_to_octonion(s, x), pair_to_octonion(t, y));
          // Octonion index sigma*8 + j with j = i + 4s'; recover the pair.
          int sigma = prod / 8, j = prod % 8;
          elem second = sigma * 4 + (j % 4);  // quaternion sign index
          elem base = b.mul(maps.phi[static_cast<std::size_t>(s)][static_cast<std::size_t>(y)], x);
          maps.xi[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)]
                 [static_cast<std::size_t>(t)][static_cast<std::size_t>(y)] = b.div_r(second, base);
        }

  // kappa is the multiplicativity defect of phi.
  maps.kappa.assign(2, std::vector<std::vector<elem>>(8, std::vector<elem>(8)));
  for (elem s = 0; s < 2; ++s)
    for (elem b3 = 0; b3 < 8; ++b3)
      for (elem b2 = 0; b2 < 8; ++b2) {
        elem lhs = maps.phi[static_cast<std::size_t>(s)][static_cast<std::size_t>(b.mul(b3, b2))];
        elem rhs = b.mul(maps.phi[static_cast<std::size_t>(s)][static_cast<std::size_t>(b3)],
                         maps.phi[static_cast<std::size_t>(s)][static_cast<std::size_t>(b2)]);
        maps.kappa[static_cast<std::size_t>(s)][static_cast<std::size_t>(b3)]
                  [static_cast<std::size_t>(b2)] = b.div_r(lhs, rhs);
      }

  return metaloop::make_smashing_factors(std::move(a), std::move(b), std::move(maps));
}

}  // namespace cdfactors
