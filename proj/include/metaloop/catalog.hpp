/**
 * @file catalog.hpp
 * @brief Canonical example structures: cyclic, Klein, S3, dihedral, Q8,
 *        and the signed Cayley-Dickson basis loops cd_basis(k).
 *
 * cd_basis is produced by the recursive doubling sign rule directly on
 * index pairs, independent of BinarySystem's own machinery, which is what
 * lets it serve as an oracle for the metagroup claims about octonions and
 * beyond.  Indexing: +e_i -> i, -e_i -> 2^k + i; the identity +e_0 is 0.
 *
 * All outputs are canonical and byte-stable across runs.
 */
#pragma once

#include <string>
#include <vector>

#include "metaloop/binary_system.hpp"
#include "metaloop/errors.hpp"

namespace metaloop {
namespace catalog {

namespace detail {

/// Sign of e_i * e_j at doubling level k (product index is always i xor j).
/// Convention: (a,b)(c,d) = (ac - conj(d) b, da + b conj(c)).
inline int cd_sign(int level, int i, int j) {
  if (level == 0) return +1;
  int half = 1 << (level - 1);
  int hi = i >= half, hj = j >= half;
  int il = i & (half - 1), jl = j & (half - 1);
  auto conj_sign = [&](int x) { return x == 0 ? +1 : -1; };
  if (!hi && !hj) return cd_sign(level - 1, il, jl);
  if (!hi && hj) return cd_sign(level - 1, jl, il);                    // (x,0)(0,y) = (0, yx)
  if (hi && !hj) return cd_sign(level - 1, il, jl) * conj_sign(jl);    // (0,x)(y,0) = (0, x conj(y))
  return -cd_sign(level - 1, jl, il) * conj_sign(jl);                  // (0,x)(0,y) = (-conj(y) x, 0)
}

}  // namespace detail

/// Raw 2^{k+1} x 2^{k+1} table of the signed basis of the k-th
/// Cayley-Dickson algebra (k=0 reals, 1 complex, 2 quaternions, 3 octonions).
inline std::vector<std::vector<elem>> cd_basis_rows(int k) {
  if (k < 0 || k > 6) throw InputError("cd_basis level must be in 0..6");
  int dim = 1 << k;
  int n = 2 * dim;
  std::vector<std::vector<elem>> rows(static_cast<std::size_t>(n),
                                      std::vector<elem>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int sa = a >= dim ? -1 : +1, ia = a & (dim - 1);
      int sb = b >= dim ? -1 : +1, ib = b & (dim - 1);
      int s = sa * sb * detail::cd_sign(k, ia, ib);
      int i = ia ^ ib;
      rows[a][b] = (s < 0 ? dim : 0) + i;
    }
  return rows;
}

inline std::vector<std::string> cd_basis_names(int k) {
  int dim = 1 << k;
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(2 * dim));
  for (int i = 0; i < dim; ++i) names.push_back("+e" + std::to_string(i));
  for (int i = 0; i < dim; ++i) names.push_back("-e" + std::to_string(i));
  return names;
}

inline BinarySystem cd_basis(int k) {
  return BinarySystem(cd_basis_rows(k), cd_basis_names(k));
}

inline BinarySystem cyclic(int n) {
  if (n <= 0) throw InputError("cyclic order must be positive");
  std::vector<std::vector<elem>> rows(static_cast<std::size_t>(n),
                                      std::vector<elem>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) rows[a][b] = (a + b) % n;
  return BinarySystem(std::move(rows));
}

inline BinarySystem klein() {
  std::vector<std::vector<elem>> rows(4, std::vector<elem>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) rows[a][b] = a ^ b;
  return BinarySystem(std::move(rows));
}

/// Symmetric group on 3 letters; elements are the permutations of {0,1,2}
/// in lexicographic order, composed as (pq)(x) = p(q(x)).
inline BinarySystem s3() {
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto find = [&](const int* p) {
    for (int i = 0; i < 6; ++i)
      if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2]) return i;
    return -1;
  };
  std::vector<std::vector<elem>> rows(6, std::vector<elem>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      int comp[3];
      for (int x = 0; x < 3; ++x) comp[x] = perms[a][perms[b][x]];
      rows[a][b] = find(comp);
    }
  std::vector<std::string> names = {"id", "(12)", "(01)", "(012)", "(021)", "(02)"};
  return BinarySystem(std::move(rows), std::move(names));
}

/// Dihedral group of order 2n: (k1,i1)(k2,i2) = (k1^k2, i1 + (-1)^{k1} i2),
/// index = k*n + i.
inline BinarySystem dihedral(int n) {
  if (n < 1) throw InputError("dihedral parameter must be >= 1");
  int m = 2 * n;
  std::vector<std::vector<elem>> rows(static_cast<std::size_t>(m),
                                      std::vector<elem>(static_cast<std::size_t>(m)));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int k1 = a / n, i1 = a % n, k2 = b / n, i2 = b % n;
      int k = k1 ^ k2;
      int i = ((i1 + (k1 ? n - i2 : i2)) % n + n) % n;
      rows[a][b] = k * n + i;
    }
  return BinarySystem(std::move(rows));
}

/// Quaternion sign group {+-e0,..,+-e3}; identical to cd_basis(2).
inline BinarySystem q8() { return cd_basis(2); }

/// Named lookup used by the CLI: cyclic(n), klein, s3, q8, dihedral(n),
/// cd_basis(k).
inline BinarySystem by_name(const std::string& name, const std::vector<int>& params) {
  auto want = [&](std::size_t k) {
    if (params.size() != k)
      throw InputError("catalog '" + name + "' expects " + std::to_string(k) + " parameter(s)");
  };
  if (name == "cyclic") {
    want(1);
    return cyclic(params[0]);
  }
  if (name == "klein") {
    want(0);
    return klein();
  }
  if (name == "s3") {
    want(0);
    return s3();
  }
  if (name == "q8") {
    want(0);
    return q8();
  }
  if (name == "dihedral") {
    want(1);
    return dihedral(params[0]);
  }
  if (name == "cd_basis") {
    want(1);
    return cd_basis(params[0]);
  }
  throw InputError("unknown catalog name '" + name + "'");
}

}  // namespace catalog
}  // namespace metaloop
