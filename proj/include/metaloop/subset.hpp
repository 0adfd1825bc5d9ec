/**
 * @file subset.hpp
 * @brief Subsets of a finite carrier with bitset semantics, plus the
 *        elementwise set algebra (AB, A\B, A/B) used throughout.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "metaloop/binary_system.hpp"
#include "metaloop/errors.hpp"

namespace metaloop {

class Subset {
 public:
  Subset() = default;

  explicit Subset(int carrier) : n_(carrier), bits_((static_cast<std::size_t>(carrier) + 63) / 64, 0) {
    if (carrier < 0) throw InputError("negative carrier size");
  }

  static Subset full(int carrier) {
    Subset s(carrier);
    for (int i = 0; i < carrier; ++i) s.add(i);
    return s;
  }

  static Subset singleton(int carrier, elem g) {
    Subset s(carrier);
    s.add(g);
    return s;
  }

  static Subset of(int carrier, const std::vector<elem>& members) {
    Subset s(carrier);
    for (elem g : members) s.add(g);
    return s;
  }

  int carrier() const { return n_; }

  bool contains(elem g) const {
    if (g < 0 || g >= n_) return false;
    return (bits_[static_cast<std::size_t>(g) >> 6] >> (g & 63)) & 1u;
  }

  void add(elem g) {
    if (g < 0 || g >= n_)
      throw InputError("subset member " + std::to_string(g) + " out of range for carrier " +
                       std::to_string(n_));
    bits_[static_cast<std::size_t>(g) >> 6] |= std::uint64_t{1} << (g & 63);
  }

  int size() const {
    int c = 0;
    for (std::uint64_t w : bits_) c += __builtin_popcountll(w);
    return c;
  }

  bool empty() const {
    for (std::uint64_t w : bits_)
      if (w) return false;
    return true;
  }

  std::vector<elem> members() const {
    std::vector<elem> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (int g = 0; g < n_; ++g)
      if (contains(g)) out.push_back(g);
    return out;
  }

  bool subset_of(const Subset& other) const {
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_[i] & ~other.bits_[i]) return false;
    return true;
  }

  Subset intersect(const Subset& other) const {
    Subset out(n_);
    for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] & other.bits_[i];
    return out;
  }

  Subset unite(const Subset& other) const {
    Subset out(n_);
    for (std::size_t i = 0; i < bits_.size(); ++i) out.bits_[i] = bits_[i] | other.bits_[i];
    return out;
  }

  Subset complement() const {
    Subset out(n_);
    for (int g = 0; g < n_; ++g)
      if (!contains(g)) out.add(g);
    return out;
  }

  bool operator==(const Subset& other) const { return n_ == other.n_ && bits_ == other.bits_; }
  bool operator!=(const Subset& other) const { return !(*this == other); }
  bool operator<(const Subset& other) const {
    if (n_ != other.n_) return n_ < other.n_;
    return bits_ < other.bits_;
  }

  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (elem g : members()) {
      if (!first) s += ",";
      s += std::to_string(g);
      first = false;
    }
    return s + "}";
  }

 private:
  int n_ = 0;
  std::vector<std::uint64_t> bits_;
};

// Elementwise images.  AB = {ab}, A\B = {a\b}, A/B = {a/b}, following the
// set conventions displayed in the Lemma 2.8 proof.

inline Subset image_mul(const BinarySystem& T, const Subset& A, const Subset& B) {
  Subset out(T.order());
  for (elem a : A.members())
    for (elem b : B.members()) out.add(T.raw_mul(a, b));
  return out;
}

inline Subset image_ldiv(const BinarySystem& T, const Subset& A, const Subset& B) {
  Subset out(T.order());
  for (elem a : A.members())
    for (elem b : B.members()) out.add(T.div_l(a, b));
  return out;
}

inline Subset image_rdiv(const BinarySystem& T, const Subset& A, const Subset& B) {
  Subset out(T.order());
  for (elem a : A.members())
    for (elem b : B.members()) out.add(T.div_r(a, b));
  return out;
}

inline Subset left_translate(const BinarySystem& T, elem h, const Subset& S) {
  return image_mul(T, Subset::singleton(T.order(), h), S);
}

inline Subset right_translate(const BinarySystem& T, const Subset& S, elem h) {
  return image_mul(T, S, Subset::singleton(T.order(), h));
}

}  // namespace metaloop
