/**
 * @file function_space.hpp
 * @brief The enumerated function space F = B^V with mixed-radix indexing
 *        and pointwise quasigroup operations.
 *
 * Functions V -> B are indexed little-endian by position: digit p of index
 * f is f(v_p).  The constant-e function is index 0.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "metaloop/binary_system.hpp"
#include "metaloop/errors.hpp"

namespace metaloop {

class FunctionSpace {
 public:
  FunctionSpace(int point_count, BinarySystem b, std::int64_t max_functions = 1 << 20)
      : points_(point_count), b_(std::move(b)) {
    if (point_count <= 0) throw InputError("function space needs at least one point");
    count_ = 1;
    for (int p = 0; p < point_count; ++p) {
      count_ *= b_.order();
      if (count_ > max_functions)
        throw ResourceError("|B|^|V| = " + std::to_string(b_.order()) + "^" +
                            std::to_string(point_count) + " exceeds the bound " +
                            std::to_string(max_functions));
    }
  }

  int point_count() const { return points_; }
  const BinarySystem& base() const { return b_; }
  std::int64_t size() const { return count_; }

  elem value(std::int64_t f, int p) const {
    for (int q = 0; q < p; ++q) f /= b_.order();
    return static_cast<elem>(f % b_.order());
  }

  std::vector<elem> values(std::int64_t f) const {
    std::vector<elem> out(static_cast<std::size_t>(points_));
    for (int p = 0; p < points_; ++p) {
      out[static_cast<std::size_t>(p)] = static_cast<elem>(f % b_.order());
      f /= b_.order();
    }
    return out;
  }

  std::int64_t index_of(const std::vector<elem>& digits) const {
    std::int64_t f = 0;
    for (int p = points_ - 1; p >= 0; --p) f = f * b_.order() + digits[static_cast<std::size_t>(p)];
    return f;
  }

  std::int64_t constant(elem b) const {
    std::vector<elem> digits(static_cast<std::size_t>(points_), b);
    return index_of(digits);
  }

  std::int64_t mul(std::int64_t f, std::int64_t g) const {
    return zip(f, g, [&](elem x, elem y) { return b_.raw_mul(x, y); });
  }
  std::int64_t ldiv(std::int64_t f, std::int64_t g) const {
    return zip(f, g, [&](elem x, elem y) { return b_.raw_ldiv(x, y); });
  }
  std::int64_t rdiv(std::int64_t f, std::int64_t g) const {
    return zip(f, g, [&](elem x, elem y) { return b_.raw_rdiv(x, y); });
  }

 private:
  template <typename Op>
  std::int64_t zip(std::int64_t f, std::int64_t g, Op op) const {
    std::int64_t out = 0, scale = 1;
    for (int p = 0; p < points_; ++p) {
      out += scale * op(static_cast<elem>(f % b_.order()), static_cast<elem>(g % b_.order()));
      scale *= b_.order();
      f /= b_.order();
      g /= b_.order();
    }
    return out;
  }

  int points_;
  BinarySystem b_;
  std::int64_t count_ = 0;
};

}  // namespace metaloop
