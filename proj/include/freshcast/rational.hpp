#pragma once

#include <cstdint>
#include <string>

#include "freshcast/types.hpp"

namespace freshcast {

/// Exact rational over int64 with __int128 intermediates. All latency
/// accounting stays in integers/rationals; overflow throws instead of
/// silently wrapping.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design
  Rat(std::int64_t num, std::int64_t den);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  Rat& operator+=(const Rat& o) { return *this = *this + o; }

  bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const;
  bool operator<=(const Rat& o) const { return !(o < *this); }
  bool operator>(const Rat& o) const { return o < *this; }
  bool operator>=(const Rat& o) const { return !(*this < o); }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  std::string to_string() const;

  static Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

 private:
  std::int64_t num_;
  std::int64_t den_;  // > 0, gcd(|num|, den) == 1
};

/// Certified lower bound on log2(m) as a dyadic rational (denominator 2^20).
/// Exact on powers of two; otherwise rounded down by 1e-9 relative before
/// flooring, so the result never exceeds the true value.
Rat log2_lower(std::uint64_t m);

/// Certified lower bound on sqrt(m), same rounding scheme. Exact on squares.
Rat sqrt_lower(std::uint64_t m);

}  // namespace freshcast
