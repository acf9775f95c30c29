#include "freshcast/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace freshcast {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::BadRoot: return "BadRoot";
    case ErrorKind::NotATree: return "NotATree";
    case ErrorKind::TooSmall: return "TooSmall";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::VertexClash: return "VertexClash";
    case ErrorKind::UnknownEdge: return "UnknownEdge";
    case ErrorKind::EmptySchedule: return "EmptySchedule";
    case ErrorKind::InvalidMatching: return "InvalidMatching";
    case ErrorKind::WindowTooShort: return "WindowTooShort";
    case ErrorKind::NoLowPoint: return "NoLowPoint";
    case ErrorKind::NotABroadcast: return "NotABroadcast";
    case ErrorKind::InconsistentArrivalTimes: return "InconsistentArrivalTimes";
    case ErrorKind::BadSequence: return "BadSequence";
    case ErrorKind::SumNotOne: return "SumNotOne";
    case ErrorKind::InvalidPeriods: return "InvalidPeriods";
    case ErrorKind::InfeasibleAssignment: return "InfeasibleAssignment";
    case ErrorKind::NotGapTree: return "NotGapTree";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

namespace {

std::int64_t checked_narrow(__int128 x) {
  if (x > static_cast<__int128>(INT64_MAX) || x < static_cast<__int128>(INT64_MIN)) {
    throw Error(ErrorKind::Internal, "rational overflow");
  }
  return static_cast<std::int64_t>(x);
}

__int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rat::Rat(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorKind::Internal, "zero denominator");
  __int128 n = num;
  __int128 d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  __int128 g = gcd128(n, d);
  if (g == 0) g = 1;
  num_ = checked_narrow(n / g);
  den_ = checked_narrow(d / g);
}

Rat Rat::operator+(const Rat& o) const {
  __int128 n = static_cast<__int128>(num_) * o.den_ + static_cast<__int128>(o.num_) * den_;
  __int128 d = static_cast<__int128>(den_) * o.den_;
  __int128 g = gcd128(n, d);
  if (g == 0) g = 1;
  Rat r;
  r.num_ = checked_narrow(n / g);
  r.den_ = checked_narrow(d / g);
  return r;
}

Rat Rat::operator-(const Rat& o) const {
  Rat neg;
  neg.num_ = -o.num_;
  neg.den_ = o.den_;
  return *this + neg;
}

Rat Rat::operator*(const Rat& o) const {
  __int128 n = static_cast<__int128>(num_) * o.num_;
  __int128 d = static_cast<__int128>(den_) * o.den_;
  __int128 g = gcd128(n, d);
  if (g == 0) g = 1;
  Rat r;
  r.num_ = checked_narrow(n / g);
  r.den_ = checked_narrow(d / g);
  return r;
}

Rat Rat::operator/(const Rat& o) const {
  if (o.num_ == 0) throw Error(ErrorKind::Internal, "division by zero");
  Rat inv;
  inv.num_ = o.num_ < 0 ? -o.den_ : o.den_;
  inv.den_ = o.num_ < 0 ? -o.num_ : o.num_;
  return *this * inv;
}

bool Rat::operator<(const Rat& o) const {
  return static_cast<__int128>(num_) * o.den_ < static_cast<__int128>(o.num_) * den_;
}

std::string Rat::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

namespace {

constexpr int kDyadicBits = 20;  // keeps squared dyadics within int64

Rat dyadic_floor(long double x) {
  // Round down by 1e-9 relative, then floor onto a 2^-32 grid. The input is
  // a long-double evaluation of an exactly representable integer function, so
  // the shaved margin dominates any libm error and the result is a certified
  // lower bound.
  if (x <= 0.0L) return Rat(0);
  long double shaved = x * (1.0L - 1e-9L);
  long double scaled = shaved * static_cast<long double>(1ull << kDyadicBits);
  if (scaled >= 9.2e18L) throw Error(ErrorKind::Internal, "dyadic overflow");
  return Rat(static_cast<std::int64_t>(std::floor(scaled)), std::int64_t(1) << kDyadicBits);
}

}  // namespace

Rat log2_lower(std::uint64_t m) {
  if (m == 0) throw Error(ErrorKind::Internal, "log2 of zero");
  if ((m & (m - 1)) == 0) {
    int e = 0;
    while ((std::uint64_t(1) << e) != m) ++e;
    return Rat(e);
  }
  return dyadic_floor(std::log2l(static_cast<long double>(m)));
}

Rat sqrt_lower(std::uint64_t m) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrtl(static_cast<long double>(m)));
  while (r * r > m) --r;
  while ((r + 1) * (r + 1) <= m) ++r;
  if (r * r == m) return Rat(static_cast<std::int64_t>(r));
  return dyadic_floor(std::sqrtl(static_cast<long double>(m)));
}

}  // namespace freshcast
