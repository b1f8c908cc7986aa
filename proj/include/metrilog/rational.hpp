#ifndef METRILOG_RATIONAL_HPP
#define METRILOG_RATIONAL_HPP

#include <cstdint>
#include <string>

#include "metrilog/errors.hpp"

namespace metrilog {

/// Exact rational arithmetic on 64-bit numerator/denominator.
///
/// Every value is kept in canonical form: denominator > 0 and
/// gcd(|num|, den) == 1, so structural equality is value equality.
/// Intermediate products are computed in 128-bit; results that do not fit
/// back into 64 bits raise MetrilogError instead of wrapping.
class Rat {
 public:
  Rat() : num_(0), den_(1) {}
  Rat(std::int64_t num, std::int64_t den);
  static Rat integer(std::int64_t n) { return Rat(n, 1); }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_one() const { return num_ == 1 && den_ == 1; }
  bool in_unit_interval() const { return num_ >= 0 && (*this <= Rat(1, 1)); }

  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;
  Rat operator-() const { return Rat(-num_, den_); }

  bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const;
  bool operator<=(const Rat& o) const { return *this < o || *this == o; }
  bool operator>(const Rat& o) const { return o < *this; }
  bool operator>=(const Rat& o) const { return o <= *this; }

  /// Canonical text: "p/q" reduced, integers without the "/q" part.
  std::string str() const;

  static Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
  static Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

 private:
  std::int64_t num_;
  std::int64_t den_;
};

inline Rat rat(std::int64_t num, std::int64_t den) { return Rat(num, den); }

/// Checked constructor for values used as truth values, distances in
/// formulas, predicate values and thresholds: must lie in [0, 1].
Rat rat01(std::int64_t num, std::int64_t den);
Rat rat01(const Rat& r);

/// i-th element of the fixed enumeration of Q ∩ (0,1) used when a schema
/// ranges over the rationals: denominators ascending, and for each
/// denominator the numerators coprime to it, ascending.
/// 0 ↦ 1/2, 1 ↦ 1/3, 2 ↦ 2/3, 3 ↦ 1/4, 4 ↦ 3/4, 5 ↦ 1/5, ...
Rat enumerated_unit_rational(std::int64_t index);

}  // namespace metrilog

#endif
