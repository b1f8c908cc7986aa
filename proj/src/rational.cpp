#include "metrilog/rational.hpp"

#include <numeric>

namespace metrilog {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v, const char* what) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw MetrilogError(std::string("rational arithmetic overflow in ") + what);
  }
  return static_cast<std::int64_t>(v);
}

Rat make(i128 num, i128 den, const char* what) {
  if (den == 0) throw MetrilogError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 a = num < 0 ? -num : num;
  i128 g = den;
  while (a != 0) {
    i128 t = g % a;
    g = a;
    a = t;
  }
  if (g == 0) g = 1;
  return Rat(narrow(num / g, what), narrow(den / g, what));
}

}  // namespace

Rat::Rat(std::int64_t num, std::int64_t den) {
  if (den == 0) throw MetrilogError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
}

Rat Rat::operator+(const Rat& o) const {
  return make(i128(num_) * o.den_ + i128(o.num_) * den_, i128(den_) * o.den_, "+");
}

Rat Rat::operator-(const Rat& o) const {
  return make(i128(num_) * o.den_ - i128(o.num_) * den_, i128(den_) * o.den_, "-");
}

Rat Rat::operator*(const Rat& o) const {
  return make(i128(num_) * o.num_, i128(den_) * o.den_, "*");
}

Rat Rat::operator/(const Rat& o) const {
  if (o.num_ == 0) throw MetrilogError("rational division by zero");
  return make(i128(num_) * o.den_, i128(den_) * o.num_, "/");
}

bool Rat::operator<(const Rat& o) const {
  return i128(num_) * o.den_ < i128(o.num_) * den_;
}

std::string Rat::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat rat01(std::int64_t num, std::int64_t den) { return rat01(Rat(num, den)); }

Rat rat01(const Rat& r) {
  if (!r.in_unit_interval()) {
    throw MetrilogError("rational " + r.str() + " out of [0, 1]");
  }
  return r;
}

Rat enumerated_unit_rational(std::int64_t index) {
  if (index < 0) throw MetrilogError("negative enumeration index");
  for (std::int64_t den = 2;; ++den) {
    for (std::int64_t num = 1; num < den; ++num) {
      if (std::gcd(num, den) != 1) continue;
      if (index == 0) return Rat(num, den);
      --index;
    }
  }
}

}  // namespace metrilog
