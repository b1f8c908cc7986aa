#ifndef METRILOG_MODULUS_HPP
#define METRILOG_MODULUS_HPP

#include <utility>
#include <vector>

#include "metrilog/rational.hpp"

namespace metrilog {

/// A machine-representable modulus of uniform continuity: a total
/// nondecreasing function delta : Q∩(0,1) -> Q∩(0,1) from one of four
/// families.
///
///   identity      delta(eps) = eps
///   linear(k)     delta(eps) = min(k*eps, (1+eps)/2), k > 0 rational
///                 (the second branch only bites for k > 1 and keeps the
///                 codomain inside (0,1))
///   constant(c)   delta(eps) = c, c in (0,1)
///   table         finitely many samples (eps_i, d_i), eps_i strictly
///                 increasing; below the first sample the first value is
///                 scaled down proportionally, between samples the value at
///                 the largest sample eps' <= eps applies, above the last
///                 sample the last value applies.
class Modulus {
 public:
  enum class Kind { identity, linear, constant, table };

  static Modulus identity();
  static Modulus linear(const Rat& slope);
  static Modulus constant(const Rat& c);
  static Modulus table(std::vector<std::pair<Rat, Rat>> samples);

  Kind kind() const { return kind_; }
  const Rat& slope() const { return slope_; }
  const Rat& constant_value() const { return constant_; }
  const std::vector<std::pair<Rat, Rat>>& samples() const { return samples_; }

  /// delta(eps); eps must lie in (0,1).
  Rat delta(const Rat& eps) const;

  /// sup { delta(eps) : eps in Q∩(0,v) } for v in (0,1].  The modulus
  /// implication  sup_d < delta(eps) => out <= eps  has a counterexample
  /// for a pair with input distance u and output distance v exactly when
  /// this supremum exceeds u.
  Rat sup_delta_below(const Rat& v) const;

  /// A concrete eps in (0, v) with delta(eps) > u.  Precondition:
  /// sup_delta_below(v) > u and 0 <= u, 0 < v <= 1.
  Rat witness_eps(const Rat& u, const Rat& v) const;

  bool operator==(const Modulus& o) const;
  bool operator!=(const Modulus& o) const { return !(*this == o); }

 private:
  Modulus() = default;

  Kind kind_ = Kind::identity;
  Rat slope_;
  Rat constant_;
  std::vector<std::pair<Rat, Rat>> samples_;
};

}  // namespace metrilog

#endif
