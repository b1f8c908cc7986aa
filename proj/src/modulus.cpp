#include "metrilog/modulus.hpp"

namespace metrilog {

namespace {
const Rat kZero(0, 1);
const Rat kOne(1, 1);
const Rat kHalf(1, 2);

bool in_open_unit(const Rat& r) { return r > kZero && r < kOne; }
}  // namespace

Modulus Modulus::identity() {
  Modulus m;
  m.kind_ = Kind::identity;
  return m;
}

Modulus Modulus::linear(const Rat& slope) {
  if (!(slope > kZero)) throw MetrilogError("linear modulus needs a positive slope");
  Modulus m;
  m.kind_ = Kind::linear;
  m.slope_ = slope;
  return m;
}

Modulus Modulus::constant(const Rat& c) {
  if (!in_open_unit(c)) throw MetrilogError("constant modulus value must lie in (0, 1)");
  Modulus m;
  m.kind_ = Kind::constant;
  m.constant_ = c;
  return m;
}

Modulus Modulus::table(std::vector<std::pair<Rat, Rat>> samples) {
  if (samples.empty()) throw MetrilogError("table modulus needs at least one sample");
  for (size_t i = 0; i < samples.size(); ++i) {
    if (!in_open_unit(samples[i].first) || !in_open_unit(samples[i].second)) {
      throw MetrilogError("table modulus samples must lie in (0, 1)");
    }
    if (i > 0 && !(samples[i - 1].first < samples[i].first)) {
      throw MetrilogError("table modulus sample epsilons must be strictly increasing");
    }
    if (i > 0 && samples[i].second < samples[i - 1].second) {
      throw MetrilogError("table modulus delta values must be nondecreasing");
    }
  }
  Modulus m;
  m.kind_ = Kind::table;
  m.samples_ = std::move(samples);
  return m;
}

Rat Modulus::delta(const Rat& eps) const {
  if (!in_open_unit(eps)) throw MetrilogError("modulus queried outside (0, 1)");
  switch (kind_) {
    case Kind::identity:
      return eps;
    case Kind::linear:
      return Rat::min(slope_ * eps, (kOne + eps) * kHalf);
    case Kind::constant:
      return constant_;
    case Kind::table: {
      if (eps < samples_.front().first) {
        return samples_.front().second * eps / samples_.front().first;
      }
      Rat value = samples_.front().second;
      for (const auto& [e, d] : samples_) {
        if (e <= eps) value = d;
      }
      return value;
    }
  }
  throw MetrilogError("unreachable modulus kind");
}

Rat Modulus::sup_delta_below(const Rat& v) const {
  if (!(v > kZero) || v > kOne) throw MetrilogError("sup_delta_below needs v in (0, 1]");
  switch (kind_) {
    case Kind::identity:
      return v;
    case Kind::linear:
      return Rat::min(slope_ * v, (kOne + v) * kHalf);
    case Kind::constant:
      return constant_;
    case Kind::table: {
      if (v <= samples_.front().first) {
        return samples_.front().second * v / samples_.front().first;
      }
      Rat value = samples_.front().second;
      for (const auto& [e, d] : samples_) {
        if (e < v) value = d;
      }
      return value;
    }
  }
  throw MetrilogError("unreachable modulus kind");
}

Rat Modulus::witness_eps(const Rat& u, const Rat& v) const {
  switch (kind_) {
    case Kind::identity:
      return (Rat::max(u, kZero) + v) * kHalf;
    case Kind::linear: {
      Rat lower = Rat::max(Rat::max(u / slope_, u + u - kOne), kZero);
      return (lower + v) * kHalf;
    }
    case Kind::constant:
      return v * kHalf;
    case Kind::table: {
      if (v <= samples_.front().first) {
        Rat lower = u * samples_.front().first / samples_.front().second;
        return (lower + v) * kHalf;
      }
      Rat eps = samples_.front().first;
      for (const auto& [e, d] : samples_) {
        if (e < v && d > u) eps = e;
      }
      return eps;
    }
  }
  throw MetrilogError("unreachable modulus kind");
}

bool Modulus::operator==(const Modulus& o) const {
  return kind_ == o.kind_ && slope_ == o.slope_ && constant_ == o.constant_ && samples_ == o.samples_;
}

}  // namespace metrilog
