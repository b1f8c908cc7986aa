#include "metrilog/structure.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace metrilog {

namespace {
const Rat kZero(0, 1);
const Rat kOne(1, 1);
}  // namespace

MetricStructure::MetricStructure(Signature sig, std::vector<std::string> points)
    : sig_(std::move(sig)), points_(std::move(points)) {
  if (points_.empty()) throw MetrilogError("a metric structure needs at least one point");
  for (size_t i = 0; i < points_.size(); ++i) {
    for (size_t j = i + 1; j < points_.size(); ++j) {
      if (points_[i] == points_[j]) throw MetrilogError("duplicate point name '" + points_[i] + "'");
    }
  }
  metric_.assign(points_.size() * points_.size(), kZero);
}

int MetricStructure::point_id(const std::string& name) const {
  for (size_t i = 0; i < points_.size(); ++i) {
    if (points_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

void MetricStructure::set_distance(int a, int b, const Rat& value) {
  metric_.at(static_cast<size_t>(a) * points_.size() + static_cast<size_t>(b)) = value;
}

const Rat& MetricStructure::distance(int a, int b) const {
  return metric_.at(static_cast<size_t>(a) * points_.size() + static_cast<size_t>(b));
}

size_t MetricStructure::tuple_count(int arity) const {
  size_t count = 1;
  for (int i = 0; i < arity; ++i) count *= points_.size();
  return count;
}

size_t MetricStructure::tuple_index(const std::vector<int>& args) const {
  size_t index = 0;
  for (int a : args) {
    if (a < 0 || a >= point_count()) throw MetrilogError("point id out of range");
    index = index * points_.size() + static_cast<size_t>(a);
  }
  return index;
}

std::vector<int> MetricStructure::tuple_at(size_t index, int arity) const {
  std::vector<int> tuple(static_cast<size_t>(arity), 0);
  for (int i = arity - 1; i >= 0; --i) {
    tuple[static_cast<size_t>(i)] = static_cast<int>(index % points_.size());
    index /= points_.size();
  }
  return tuple;
}

void MetricStructure::set_function(const std::string& name, std::vector<int> table) {
  const FunctionSymbol* f = sig_.find_function(name);
  if (!f) throw MetrilogError("unknown function symbol '" + name + "'");
  if (table.size() != tuple_count(f->arity)) throw MetrilogError("function table for '" + name + "' is not total");
  for (int v : table) {
    if (v < 0 || v >= point_count()) throw MetrilogError("function value out of range in '" + name + "'");
  }
  function_interps_[name] = std::move(table);
}

void MetricStructure::set_predicate(const std::string& name, std::vector<Rat> table) {
  const PredicateSymbol* p = sig_.find_predicate(name);
  if (!p) throw MetrilogError("unknown predicate symbol '" + name + "'");
  if (table.size() != tuple_count(p->arity)) throw MetrilogError("predicate table for '" + name + "' is not total");
  for (const Rat& v : table) rat01(v);
  predicate_interps_[name] = std::move(table);
}

void MetricStructure::set_constant(const std::string& name, int point) {
  if (!sig_.has_constant(name)) throw MetrilogError("unknown constant symbol '" + name + "'");
  if (point < 0 || point >= point_count()) throw MetrilogError("constant point out of range for '" + name + "'");
  constant_interps_[name] = point;
}

void MetricStructure::set_family(const std::string& name, FamilyInterp interp) {
  if (!sig_.has_family(name)) throw MetrilogError("unknown family '" + name + "'");
  for (int v : interp.prefix) {
    if (v < 0 || v >= point_count()) throw MetrilogError("family point out of range for '" + name + "'");
  }
  if (interp.tail < 0 || interp.tail >= point_count()) {
    throw MetrilogError("family tail out of range for '" + name + "'");
  }
  family_interps_[name] = std::move(interp);
}

int MetricStructure::apply_function(const std::string& name, const std::vector<int>& args) const {
  auto it = function_interps_.find(name);
  if (it == function_interps_.end()) throw EvalError("function '" + name + "' is not interpreted");
  return it->second.at(tuple_index(args));
}

const Rat& MetricStructure::predicate_value(const std::string& name, const std::vector<int>& args) const {
  auto it = predicate_interps_.find(name);
  if (it == predicate_interps_.end()) throw EvalError("predicate '" + name + "' is not interpreted");
  return it->second.at(tuple_index(args));
}

int MetricStructure::constant_point(const std::string& name) const {
  auto it = constant_interps_.find(name);
  if (it == constant_interps_.end()) throw EvalError("constant '" + name + "' is not interpreted");
  return it->second;
}

const FamilyInterp& MetricStructure::family(const std::string& name) const {
  auto it = family_interps_.find(name);
  if (it == family_interps_.end()) throw EvalError("family '" + name + "' is not interpreted");
  return it->second;
}

void MetricStructure::check_complete() const {
  for (const auto& f : sig_.functions()) {
    if (!function_interps_.count(f.name)) throw MetrilogError("function '" + f.name + "' is not interpreted");
  }
  for (const auto& p : sig_.predicates()) {
    if (!predicate_interps_.count(p.name)) throw MetrilogError("predicate '" + p.name + "' is not interpreted");
  }
  for (const auto& c : sig_.constants()) {
    if (!constant_interps_.count(c)) throw MetrilogError("constant '" + c + "' is not interpreted");
  }
  for (const auto& fam : sig_.families()) {
    if (!family_interps_.count(fam)) throw MetrilogError("family '" + fam + "' is not interpreted");
  }
}

bool MetricStructure::operator==(const MetricStructure& o) const {
  return sig_ == o.sig_ && points_ == o.points_ && metric_ == o.metric_ && function_interps_ == o.function_interps_ &&
         predicate_interps_ == o.predicate_interps_ && constant_interps_ == o.constant_interps_ &&
         family_interps_ == o.family_interps_;
}

// ---------------------------------------------------------------------------

MetricReport validate_metric(const MetricStructure& m) {
  MetricReport report;
  const int n = m.point_count();
  for (int a = 0; a < n; ++a) {
    if (!m.distance(a, a).is_zero()) {
      report.violations.push_back({MetricAxiom::reflexivity, {a}, "d(" + m.point_name(a) + ", " + m.point_name(a) +
                                                                      ") = " + m.distance(a, a).str()});
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (m.distance(a, b) != m.distance(b, a)) {
        report.violations.push_back({MetricAxiom::symmetry,
                                     {a, b},
                                     "d(" + m.point_name(a) + ", " + m.point_name(b) + ") = " + m.distance(a, b).str() +
                                         " but d(" + m.point_name(b) + ", " + m.point_name(a) + ") = " +
                                         m.distance(b, a).str()});
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (m.distance(a, b) > kOne) {
        report.violations.push_back({MetricAxiom::bound,
                                     {a, b},
                                     "d(" + m.point_name(a) + ", " + m.point_name(b) + ") = " + m.distance(a, b).str() +
                                         " exceeds 1"});
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (m.distance(a, b) > m.distance(a, c) + m.distance(c, b)) {
          report.violations.push_back({MetricAxiom::triangle,
                                       {a, c, b},
                                       "d(" + m.point_name(a) + ", " + m.point_name(b) + ") = " +
                                           m.distance(a, b).str() + " > " + m.distance(a, c).str() + " + " +
                                           m.distance(c, b).str() + " via " + m.point_name(c)});
        }
      }
    }
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (m.distance(a, b).is_zero() && m.distance(b, a).is_zero()) {
        report.warnings.push_back("pseudometric identification: distinct points " + m.point_name(a) + ", " +
                                  m.point_name(b) + " are at distance 0");
      }
    }
  }
  return report;
}

Rat product_metric(const MetricStructure& m, const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw MetrilogError("product_metric: tuple length mismatch");
  if (a.empty()) throw MetrilogError("product_metric: empty tuples");
  Rat sup = kZero;
  for (size_t i = 0; i < a.size(); ++i) sup = Rat::max(sup, m.distance(a[i], b[i]));
  return sup;
}

namespace {

ModulusReport check_modulus_impl(const MetricStructure& m, const std::string& symbol, int arity,
                                 const Modulus& modulus, bool is_function) {
  ModulusReport report;
  report.symbol = symbol;
  const size_t tuples = m.tuple_count(arity);
  for (size_t ia = 0; ia < tuples; ++ia) {
    std::vector<int> a = m.tuple_at(ia, arity);
    for (size_t ib = ia + 1; ib < tuples; ++ib) {
      std::vector<int> b = m.tuple_at(ib, arity);
      Rat input_sup = product_metric(m, a, b);
      Rat out;
      if (is_function) {
        out = m.distance(m.apply_function(symbol, a), m.apply_function(symbol, b));
      } else {
        out = m.predicate_value(symbol, a) - m.predicate_value(symbol, b);
        if (out < kZero) out = -out;
      }
      if (!(out > kZero)) continue;
      Rat v = Rat::min(out, kOne);
      if (modulus.sup_delta_below(v) > input_sup) {
        Rat eps = modulus.witness_eps(input_sup, v);
        report.counterexamples.push_back({a, b, eps, modulus.delta(eps), input_sup, out});
      }
    }
  }
  return report;
}

}  // namespace

ModulusReport check_modulus(const MetricStructure& m, const std::string& symbol) {
  if (const FunctionSymbol* f = m.sig().find_function(symbol)) {
    return check_modulus_impl(m, symbol, f->arity, f->modulus, true);
  }
  if (const PredicateSymbol* p = m.sig().find_predicate(symbol)) {
    return check_modulus_impl(m, symbol, p->arity, p->modulus, false);
  }
  throw EvalError("unknown symbol '" + symbol + "' in check_modulus");
}

bool is_discrete(const MetricStructure& m) {
  const int n = m.point_count();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const Rat& d = m.distance(a, b);
      if (!d.is_zero() && !d.is_one()) return false;
    }
  }
  for (const auto& [name, table] : m.predicate_tables()) {
    for (const Rat& v : table) {
      if (!v.is_zero() && !v.is_one()) return false;
    }
  }
  return true;
}

QuotientResult quotient_zero_distance(const MetricStructure& m) {
  const int n = m.point_count();
  std::vector<int> root(static_cast<size_t>(n));
  std::iota(root.begin(), root.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (root[static_cast<size_t>(x)] != x) x = root[static_cast<size_t>(x)] = root[root[static_cast<size_t>(x)]];
    return x;
  };
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (m.distance(a, b).is_zero() && m.distance(b, a).is_zero()) {
        int ra = find(a), rb = find(b);
        if (ra != rb) root[static_cast<size_t>(std::max(ra, rb))] = std::min(ra, rb);
      }
    }
  }

  std::vector<int> reps;
  std::vector<int> rep_index(static_cast<size_t>(n), -1);
  for (int a = 0; a < n; ++a) {
    if (find(a) == a) {
      rep_index[static_cast<size_t>(a)] = static_cast<int>(reps.size());
      reps.push_back(a);
    }
  }
  std::vector<int> point_map(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) point_map[static_cast<size_t>(a)] = rep_index[static_cast<size_t>(find(a))];

  std::vector<std::string> names;
  names.reserve(reps.size());
  for (int r : reps) names.push_back(m.point_name(r));
  MetricStructure q(m.sig(), names);
  for (size_t i = 0; i < reps.size(); ++i) {
    for (size_t j = 0; j < reps.size(); ++j) {
      q.set_distance(static_cast<int>(i), static_cast<int>(j), m.distance(reps[i], reps[j]));
    }
  }
  for (const auto& f : m.sig().functions()) {
    const size_t count = q.tuple_count(f.arity);
    std::vector<int> table(count);
    for (size_t t = 0; t < count; ++t) {
      std::vector<int> args = q.tuple_at(t, f.arity);
      for (int& a : args) a = reps[static_cast<size_t>(a)];
      table[t] = point_map[static_cast<size_t>(m.apply_function(f.name, args))];
    }
    q.set_function(f.name, std::move(table));
  }
  for (const auto& p : m.sig().predicates()) {
    const size_t count = q.tuple_count(p.arity);
    std::vector<Rat> table(count, kZero);
    for (size_t t = 0; t < count; ++t) {
      std::vector<int> args = q.tuple_at(t, p.arity);
      for (int& a : args) a = reps[static_cast<size_t>(a)];
      table[t] = m.predicate_value(p.name, args);
    }
    q.set_predicate(p.name, std::move(table));
  }
  for (const auto& c : m.sig().constants()) {
    q.set_constant(c, point_map[static_cast<size_t>(m.constant_point(c))]);
  }
  for (const auto& fam : m.sig().families()) {
    const FamilyInterp& src = m.family(fam);
    FamilyInterp dst;
    dst.prefix.reserve(src.prefix.size());
    for (int p : src.prefix) dst.prefix.push_back(point_map[static_cast<size_t>(p)]);
    dst.tail = point_map[static_cast<size_t>(src.tail)];
    q.set_family(fam, std::move(dst));
  }

  QuotientResult result{std::move(q), std::move(point_map), reps.size() != static_cast<size_t>(n)};
  return result;
}

}  // namespace metrilog
