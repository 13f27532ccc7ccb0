#pragma once

#include "qlp/rational.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qlp {

/// An element of a qualification domain: a boolean, a certainty value in
/// [0,1], a weight in [0,inf], or a pair of elements of component domains.
/// Values are immutable after construction.
class QualValue {
 public:
  enum class Kind { Bool, Cert, Weight, Pair };

  static QualValue boolean(bool b);
  static QualValue certainty(Rational q); // throws std::invalid_argument unless 0 <= q <= 1
  static QualValue weight(Rational w);    // throws unless w >= 0
  static QualValue weight_infinity();
  static QualValue pair(QualValue left, QualValue right);

  Kind kind() const { return kind_; }
  bool bool_value() const;
  const Rational& numeric() const; // Cert, or finite Weight
  bool is_infinite() const;        // Weight only
  const QualValue& left() const;   // Pair only
  const QualValue& right() const;

  bool operator==(const QualValue& o) const;
  bool operator!=(const QualValue& o) const { return !(*this == o); }

 private:
  QualValue() = default;
  Kind kind_ = Kind::Bool;
  bool flag_ = false; // Bool value, or Weight infinity marker
  Rational num_;
  std::shared_ptr<const QualValue> left_, right_;
};

/// A qualification domain: the lattice structure plus the attenuation
/// operation. B, U and W are the built-in instances; products nest freely.
/// All operations reject values that do not belong to the domain.
class Domain {
 public:
  enum class Kind { Bool, Cert, Weight, Product };

  static Domain boolean();
  static Domain certainty();
  static Domain weight();
  static Domain product(Domain left, Domain right);

  Kind kind() const { return kind_; }
  const Domain& left() const;
  const Domain& right() const;
  bool operator==(const Domain& o) const;
  bool operator!=(const Domain& o) const { return !(*this == o); }

  bool contains(const QualValue& v) const;

  QualValue bot() const;
  QualValue top() const;
  bool is_bot(const QualValue& v) const { return v == bot(); }
  bool is_top(const QualValue& v) const { return v == top(); }

  // Lattice order. Note the weight domain is ordered by *reversed* numeric
  // order: bot is infinity, top is 0, glb is the numeric maximum.
  bool leq(const QualValue& a, const QualValue& b) const;
  QualValue glb(const QualValue& a, const QualValue& b) const;
  QualValue lub(const QualValue& a, const QualValue& b) const;

  QualValue attenuate(const QualValue& d, const QualValue& e) const;

  /// Left fold of glb; the empty sequence yields top.
  QualValue big_glb(std::span<const QualValue> values) const;

  /// Value literal syntax: Bool `0|1`; Cert decimal in [0,1]; Weight decimal
  /// or `inf`; Product `(v1,v2)`. Fractions `p/q` are accepted everywhere a
  /// decimal is. Whole-string parse; nullopt on anything else.
  std::optional<QualValue> parse_value(std::string_view text) const;
  std::string format_value(const QualValue& v) const;

  std::string op_symbol() const;  // "*", "+", "&"; "*" for products
  std::string glb_name() const;   // "min", "max", "glb"

  /// CLI domain spec: `b`, `u`, `w`, or `prod:<d1>,<d2>` (recursive).
  static std::optional<Domain> parse_spec(std::string_view spec);
  std::string spec_string() const;
  std::string name() const; // "B", "U", "W", "(U x W)"

 private:
  Domain() = default;
  Kind kind_ = Kind::Bool;
  std::shared_ptr<const Domain> left_, right_;
};

using AttenuationFn =
    std::function<QualValue(const Domain&, const QualValue&, const QualValue&)>;

struct AxiomReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks the qualification-domain axioms and the lattice laws over every
/// tuple drawn from `samples` (which should include bot and top). An empty
/// violation list means the check passed.
AxiomReport check_axioms(const Domain& d, std::span<const QualValue> samples);

/// Same, with the attenuation operation replaced; lets a test harness verify
/// that a broken operation is reported.
AxiomReport check_axioms(const Domain& d, std::span<const QualValue> samples,
                         const AttenuationFn& attenuate);

/// A sample grid of at most `per_component` values per chain component,
/// always including bot and top; product grids are cross products.
std::vector<QualValue> sample_grid(const Domain& d, int per_component);

} // namespace qlp
