#include "qlp/domain.hpp"

#include <sstream>
#include <stdexcept>

namespace qlp {

// ---------------------------------------------------------------- QualValue

QualValue QualValue::boolean(bool b) {
  QualValue v;
  v.kind_ = Kind::Bool;
  v.flag_ = b;
  return v;
}

QualValue QualValue::certainty(Rational q) {
  if (q < 0 || q > 1) throw std::invalid_argument("certainty value outside [0,1]");
  QualValue v;
  v.kind_ = Kind::Cert;
  v.num_ = std::move(q);
  return v;
}

QualValue QualValue::weight(Rational w) {
  if (w < 0) throw std::invalid_argument("weight value must be nonnegative");
  QualValue v;
  v.kind_ = Kind::Weight;
  v.num_ = std::move(w);
  return v;
}

QualValue QualValue::weight_infinity() {
  QualValue v;
  v.kind_ = Kind::Weight;
  v.flag_ = true;
  return v;
}

QualValue QualValue::pair(QualValue left, QualValue right) {
  QualValue v;
  v.kind_ = Kind::Pair;
  v.left_ = std::make_shared<const QualValue>(std::move(left));
  v.right_ = std::make_shared<const QualValue>(std::move(right));
  return v;
}

bool QualValue::bool_value() const {
  if (kind_ != Kind::Bool) throw std::logic_error("bool_value on non-boolean");
  return flag_;
}

const Rational& QualValue::numeric() const {
  if (kind_ == Kind::Cert) return num_;
  if (kind_ == Kind::Weight && !flag_) return num_;
  throw std::logic_error("numeric() on non-numeric value");
}

bool QualValue::is_infinite() const {
  if (kind_ != Kind::Weight) throw std::logic_error("is_infinite on non-weight");
  return flag_;
}

const QualValue& QualValue::left() const {
  if (kind_ != Kind::Pair) throw std::logic_error("left() on non-pair");
  return *left_;
}

const QualValue& QualValue::right() const {
  if (kind_ != Kind::Pair) throw std::logic_error("right() on non-pair");
  return *right_;
}

bool QualValue::operator==(const QualValue& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case Kind::Bool: return flag_ == o.flag_;
    case Kind::Cert: return num_ == o.num_;
    case Kind::Weight:
      if (flag_ != o.flag_) return false;
      return flag_ || num_ == o.num_;
    case Kind::Pair: return *left_ == *o.left_ && *right_ == *o.right_;
  }
  return false;
}

// ------------------------------------------------------------------- Domain

Domain Domain::boolean() {
  Domain d;
  d.kind_ = Kind::Bool;
  return d;
}

Domain Domain::certainty() {
  Domain d;
  d.kind_ = Kind::Cert;
  return d;
}

Domain Domain::weight() {
  Domain d;
  d.kind_ = Kind::Weight;
  return d;
}

Domain Domain::product(Domain left, Domain right) {
  Domain d;
  d.kind_ = Kind::Product;
  d.left_ = std::make_shared<const Domain>(std::move(left));
  d.right_ = std::make_shared<const Domain>(std::move(right));
  return d;
}

const Domain& Domain::left() const {
  if (kind_ != Kind::Product) throw std::logic_error("left() on non-product domain");
  return *left_;
}

const Domain& Domain::right() const {
  if (kind_ != Kind::Product) throw std::logic_error("right() on non-product domain");
  return *right_;
}

bool Domain::operator==(const Domain& o) const {
  if (kind_ != o.kind_) return false;
  if (kind_ != Kind::Product) return true;
  return *left_ == *o.left_ && *right_ == *o.right_;
}

bool Domain::contains(const QualValue& v) const {
  switch (kind_) {
    case Kind::Bool: return v.kind() == QualValue::Kind::Bool;
    case Kind::Cert: return v.kind() == QualValue::Kind::Cert;
    case Kind::Weight: return v.kind() == QualValue::Kind::Weight;
    case Kind::Product:
      return v.kind() == QualValue::Kind::Pair && left_->contains(v.left()) &&
             right_->contains(v.right());
  }
  return false;
}

namespace {
void require_member(const Domain& d, const QualValue& v, const char* what) {
  if (!d.contains(v))
    throw std::invalid_argument(std::string(what) + ": value does not belong to domain " +
                                d.name());
}
} // namespace

QualValue Domain::bot() const {
  switch (kind_) {
    case Kind::Bool: return QualValue::boolean(false);
    case Kind::Cert: return QualValue::certainty(0);
    case Kind::Weight: return QualValue::weight_infinity();
    case Kind::Product: return QualValue::pair(left_->bot(), right_->bot());
  }
  throw std::logic_error("unreachable");
}

QualValue Domain::top() const {
  switch (kind_) {
    case Kind::Bool: return QualValue::boolean(true);
    case Kind::Cert: return QualValue::certainty(1);
    case Kind::Weight: return QualValue::weight(0);
    case Kind::Product: return QualValue::pair(left_->top(), right_->top());
  }
  throw std::logic_error("unreachable");
}

bool Domain::leq(const QualValue& a, const QualValue& b) const {
  require_member(*this, a, "leq");
  require_member(*this, b, "leq");
  switch (kind_) {
    case Kind::Bool: return !a.bool_value() || b.bool_value();
    case Kind::Cert: return a.numeric() <= b.numeric();
    case Kind::Weight:
      // a [= b iff a >= b numerically, with infinity below everything
      if (a.is_infinite()) return true;
      if (b.is_infinite()) return false;
      return a.numeric() >= b.numeric();
    case Kind::Product:
      return left_->leq(a.left(), b.left()) && right_->leq(a.right(), b.right());
  }
  throw std::logic_error("unreachable");
}

QualValue Domain::glb(const QualValue& a, const QualValue& b) const {
  require_member(*this, a, "glb");
  require_member(*this, b, "glb");
  switch (kind_) {
    case Kind::Bool: return QualValue::boolean(a.bool_value() && b.bool_value());
    case Kind::Cert: return a.numeric() <= b.numeric() ? a : b;
    case Kind::Weight: // numeric maximum
      if (a.is_infinite() || b.is_infinite()) return QualValue::weight_infinity();
      return a.numeric() >= b.numeric() ? a : b;
    case Kind::Product:
      return QualValue::pair(left_->glb(a.left(), b.left()), right_->glb(a.right(), b.right()));
  }
  throw std::logic_error("unreachable");
}

QualValue Domain::lub(const QualValue& a, const QualValue& b) const {
  require_member(*this, a, "lub");
  require_member(*this, b, "lub");
  switch (kind_) {
    case Kind::Bool: return QualValue::boolean(a.bool_value() || b.bool_value());
    case Kind::Cert: return a.numeric() >= b.numeric() ? a : b;
    case Kind::Weight: // numeric minimum
      if (a.is_infinite()) return b;
      if (b.is_infinite()) return a;
      return a.numeric() <= b.numeric() ? a : b;
    case Kind::Product:
      return QualValue::pair(left_->lub(a.left(), b.left()), right_->lub(a.right(), b.right()));
  }
  throw std::logic_error("unreachable");
}

QualValue Domain::attenuate(const QualValue& d, const QualValue& e) const {
  require_member(*this, d, "attenuate");
  require_member(*this, e, "attenuate");
  switch (kind_) {
    case Kind::Bool: return QualValue::boolean(d.bool_value() && e.bool_value());
    case Kind::Cert: return QualValue::certainty(d.numeric() * e.numeric());
    case Kind::Weight: // addition, infinity absorbing
      if (d.is_infinite() || e.is_infinite()) return QualValue::weight_infinity();
      return QualValue::weight(d.numeric() + e.numeric());
    case Kind::Product:
      return QualValue::pair(left_->attenuate(d.left(), e.left()),
                             right_->attenuate(d.right(), e.right()));
  }
  throw std::logic_error("unreachable");
}

QualValue Domain::big_glb(std::span<const QualValue> values) const {
  QualValue acc = top();
  for (const QualValue& v : values) acc = glb(acc, v);
  return acc;
}

std::optional<QualValue> Domain::parse_value(std::string_view text) const {
  // trim
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  if (text.empty()) return std::nullopt;
  switch (kind_) {
    case Kind::Bool: {
      if (text == "0") return QualValue::boolean(false);
      if (text == "1") return QualValue::boolean(true);
      return std::nullopt;
    }
    case Kind::Cert: {
      auto r = parse_rational(text);
      if (!r || *r < 0 || *r > 1) return std::nullopt;
      return QualValue::certainty(*r);
    }
    case Kind::Weight: {
      if (text == "inf") return QualValue::weight_infinity();
      auto r = parse_rational(text);
      if (!r || *r < 0) return std::nullopt;
      return QualValue::weight(*r);
    }
    case Kind::Product: {
      if (text.front() != '(' || text.back() != ')') return std::nullopt;
      std::string_view inner = text.substr(1, text.size() - 2);
      int depth = 0;
      std::size_t split = std::string_view::npos;
      for (std::size_t i = 0; i < inner.size(); ++i) {
        char c = inner[i];
        if (c == '(') ++depth;
        else if (c == ')') --depth;
        else if (c == ',' && depth == 0) { split = i; break; }
      }
      if (split == std::string_view::npos) return std::nullopt;
      auto l = left_->parse_value(inner.substr(0, split));
      auto r = right_->parse_value(inner.substr(split + 1));
      if (!l || !r) return std::nullopt;
      return QualValue::pair(*l, *r);
    }
  }
  return std::nullopt;
}

std::string Domain::format_value(const QualValue& v) const {
  require_member(*this, v, "format_value");
  switch (kind_) {
    case Kind::Bool: return v.bool_value() ? "1" : "0";
    case Kind::Cert: return format_rational(v.numeric());
    case Kind::Weight: return v.is_infinite() ? "inf" : format_rational(v.numeric());
    case Kind::Product:
      return "(" + left_->format_value(v.left()) + "," + right_->format_value(v.right()) + ")";
  }
  throw std::logic_error("unreachable");
}

std::string Domain::op_symbol() const {
  switch (kind_) {
    case Kind::Bool: return "&";
    case Kind::Cert: return "*";
    case Kind::Weight: return "+";
    case Kind::Product: return "*";
  }
  return "*";
}

std::string Domain::glb_name() const {
  switch (kind_) {
    case Kind::Bool: return "min";
    case Kind::Cert: return "min";
    case Kind::Weight: return "max";
    case Kind::Product: return "glb";
  }
  return "glb";
}

namespace {
std::optional<Domain> parse_spec_at(std::string_view s, std::size_t& pos) {
  auto starts = [&](std::string_view what) {
    return s.substr(pos, what.size()) == what;
  };
  if (starts("prod:")) {
    pos += 5;
    auto l = parse_spec_at(s, pos);
    if (!l || pos >= s.size() || s[pos] != ',') return std::nullopt;
    ++pos;
    auto r = parse_spec_at(s, pos);
    if (!r) return std::nullopt;
    return Domain::product(*l, *r);
  }
  if (pos < s.size()) {
    char c = s[pos];
    if (c == 'b') { ++pos; return Domain::boolean(); }
    if (c == 'u') { ++pos; return Domain::certainty(); }
    if (c == 'w') { ++pos; return Domain::weight(); }
  }
  return std::nullopt;
}
} // namespace

std::optional<Domain> Domain::parse_spec(std::string_view spec) {
  std::size_t pos = 0;
  auto d = parse_spec_at(spec, pos);
  if (!d || pos != spec.size()) return std::nullopt;
  return d;
}

std::string Domain::spec_string() const {
  switch (kind_) {
    case Kind::Bool: return "b";
    case Kind::Cert: return "u";
    case Kind::Weight: return "w";
    case Kind::Product: return "prod:" + left_->spec_string() + "," + right_->spec_string();
  }
  return "?";
}

std::string Domain::name() const {
  switch (kind_) {
    case Kind::Bool: return "B";
    case Kind::Cert: return "U";
    case Kind::Weight: return "W";
    case Kind::Product: return "(" + left_->name() + " x " + right_->name() + ")";
  }
  return "?";
}

// ----------------------------------------------------------- axiom checking

namespace {
AttenuationFn builtin_attenuate() {
  return [](const Domain& d, const QualValue& a, const QualValue& b) {
    return d.attenuate(a, b);
  };
}
} // namespace

AxiomReport check_axioms(const Domain& d, std::span<const QualValue> samples) {
  return check_axioms(d, samples, builtin_attenuate());
}

AxiomReport check_axioms(const Domain& dom, std::span<const QualValue> samples,
                         const AttenuationFn& att) {
  AxiomReport report;
  auto fail = [&](std::string msg) {
    if (report.violations.size() < 50) report.violations.push_back(std::move(msg));
  };
  auto fv = [&](const QualValue& v) { return dom.format_value(v); };

  const QualValue bot = dom.bot();
  const QualValue top = dom.top();

  // lattice order: reflexive, antisymmetric, transitive, bounded
  for (const auto& a : samples) {
    if (!dom.leq(a, a)) fail("leq not reflexive at " + fv(a));
    if (!dom.leq(bot, a)) fail("bot not below " + fv(a));
    if (!dom.leq(a, top)) fail("top not above " + fv(a));
  }
  for (const auto& a : samples)
    for (const auto& b : samples) {
      if (dom.leq(a, b) && dom.leq(b, a) && !(a == b))
        fail("leq not antisymmetric at " + fv(a) + ", " + fv(b));
      const QualValue m = dom.glb(a, b);
      const QualValue j = dom.lub(a, b);
      if (!dom.leq(m, a) || !dom.leq(m, b))
        fail("glb not a lower bound at " + fv(a) + ", " + fv(b));
      if (!dom.leq(a, j) || !dom.leq(b, j))
        fail("lub not an upper bound at " + fv(a) + ", " + fv(b));
      if (!(dom.glb(a, b) == dom.glb(b, a))) fail("glb not commutative at " + fv(a) + ", " + fv(b));
      if (!(dom.lub(a, b) == dom.lub(b, a))) fail("lub not commutative at " + fv(a) + ", " + fv(b));
    }
  for (const auto& a : samples)
    for (const auto& b : samples)
      for (const auto& c : samples) {
        if (dom.leq(a, b) && dom.leq(b, c) && !dom.leq(a, c))
          fail("leq not transitive at " + fv(a) + ", " + fv(b) + ", " + fv(c));
        // universal glb/lub property relative to the sample set; deliberately
        // avoids assuming the order is total
        if (dom.leq(c, a) && dom.leq(c, b) && !dom.leq(c, dom.glb(a, b)))
          fail("glb not greatest at " + fv(a) + ", " + fv(b) + " vs " + fv(c));
        if (dom.leq(a, c) && dom.leq(b, c) && !dom.leq(dom.lub(a, b), c))
          fail("lub not least at " + fv(a) + ", " + fv(b) + " vs " + fv(c));
        if (!(dom.glb(dom.glb(a, b), c) == dom.glb(a, dom.glb(b, c))))
          fail("glb not associative at " + fv(a) + ", " + fv(b) + ", " + fv(c));
      }

  // attenuation axioms
  for (const auto& a : samples) {
    if (!(att(dom, a, top) == a)) fail("d o top != d at " + fv(a));
    if (!(att(dom, a, bot) == bot)) fail("d o bot != bot at " + fv(a));
  }
  for (const auto& a : samples)
    for (const auto& b : samples) {
      if (!(att(dom, a, b) == att(dom, b, a)))
        fail("attenuation not commutative at " + fv(a) + ", " + fv(b));
      if (!(a == bot) && !(a == top) && !(b == bot) && !(b == top)) {
        const QualValue ab = att(dom, a, b);
        if (!(dom.leq(ab, b) && !(ab == b)))
          fail("attenuation not strictly decreasing at " + fv(a) + ", " + fv(b));
      }
    }
  for (const auto& a : samples)
    for (const auto& b : samples)
      for (const auto& c : samples) {
        if (!(att(dom, att(dom, a, b), c) == att(dom, a, att(dom, b, c))))
          fail("attenuation not associative at " + fv(a) + ", " + fv(b) + ", " + fv(c));
        if (dom.leq(b, c) && !dom.leq(att(dom, a, b), att(dom, a, c)))
          fail("attenuation not monotonic at " + fv(a) + ": " + fv(b) + " <= " + fv(c));
        if (!(att(dom, a, dom.glb(b, c)) == dom.glb(att(dom, a, b), att(dom, a, c))))
          fail("attenuation does not distribute over glb at " + fv(a) + ", " + fv(b) + ", " +
               fv(c));
      }

  return report;
}

std::vector<QualValue> sample_grid(const Domain& d, int per_component) {
  switch (d.kind()) {
    case Domain::Kind::Bool:
      return {QualValue::boolean(false), QualValue::boolean(true)};
    case Domain::Kind::Cert: {
      std::vector<QualValue> out;
      int n = std::max(per_component, 2);
      for (int i = 0; i < n; ++i) out.push_back(QualValue::certainty(Rational(i, n - 1)));
      return out;
    }
    case Domain::Kind::Weight: {
      std::vector<QualValue> out;
      out.push_back(QualValue::weight_infinity()); // bot
      out.push_back(QualValue::weight(0));         // top
      int n = std::max(per_component, 2);
      Rational step(3, 2);
      Rational v(1, 2);
      for (int i = 2; i < n; ++i) {
        out.push_back(QualValue::weight(v));
        v += step;
      }
      return out;
    }
    case Domain::Kind::Product: {
      auto ls = sample_grid(d.left(), per_component);
      auto rs = sample_grid(d.right(), per_component);
      std::vector<QualValue> out;
      out.reserve(ls.size() * rs.size());
      for (const auto& l : ls)
        for (const auto& r : rs) out.push_back(QualValue::pair(l, r));
      return out;
    }
  }
  return {};
}

} // namespace qlp
