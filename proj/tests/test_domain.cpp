#include "qlp/domain.hpp"

#include <doctest.h>

using namespace qlp;

namespace {
QualValue cert(int num, int den = 1) { return QualValue::certainty(Rational(num, den)); }
QualValue wt(int num, int den = 1) { return QualValue::weight(Rational(num, den)); }
} // namespace

TEST_SUITE("domain") {

TEST_CASE("certainty lattice is numeric order") {
  Domain u = Domain::certainty();
  CHECK(u.glb(cert(3, 10), cert(4, 5)) == cert(3, 10));
  CHECK(u.lub(cert(3, 10), cert(4, 5)) == cert(4, 5));
  CHECK(u.leq(cert(3, 10), cert(4, 5)));
  CHECK(u.bot() == cert(0));
  CHECK(u.top() == cert(1));
}

TEST_CASE("weight lattice reverses numeric order") {
  Domain w = Domain::weight();
  CHECK(w.glb(wt(2), wt(5)) == wt(5));
  CHECK(w.lub(wt(2), wt(5)) == wt(2));
  CHECK(w.top() == wt(0));
  CHECK(w.bot() == QualValue::weight_infinity());
  CHECK(w.leq(QualValue::weight_infinity(), wt(1000)));
  CHECK(w.leq(wt(5), wt(2)));
  CHECK(!w.leq(wt(2), wt(5)));
  // infinity absorbs under attenuation
  CHECK(w.attenuate(QualValue::weight_infinity(), wt(3)) == QualValue::weight_infinity());
}

TEST_CASE("product order is componentwise, not total") {
  Domain uw = Domain::product(Domain::certainty(), Domain::weight());
  QualValue a = QualValue::pair(cert(3, 10), wt(5));
  QualValue b = QualValue::pair(cert(4, 5), wt(2));
  CHECK(uw.leq(a, b)); // 0.3 <= 0.8 and 5 below 2 in W
  QualValue c = QualValue::pair(cert(4, 5), wt(5));
  QualValue d = QualValue::pair(cert(3, 10), wt(2));
  CHECK(!uw.leq(c, d));
  CHECK(!uw.leq(d, c)); // incomparable
  CHECK(uw.glb(c, d) == QualValue::pair(cert(3, 10), wt(5)));
  CHECK(uw.lub(c, d) == QualValue::pair(cert(4, 5), wt(2)));
}

TEST_CASE("attenuation per instance") {
  Domain u = Domain::certainty();
  CHECK(u.attenuate(cert(9, 10), cert(21, 100)) == cert(189, 1000));
  Domain w = Domain::weight();
  CHECK(w.attenuate(wt(1), wt(3)) == wt(4));
  Domain b = Domain::boolean();
  CHECK(b.attenuate(QualValue::boolean(true), QualValue::boolean(false)) ==
        QualValue::boolean(false));
  // d o top = d in every domain
  Domain uw = Domain::product(u, w);
  QualValue v = QualValue::pair(cert(1, 2), wt(3));
  CHECK(uw.attenuate(v, uw.top()) == v);
}

TEST_CASE("big_glb folds and defaults to top") {
  Domain u = Domain::certainty();
  std::vector<QualValue> vals{cert(1), cert(3, 10), cert(1)};
  CHECK(u.big_glb(vals) == cert(3, 10));
  CHECK(u.big_glb({}) == cert(1));
  Domain w = Domain::weight();
  CHECK(w.big_glb({}) == wt(0));
  std::vector<QualValue> example{cert(9, 10), cert(21, 100), cert(1)};
  CHECK(u.attenuate(cert(9, 10), u.big_glb(std::span(example.begin() + 1, 2))) ==
        cert(189, 1000));
}

TEST_CASE("mixing descriptors is rejected") {
  Domain u = Domain::certainty();
  CHECK_THROWS_AS(u.leq(cert(1, 2), wt(1)), std::invalid_argument);
  CHECK_THROWS_AS(u.attenuate(wt(1), wt(1)), std::invalid_argument);
  Domain uw = Domain::product(u, Domain::weight());
  CHECK_THROWS_AS(uw.glb(cert(1, 2), QualValue::pair(cert(1, 2), wt(1))),
                  std::invalid_argument);
}

TEST_CASE("axioms hold on built-in domains") {
  for (const Domain& d :
       {Domain::boolean(), Domain::certainty(), Domain::weight(),
        Domain::product(Domain::certainty(), Domain::weight()),
        Domain::product(Domain::product(Domain::certainty(), Domain::weight()),
                        Domain::boolean())}) {
    auto samples = sample_grid(d, 5);
    AxiomReport report = check_axioms(d, samples);
    CAPTURE(d.name());
    if (!report.ok()) CAPTURE(report.violations.front());
    CHECK(report.ok());
  }
}

TEST_CASE("a broken attenuation is reported") {
  Domain u = Domain::certainty();
  auto samples = sample_grid(u, 5);
  AxiomReport report = check_axioms(u, samples, [](const Domain& d, const QualValue& a,
                                                   const QualValue& b) { return d.lub(a, b); });
  CHECK(!report.ok());
}

TEST_CASE("distributivity over big_glb") {
  Domain uw = Domain::product(Domain::certainty(), Domain::weight());
  auto samples = sample_grid(uw, 4);
  for (const auto& d : samples)
    for (std::size_t i = 0; i + 2 < samples.size(); i += 3) {
      std::vector<QualValue> set{samples[i], samples[i + 1], samples[i + 2]};
      std::vector<QualValue> attenuated;
      for (const auto& e : set) attenuated.push_back(uw.attenuate(d, e));
      CHECK(uw.attenuate(d, uw.big_glb(set)) == uw.big_glb(attenuated));
    }
}

TEST_CASE("value literals round-trip") {
  Domain u = Domain::certainty();
  CHECK(u.parse_value("0.80") == cert(4, 5));
  CHECK(u.parse_value("1") == cert(1));
  CHECK(!u.parse_value("1.5").has_value());
  Domain w = Domain::weight();
  CHECK(w.parse_value("inf") == QualValue::weight_infinity());
  CHECK(w.parse_value("5.0") == wt(5));
  CHECK(w.format_value(wt(5)) == "5");
  Domain uw = Domain::product(u, w);
  QualValue pv = QualValue::pair(cert(2, 5), wt(5));
  CHECK(uw.parse_value("(0.4,5)") == pv);
  CHECK(uw.parse_value(uw.format_value(pv)) == pv);
  CHECK(u.format_value(cert(16, 25)) == "0.64");
  CHECK(u.format_value(cert(1, 3)) == "1/3");
  CHECK(u.parse_value("1/3") == cert(1, 3));
}

TEST_CASE("domain spec strings") {
  auto uw = Domain::parse_spec("prod:u,w");
  REQUIRE(uw.has_value());
  CHECK(*uw == Domain::product(Domain::certainty(), Domain::weight()));
  auto nested = Domain::parse_spec("prod:prod:u,w,b");
  REQUIRE(nested.has_value());
  CHECK(*nested == Domain::product(Domain::product(Domain::certainty(), Domain::weight()),
                                   Domain::boolean()));
  CHECK(nested->spec_string() == "prod:prod:u,w,b");
  CHECK(!Domain::parse_spec("x").has_value());
  CHECK(!Domain::parse_spec("prod:u").has_value());
}

} // TEST_SUITE
