#include "doctest.h"

#include <cmath>

#include "hyperrho/exponents.hpp"

using namespace hyperrho;

TEST_CASE("sigma_of arithmetic and validation") {
  CHECK(sigma_of(1.0, 1.0).sigma == doctest::Approx(0.5));
  CHECK(sigma_of(1.0, 1e-9).sigma > 1.0 - 1e-9);
  CHECK(sigma_of(0.6309, 0.6309).sigma == doctest::Approx(0.5));
  CHECK_THROWS(sigma_of(1.0, 0.0));
  CHECK_THROWS(sigma_of(1.0, 2.0));
  CHECK_THROWS(sigma_of(0.0, 0.5));
}

TEST_CASE("p3_from: admissible, inadmissible, plane identity") {
  const auto p3 = p3_from(4.0 / 3.0, 4.0 / 3.0, 0.5);
  REQUIRE(p3.has_value());
  CHECK(*p3 == doctest::Approx(2.0));
  CHECK_FALSE(p3_from(4.0, 4.0, 0.5).has_value());
  CHECK_THROWS(p3_from(1.0, 2.0, 0.5));

  // r + s - t = 2 sigma whenever a value is returned
  const double r = 0.7, s = 0.9, sigma = 0.4;
  const auto q = p3_from(1.0 / r, 1.0 / s, sigma);
  REQUIRE(q.has_value());
  CHECK(r + s - 1.0 / *q == doctest::Approx(2.0 * sigma).epsilon(1e-14));
}

TEST_CASE("region classification at the quoted sample points") {
  const auto a = region_classify(0.75, 0.75, 0.5);
  CHECK(a.tags == kRegionA);
  CHECK(a.in_omega);

  const auto b = region_classify(0.4, 0.8, 0.5);
  CHECK(b.tags == kRegionB);
  CHECK(b.in_omega);

  const auto none = region_classify(0.3, 0.3, 0.5);
  CHECK(none.tags == 0);
  CHECK_FALSE(none.in_omega);

  const auto c = region_classify(0.8, 0.4, 0.5);
  CHECK(c.tags == kRegionC);
}

TEST_CASE("overlap exists below sigma = 1/2 and boundary margin works") {
  const auto both = region_classify(0.6, 0.6, 0.25);
  CHECK((both.tags & kRegionA) != 0);
  CHECK((both.tags & kRegionB) != 0);

  // r exactly on the A boundary is flagged at a generous margin
  const auto edge = region_classify(0.5, 0.75, 0.5, 1e-6);
  CHECK(edge.boundary);
  CHECK_THROWS(region_classify(0.5, 0.5, 0.5, -1.0));
}

TEST_CASE("chain choice order is A, then B, then C") {
  CHECK(choose_chain(kRegionA | kRegionB) == 'A');
  CHECK(choose_chain(kRegionB | kRegionC) == 'B');
  CHECK(choose_chain(kRegionC) == 'C');
  CHECK(choose_chain(0) == '-');
}

TEST_CASE("decomposition check: zero exceptions and area match") {
  for (double sigma : {0.25, 0.5, 0.75}) {
    const auto rep = decomposition_check(sigma, 300, 1e-12);
    CHECK(rep.exceptions == 0);
    CHECK(std::fabs(rep.area_omega - analytic_area_omega(sigma)) <= 2.0 / 300);
    CHECK(std::fabs(rep.area_a - analytic_area_a(sigma)) <= 2.0 / 300);
    CHECK(std::fabs(rep.area_b - analytic_area_b(sigma)) <= 2.0 / 300);
    CHECK(std::fabs(rep.area_c - analytic_area_b(sigma)) <= 2.0 / 300);
  }
  CHECK_THROWS(decomposition_check(0.5, 10, 1e-12));
}

TEST_CASE("rational arithmetic basics") {
  const Rational half(1, 2), third(1, 3);
  CHECK(half + third == Rational(5, 6));
  CHECK(half - third == Rational(1, 6));
  CHECK(half * third == Rational(1, 6));
  CHECK(Rational(2, 4) == half);
  CHECK(Rational(-1, -2) == half);
  CHECK(third < half);
  CHECK(reciprocal(half) == Rational(2, 1));
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("chain A: worked example and identities") {
  const Rational sigma(1, 2), r(3, 4), s(3, 4);
  const auto ch = chain_a(r, s, sigma);
  CHECK(ch.pi1_inv == Rational(1, 4));
  CHECK(ch.pi2_inv == Rational(1, 4));
  const Rational t = r + s - sigma - sigma;
  CHECK(ch.pi1_inv + ch.pi2_inv == t);
  CHECK_THROWS(chain_a(Rational(2, 5), s, sigma));  // r <= sigma
}

TEST_CASE("chain B: worked example from (r,s) = (0.4, 0.8)") {
  const Rational sigma(1, 2), r(2, 5), s(4, 5);
  const auto ch = chain_b(r, s, sigma);
  CHECK(ch.q1_inv == Rational(7, 10));
  CHECK(ch.q2_inv == Rational(3, 10));
  CHECK(ch.q1_inv == r + ch.q2_inv);  // Hoelder identity
  CHECK_THROWS(chain_b(Rational(3, 4), Rational(3, 4), sigma));  // r+s = 1+sigma
}

TEST_CASE("chain C mirrors chain B") {
  const Rational sigma(1, 2), r(4, 5), s(2, 5);
  const auto c = chain_c(r, s, sigma);
  const auto b = chain_b(s, r, sigma);
  CHECK(c.q1_inv == b.q1_inv);
  CHECK(c.q2_inv == b.q2_inv);
  CHECK_THROWS(chain_c(Rational(2, 5), Rational(4, 5), sigma));
}

TEST_CASE("exact region membership agrees with the float classifier") {
  const Rational sigma(1, 2);
  for (int i = 1; i < 20; ++i)
    for (int j = 1; j < 20; ++j) {
      const Rational r(i, 20), s(j, 20);
      const auto tags =
          region_classify(static_cast<double>(i) / 20.0,
                          static_cast<double>(j) / 20.0, 0.5, 1e-9);
      if (tags.boundary) continue;
      CHECK(in_region_a(r, s, sigma) == ((tags.tags & kRegionA) != 0));
      CHECK(in_region_b(r, s, sigma) == ((tags.tags & kRegionB) != 0));
      CHECK(in_region_c(r, s, sigma) == ((tags.tags & kRegionC) != 0));
      CHECK(in_omega(r, s, sigma) == tags.in_omega);
    }
}
