#include <doctest.h>

#include <limits>
#include <vector>

#include "relaxlab/numerics.hpp"

using relaxlab::ExtendedReal;

namespace {
const ExtendedReal kInf = ExtendedReal::infinity();
}

TEST_CASE("ext_add") {
  CHECK(relaxlab::ext_add(1.0, 2.0) == ExtendedReal(3.0));
  CHECK(relaxlab::ext_add(kInf, 5.0).is_infinite());
  CHECK(relaxlab::ext_add(5.0, kInf).is_infinite());
  CHECK(relaxlab::ext_add(0.0, 0.0) == ExtendedReal(0.0));
}

TEST_CASE("ext_add is commutative and associative on a sample set with +inf") {
  // Dyadic values keep finite sums exact.
  const std::vector<ExtendedReal> xs{0.0, 1.0, -2.5, 0.125, 1024.0, kInf};
  for (const auto& a : xs)
    for (const auto& b : xs) {
      CHECK(relaxlab::ext_add(a, b) == relaxlab::ext_add(b, a));
      for (const auto& c : xs)
        CHECK(relaxlab::ext_add(relaxlab::ext_add(a, b), c) == relaxlab::ext_add(a, relaxlab::ext_add(b, c)));
    }
}

TEST_CASE("weighted_term") {
  CHECK(relaxlab::weighted_term(0.0, kInf) == ExtendedReal(0.0));
  CHECK(relaxlab::weighted_term(0.5, kInf).is_infinite());
  CHECK(relaxlab::weighted_term(0.25, 1.0) == ExtendedReal(0.25));
  for (double v : {0.0, 1.0, 7.5}) CHECK(relaxlab::weighted_term(0.0, v) == ExtendedReal(0.0));
  CHECK_THROWS_AS(relaxlab::weighted_term(-0.1, 1.0), std::invalid_argument);
}

TEST_CASE("clamp") {
  CHECK(relaxlab::clamp(0.0, -0.2, 0.3) == 0.0);
  CHECK(relaxlab::clamp(0.0, 0.2, 0.5) == 0.2);
  CHECK(relaxlab::clamp(0.0, -0.5, -0.1) == -0.1);
  CHECK_THROWS_AS(relaxlab::clamp(0.0, 0.5, 0.1), std::domain_error);
  for (double x : {-3.0, -0.3, 0.0, 0.1, 0.4, 9.0}) {
    const double once = relaxlab::clamp(x, -0.2, 0.3);
    CHECK(relaxlab::clamp(once, -0.2, 0.3) == once);
  }
}

TEST_CASE("ExtendedReal ordering and construction") {
  CHECK(kInf > ExtendedReal(1e300));
  CHECK(ExtendedReal(1.0) < ExtendedReal(2.0));
  CHECK(kInf == kInf);
  CHECK(ExtendedReal(std::numeric_limits<double>::infinity()).is_infinite());
  CHECK_THROWS_AS(ExtendedReal(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
  CHECK_THROWS_AS(ExtendedReal(-std::numeric_limits<double>::infinity()), std::invalid_argument);
  CHECK_THROWS_AS((void)kInf.value(), std::logic_error);
}

TEST_CASE("TolerancePolicy rejects non-positive tolerances") {
  relaxlab::TolerancePolicy tol;
  CHECK_NOTHROW(tol.validate());
  tol.eps_eq = 0.0;
  CHECK_THROWS(tol.validate());
}
