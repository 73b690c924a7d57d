#include <doctest.h>

#include <array>
#include <cmath>

#include "relaxlab/functional.hpp"
#include "relaxlab/nonrep.hpp"

using namespace relaxlab;

namespace {

// Plain 2x2 normal equations for rows (1, 0) -> 1/2 and
// (t^2 + (1-t)^2, 2t(1-t)) -> t^2 + (1-t)^2, solved by Cramer's rule.
double reference_residual(const std::vector<double>& ts) {
  std::vector<std::array<double, 3>> rows{{1.0, 0.0, 0.5}};
  for (double t : ts) {
    const double a = t * t + (1 - t) * (1 - t);
    rows.push_back({a, 2 * t * (1 - t), a});
  }
  double s00 = 0, s01 = 0, s11 = 0, r0 = 0, r1 = 0;
  for (const auto& r : rows) {
    s00 += r[0] * r[0];
    s01 += r[0] * r[1];
    s11 += r[1] * r[1];
    r0 += r[0] * r[2];
    r1 += r[1] * r[2];
  }
  const double det = s00 * s11 - s01 * s01;
  const double g0 = (r0 * s11 - r1 * s01) / det;
  const double g1 = (s00 * r1 - s01 * r0) / det;
  double ss = 0;
  for (const auto& r : rows) ss += std::pow(r[0] * g0 + r[1] * g1 - r[2], 2);
  return std::sqrt(ss / static_cast<double>(rows.size()));
}

const std::vector<double> kNineProbes{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};

}  // namespace

TEST_CASE("implied kernel values") {
  CHECK(implied_g0() == 0.5);
  CHECK(implied_g1(0.5) == doctest::Approx(0.5));
  CHECK(implied_g1(0.25) == doctest::Approx(5.0 / 6));
  CHECK(implied_g1(0.1) == doctest::Approx(0.82 / 0.36));
  CHECK_THROWS_AS(implied_g1(0.0), std::domain_error);
  CHECK_THROWS_AS(implied_g1(1.0), std::domain_error);
  CHECK_THROWS_AS(implied_g1(-0.2), std::domain_error);
}

TEST_CASE("implied g1 is symmetric, decreasing on (0, 1/2] and agrees with the relaxation") {
  double prev = INFINITY;
  for (int i = 1; i <= 500; ++i) {
    const double t = i / 1000.0;
    const double g = implied_g1(t);
    CHECK(g == doctest::Approx(implied_g1(1 - t)).epsilon(1e-12));
    CHECK(g < prev);
    CHECK(g >= 0.5 - 1e-15);
    CHECK(implied_g1_from_relaxation(t) == doctest::Approx(g).epsilon(1e-9));
    prev = g;
  }
}

TEST_CASE("certificate spread") {
  const auto two = nonrep_certificate({0.25, 0.5});
  CHECK(two.spread == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(two.certifies());

  const auto nine = nonrep_certificate(kNineProbes);
  CHECK(nine.spread == doctest::Approx(0.82 / 0.36 - 0.5).epsilon(1e-12));
  CHECK(std::abs(nine.spread - 1.77778) <= 1e-5);
  CHECK(nine.implied_g1.size() == kNineProbes.size());
  CHECK(nine.certifies());
}

TEST_CASE("certificate residual matches an independent least-squares fit") {
  for (const auto& ts : {kNineProbes, std::vector<double>{0.25, 0.5}, std::vector<double>{0.05, 0.3, 0.45}}) {
    const auto rep = nonrep_certificate(ts);
    CHECK(rep.residual == doctest::Approx(reference_residual(ts)).epsilon(1e-9));
    CHECK(rep.residual > 0.0);
  }
}

TEST_CASE("certificate rejects degenerate probe sets") {
  CHECK_THROWS_AS(nonrep_certificate({0.3}), std::invalid_argument);
  CHECK_THROWS_AS(nonrep_certificate({0.3, 0.7}), std::invalid_argument);
  CHECK_THROWS_AS(nonrep_certificate({0.3, 0.3}), std::invalid_argument);
  CHECK_THROWS_AS(nonrep_certificate({0.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(nonrep_certificate({0.5, 1.0}), std::invalid_argument);
}

TEST_CASE("representation residual") {
  CHECK(representation_residual(PiecewiseConstantFn::constant(0.7), 0.5, 0.5) <= 1e-15);
  CHECK(representation_residual(PiecewiseConstantFn::step(0.5), 0.5, 0.5) <= 1e-12);
  CHECK(representation_residual(PiecewiseConstantFn::step(0.25), 0.5, 0.5) == doctest::Approx(0.125));
  // Each step is matched by its own implied g1, but no single g1 works for both.
  const double g = implied_g1(0.3);
  CHECK(representation_residual(PiecewiseConstantFn::step(0.3), 0.5, g) <= 1e-12);
  CHECK(representation_residual(PiecewiseConstantFn::step(0.1), 0.5, g) > 1e-3);
  CHECK_THROWS_AS(representation_residual(PiecewiseConstantFn::step(0.5, 0.5, 0.0), 0.5, 0.5),
                  std::invalid_argument);
}
