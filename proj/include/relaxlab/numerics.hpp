#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <stdexcept>
#include <string>

namespace relaxlab {

/// A finite real or +infinity. Negative infinity and NaN are not representable.
class ExtendedReal {
 public:
  constexpr ExtendedReal() = default;

  /// Accepts finite values and +inf; throws on NaN or -inf.
  ExtendedReal(double v) {  // NOLINT(google-explicit-constructor)
    if (std::isnan(v)) throw std::invalid_argument("ExtendedReal: NaN");
    if (std::isinf(v)) {
      if (v < 0) throw std::invalid_argument("ExtendedReal: -inf");
      infinite_ = true;
      return;
    }
    value_ = v;
  }

  static constexpr ExtendedReal infinity() {
    ExtendedReal r;
    r.infinite_ = true;
    return r;
  }

  constexpr bool is_finite() const { return !infinite_; }
  constexpr bool is_infinite() const { return infinite_; }

  /// Finite payload. Throws for +inf.
  double value() const {
    if (infinite_) throw std::logic_error("ExtendedReal: value() of +inf");
    return value_;
  }

  /// +inf maps to std::numeric_limits<double>::infinity().
  constexpr double to_double() const {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  friend constexpr bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend constexpr std::partial_ordering operator<=>(const ExtendedReal& a,
                                                     const ExtendedReal& b) {
    if (a.infinite_ && b.infinite_) return std::partial_ordering::equivalent;
    if (a.infinite_) return std::partial_ordering::greater;
    if (b.infinite_) return std::partial_ordering::less;
    return a.value_ <=> b.value_;
  }

 private:
  double value_ = 0.0;
  bool infinite_ = false;
};

inline std::string to_string(const ExtendedReal& x) {
  return x.is_infinite() ? "inf" : std::to_string(x.value());
}

struct TolerancePolicy {
  double eps_well = 1e-9;    // membership in a well point
  double eps_eq = 1e-12;     // value merging in histograms
  double eps_check = 1e-10;  // cross-formula agreement and case boundaries

  void validate() const {
    if (!(eps_well > 0 && eps_eq > 0 && eps_check > 0))
      throw std::invalid_argument("TolerancePolicy: tolerances must be positive");
  }
};

inline constexpr TolerancePolicy kDefaultTolerance{};

inline ExtendedReal ext_add(const ExtendedReal& a, const ExtendedReal& b) {
  if (a.is_infinite() || b.is_infinite()) return ExtendedReal::infinity();
  return ExtendedReal(a.value() + b.value());
}

/// weight * v with the Lebesgue convention 0 * inf = 0.
inline ExtendedReal weighted_term(double weight, const ExtendedReal& v) {
  if (std::isnan(weight) || weight < 0)
    throw std::invalid_argument("weighted_term: negative weight (malformed measure)");
  if (weight == 0) return ExtendedReal(0.0);
  if (v.is_infinite()) return ExtendedReal::infinity();
  return ExtendedReal(weight * v.value());
}

/// Nearest point of [lo, hi] to x. Throws std::domain_error when lo > hi.
template <typename Scalar>
Scalar clamp(Scalar x, Scalar lo, Scalar hi) {
  if (lo > hi) throw std::domain_error("clamp: empty interval");
  if (x < lo) return lo;
  if (x > hi) return hi;
  return x;
}

}  // namespace relaxlab
