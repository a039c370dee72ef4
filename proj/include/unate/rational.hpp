#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <string>

#include <json.hpp>

#include "unate/errors.hpp"

namespace unate {

__extension__ typedef __int128 Wide;

/// Nonnegative-denominator fraction kept in lowest terms. Enough for domain
/// fractions on the instance sizes the exact oracles accept.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw ParameterError("zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  constexpr std::int64_t num() const noexcept { return num_; }
  constexpr std::int64_t den() const noexcept { return den_; }
  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  friend Rational operator+(Rational a, Rational b) {
    const std::int64_t g = std::gcd(a.den_, b.den_);
    return Rational(checked(static_cast<Wide>(a.num_) * (b.den_ / g) +
                            static_cast<Wide>(b.num_) * (a.den_ / g)),
                    checked(static_cast<Wide>(a.den_ / g) * b.den_));
  }
  friend Rational operator-(Rational a, Rational b) { return a + Rational(-b.num_, b.den_); }
  friend Rational operator*(Rational a, Rational b) {
    const std::int64_t g1 = std::gcd(a.num_, b.den_);
    const std::int64_t g2 = std::gcd(b.num_, a.den_);
    const auto s1 = g1 == 0 ? 1 : g1;
    const auto s2 = g2 == 0 ? 1 : g2;
    return Rational(checked(static_cast<Wide>(a.num_ / s1) * (b.num_ / s2)),
                    checked(static_cast<Wide>(a.den_ / s2) * (b.den_ / s1)));
  }
  Rational& operator+=(Rational o) { return *this = *this + o; }

  friend constexpr bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const Wide l = static_cast<Wide>(a.num_) * b.den_;
    const Wide r = static_cast<Wide>(b.num_) * a.den_;
    return l <=> r;
  }

 private:
  static std::int64_t checked(Wide v) {
    if (v > INT64_MAX || v < INT64_MIN) throw CapacityError("rational overflow");
    return static_cast<std::int64_t>(v);
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::string to_string(const Rational& q) {
  return q.den() == 1 ? std::to_string(q.num()) : std::to_string(q.num()) + "/" + std::to_string(q.den());
}

inline void to_json(nlohmann::json& j, const Rational& q) { j = to_string(q); }

}  // namespace unate
