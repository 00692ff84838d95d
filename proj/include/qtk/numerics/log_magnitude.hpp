#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace qtk::numerics {

/// Signed magnitude stored as sign * 10^log10_mag.
///
/// The constant pipeline produces values far outside double range
/// (1/s^5 alone can exceed 10^400), so products and powers are done in
/// the log domain. Addition of same-sign values uses log-sum-exp; mixed
/// signs use log-diff-exp and keep the sign of the larger magnitude.
class LogMag {
 public:
  constexpr LogMag() = default;

  static LogMag from_double(double v) {
    if (v == 0.0) return LogMag{};
    if (!std::isfinite(v)) throw std::domain_error("LogMag: non-finite input");
    return LogMag(v < 0 ? -1 : +1, std::log10(std::fabs(v)));
  }
  /// sign * 10^l
  static LogMag from_log10(double l, int sign = +1) {
    if (sign == 0) return LogMag{};
    return LogMag(sign < 0 ? -1 : +1, l);
  }
  /// e^x without forming e^x (x may be +-1e20).
  static LogMag exp_of(double x) { return LogMag(+1, x * kLog10E); }

  int sign() const { return sign_; }
  /// -inf for zero.
  double log10_mag() const { return sign_ == 0 ? -std::numeric_limits<double>::infinity() : log_; }

  double to_double() const {
    if (sign_ == 0) return 0.0;
    return sign_ * std::pow(10.0, log_);  // may round to 0 or +-inf
  }
  bool is_zero() const { return sign_ == 0; }

  friend LogMag operator*(const LogMag& a, const LogMag& b) {
    if (a.sign_ == 0 || b.sign_ == 0) return LogMag{};
    return LogMag(a.sign_ * b.sign_, a.log_ + b.log_);
  }
  friend LogMag operator/(const LogMag& a, const LogMag& b) {
    if (b.sign_ == 0) throw std::domain_error("LogMag: division by zero");
    if (a.sign_ == 0) return LogMag{};
    return LogMag(a.sign_ * b.sign_, a.log_ - b.log_);
  }
  friend LogMag operator+(const LogMag& a, const LogMag& b) {
    if (a.sign_ == 0) return b;
    if (b.sign_ == 0) return a;
    const LogMag *big = &a, *small = &b;
    if (b.log_ > a.log_) std::swap(big, small);
    const double d = small->log_ - big->log_;  // <= 0
    if (a.sign_ == b.sign_)
      return LogMag(a.sign_, big->log_ + std::log10(1.0 + std::pow(10.0, d)));
    const double m = 1.0 - std::pow(10.0, d);
    if (m <= 0.0) return LogMag{};  // exact cancellation at this precision
    return LogMag(big->sign_, big->log_ + std::log10(m));
  }
  friend LogMag operator-(const LogMag& a, const LogMag& b) { return a + (-b); }
  LogMag operator-() const { return LogMag(-sign_, log_); }

  LogMag& operator+=(const LogMag& o) { return *this = *this + o; }
  LogMag& operator*=(const LogMag& o) { return *this = *this * o; }

  /// this^p for real p (requires positive base unless p is an integer).
  LogMag pow(double p) const {
    if (sign_ == 0) return (p > 0) ? LogMag{} : throw std::domain_error("LogMag: 0^nonpositive");
    if (sign_ < 0) {
      double ip;
      if (std::modf(p, &ip) != 0.0) throw std::domain_error("LogMag: negative base, fractional power");
      int s = (static_cast<std::int64_t>(ip) % 2 == 0) ? +1 : -1;
      return LogMag(s, log_ * p);
    }
    return LogMag(+1, log_ * p);
  }
  LogMag sqrt() const {
    if (sign_ < 0) throw std::domain_error("LogMag: sqrt of negative");
    return sign_ == 0 ? LogMag{} : LogMag(+1, log_ / 2);
  }

  friend bool operator<(const LogMag& a, const LogMag& b) {
    if (a.sign_ != b.sign_) return a.sign_ < b.sign_;
    if (a.sign_ == 0) return false;
    return a.sign_ > 0 ? a.log_ < b.log_ : a.log_ > b.log_;
  }
  friend bool operator>(const LogMag& a, const LogMag& b) { return b < a; }
  friend bool operator<=(const LogMag& a, const LogMag& b) { return !(b < a); }
  friend bool operator>=(const LogMag& a, const LogMag& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const LogMag& m) {
    return os << "(" << m.sign() << "," << m.log10_mag() << ")";
  }

 private:
  LogMag(int s, double l) : sign_(s), log_(l) {}
  static constexpr double kLog10E = 0.4342944819032518276511289;
  int sign_ = 0;
  double log_ = -std::numeric_limits<double>::infinity();
};

}  // namespace qtk::numerics
