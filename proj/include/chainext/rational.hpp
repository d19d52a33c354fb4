// rational.hpp
//
// Exact rational scalars. Thin value wrapper around GMP's mpq_class that
// keeps every value canonical (reduced, positive denominator) and gives the
// "p/q" text form used by all file formats.

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chainext {

class Rat {
public:
  Rat() = default;
  Rat(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(int v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rat(long num, long den) {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "p", "-p", "p/q". Whitespace is not allowed inside the token.
  static Rat parse(std::string_view text) {
    if (text.empty()) throw std::invalid_argument("Rat: empty literal");
    std::string s(text);
    if (s.front() == '+') s.erase(0, 1);
    const auto slash = s.find('/');
    auto valid_int = [](std::string_view t) {
      if (t.empty()) return false;
      std::size_t i = (t.front() == '-') ? 1 : 0;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i)
        if (t[i] < '0' || t[i] > '9') return false;
      return true;
    };
    mpq_class q;
    if (slash == std::string::npos) {
      if (!valid_int(s)) throw std::invalid_argument("Rat: bad literal '" + std::string(text) + "'");
      q = mpq_class(mpz_class(s));
    } else {
      const std::string num = s.substr(0, slash);
      const std::string den = s.substr(slash + 1);
      if (!valid_int(num) || !valid_int(den) || den.front() == '-')
        throw std::invalid_argument("Rat: bad literal '" + std::string(text) + "'");
      mpz_class d(den);
      if (d == 0) throw std::domain_error("Rat: zero denominator in '" + std::string(text) + "'");
      q = mpq_class(mpz_class(num), d);
    }
    return Rat(q);
  }

  [[nodiscard]] bool is_zero() const { return sgn(q_) == 0; }
  [[nodiscard]] bool is_one() const { return q_ == 1; }
  [[nodiscard]] int sign() const { return sgn(q_); }
  [[nodiscard]] bool is_integer() const { return q_.get_den() == 1; }

  [[nodiscard]] std::string numerator() const { return q_.get_num().get_str(); }
  [[nodiscard]] std::string denominator() const { return q_.get_den().get_str(); }

  /// Canonical "p/q" form, always with an explicit denominator.
  [[nodiscard]] std::string str() const { return numerator() + "/" + denominator(); }
  /// Compact form for human-facing reports: "p" when the denominator is 1.
  [[nodiscard]] std::string pretty() const { return is_integer() ? numerator() : str(); }

  [[nodiscard]] const mpq_class& raw() const { return q_; }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("Rat: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.pretty(); }

private:
  mpq_class q_{0};
};

}  // namespace chainext
