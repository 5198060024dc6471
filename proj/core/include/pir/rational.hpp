#ifndef PIR_RATIONAL_HPP
#define PIR_RATIONAL_HPP

#include <cstdint>
#include <string>

namespace pir {

/* Exact rational number with a normalized representation: reduced to lowest
   terms, denominator > 0. Covers the cost arithmetic of this toolkit, where
   numerators and denominators stay tiny. */
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t num, std::int64_t den);
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT: implicit by design

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;
  bool operator<=(const Rational& o) const { return *this < o || *this == o; }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return o <= *this; }

  // "3/4"; integral values print without the denominator.
  std::string str() const;
  static Rational parse(const std::string& text);

 private:
  std::int64_t num_;
  std::int64_t den_;
};

}  // namespace pir

#endif  // PIR_RATIONAL_HPP
