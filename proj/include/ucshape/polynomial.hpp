#pragma once

// Dense integer polynomials over BigInt, just enough algebra to expand the
// generating polynomials: add, multiply, powers of (1+z) and (1-4z),
// evaluation, and a pretty-printer matching the CLI output format.

#include "ucshape/exact.hpp"

#include <sstream>
#include <string>
#include <vector>

namespace ucshape {

class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

  static IntPolynomial constant(BigInt v) { return IntPolynomial({std::move(v)}); }

  static IntPolynomial monomial(const BigInt& coeff, int degree) {
    std::vector<BigInt> c(degree + 1);
    c[degree] = coeff;
    return IntPolynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero poly

  BigInt coeff(int d) const {
    if (d < 0 || d > degree()) return 0;
    return c_[d];
  }

  const std::vector<BigInt>& coeffs() const { return c_; }

  IntPolynomial& operator+=(const IntPolynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }

  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
    if (a.c_.empty() || b.c_.empty()) return {};
    std::vector<BigInt> c(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return IntPolynomial(std::move(c));
  }

  IntPolynomial& operator*=(const BigInt& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }

  static IntPolynomial pow_binomial(const BigInt& a, const BigInt& b, int e) {
    // (a + b*z)^e
    IntPolynomial acc = constant(1);
    IntPolynomial base({a, b});
    for (int i = 0; i < e; ++i) acc = acc * base;
    return acc;
  }

  BigInt eval(const BigInt& x) const {
    BigInt acc = 0;
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  bool is_zero() const { return c_.empty(); }

  bool operator==(const IntPolynomial& o) const = default;

  // 126 - 84*z ; z^2 + 2*z^3 + z^4 ; 0 for the zero polynomial.
  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t d = 0; d < c_.size(); ++d) {
      if (c_[d] == 0) continue;
      BigInt a = c_[d];
      if (first) {
        if (a < 0) os << "-";
      } else {
        os << (a < 0 ? " - " : " + ");
      }
      BigInt mag = abs(a);
      if (d == 0) {
        os << mag.str();
      } else {
        if (mag != 1) os << mag.str() << "*";
        os << "z";
        if (d > 1) os << "^" << d;
      }
      first = false;
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<BigInt> c_;
};

}  // namespace ucshape
