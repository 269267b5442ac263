#ifndef GQ_EXACT_HPP
#define GQ_EXACT_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>

namespace gq {

using Rational = boost::multiprecision::cpp_rational;

// Complex number with exact rational real and imaginary parts.
struct CRat {
  Rational re = 0, im = 0;
  CRat() = default;
  CRat(long long r) : re(r) {}
  CRat(Rational r) : re(std::move(r)) {}
  CRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  static CRat i() { return CRat(Rational(0), Rational(1)); }
  bool is_zero() const { return re == 0 && im == 0; }
  CRat conj() const { return CRat(re, -im); }
  friend CRat operator+(const CRat& a, const CRat& b) {
    return CRat(a.re + b.re, a.im + b.im);
  }
  friend CRat operator-(const CRat& a, const CRat& b) {
    return CRat(a.re - b.re, a.im - b.im);
  }
  friend CRat operator-(const CRat& a) { return CRat(-a.re, -a.im); }
  friend CRat operator*(const CRat& a, const CRat& b) {
    return CRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend CRat operator/(const CRat& a, const CRat& b) {
    Rational n = b.re * b.re + b.im * b.im;
    return CRat((a.re * b.re + a.im * b.im) / n,
                (a.im * b.re - a.re * b.im) / n);
  }
  friend bool operator==(const CRat& a, const CRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  std::string str() const;
};

// Laurent polynomial in the formal central symbol hbar with CRat
// coefficients (negative powers appear transiently in gauge conjugations).
class HbarPoly {
 public:
  HbarPoly() = default;
  HbarPoly(CRat c) {
    if (!c.is_zero()) terms_[0] = std::move(c);
  }
  static HbarPoly hbar(int power = 1, CRat c = CRat(1)) {
    HbarPoly p;
    if (!c.is_zero()) p.terms_[power] = std::move(c);
    return p;
  }
  bool is_zero() const { return terms_.empty(); }
  // The coefficient of hbar^k.
  CRat coeff(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? CRat() : it->second;
  }
  const std::map<int, CRat>& terms() const { return terms_; }
  bool is_scalar() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.count(0));
  }
  friend HbarPoly operator+(const HbarPoly& a, const HbarPoly& b);
  friend HbarPoly operator-(const HbarPoly& a, const HbarPoly& b);
  friend HbarPoly operator*(const HbarPoly& a, const HbarPoly& b);
  friend bool operator==(const HbarPoly& a, const HbarPoly& b) {
    return a.terms_ == b.terms_;
  }
  std::string str() const;

 private:
  std::map<int, CRat> terms_;  // power -> coefficient, no zero entries
};

}  // namespace gq

#endif
