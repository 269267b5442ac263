#include "gq/exact.hpp"

#include <sstream>

namespace gq {

namespace {
std::string rat_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}
}  // namespace

std::string CRat::str() const {
  if (im == 0) return rat_str(re);
  if (re == 0) {
    if (im == 1) return "i";
    if (im == -1) return "-i";
    return rat_str(im) + "*i";
  }
  std::string s = rat_str(re);
  if (im > 0)
    s += "+" + (im == 1 ? std::string("i") : rat_str(im) + "*i");
  else
    s += "-" + (im == -1 ? std::string("i") : rat_str(-im) + "*i");
  return "(" + s + ")";
}

HbarPoly operator+(const HbarPoly& a, const HbarPoly& b) {
  HbarPoly r = a;
  for (const auto& [k, c] : b.terms_) {
    CRat s = r.coeff(k) + c;
    if (s.is_zero())
      r.terms_.erase(k);
    else
      r.terms_[k] = s;
  }
  return r;
}

HbarPoly operator-(const HbarPoly& a, const HbarPoly& b) {
  HbarPoly neg;
  for (const auto& [k, c] : b.terms_) neg.terms_[k] = -c;
  return a + neg;
}

HbarPoly operator*(const HbarPoly& a, const HbarPoly& b) {
  HbarPoly r;
  for (const auto& [ka, ca] : a.terms_)
    for (const auto& [kb, cb] : b.terms_) {
      CRat s = r.coeff(ka + kb) + ca * cb;
      if (s.is_zero())
        r.terms_.erase(ka + kb);
      else
        r.terms_[ka + kb] = s;
    }
  return r;
}

std::string HbarPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    if (k != 0) {
      os << "*hbar";
      if (k != 1) os << "^" << k;
    }
  }
  return os.str();
}

}  // namespace gq
