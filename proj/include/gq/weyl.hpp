#ifndef GQ_WEYL_HPP
#define GQ_WEYL_HPP

#include <map>
#include <string>
#include <vector>

#include "gq/exact.hpp"

namespace gq {

// Polynomial observable on R^{2n}: exact complex-rational coefficients on
// monomials q^a p^b, with exponents stored as (a_1..a_n, b_1..b_n).
class PolyObservable {
 public:
  explicit PolyObservable(int n = 1) : n_(n) {}
  int dof() const { return n_; }
  static PolyObservable monomial(int n, const std::vector<int>& exps,
                                 CRat c = CRat(1));
  static PolyObservable q(int n = 1, int i = 0);
  static PolyObservable p(int n = 1, int i = 0);
  static PolyObservable constant(int n, CRat c);

  bool is_zero() const { return terms_.empty(); }
  int total_degree() const;
  int degree_in_p() const;
  CRat coeff(const std::vector<int>& exps) const;
  const std::map<std::vector<int>, CRat>& terms() const { return terms_; }
  void add_term(const std::vector<int>& exps, const CRat& c);
  PolyObservable conj() const;

  friend PolyObservable operator+(const PolyObservable&, const PolyObservable&);
  friend PolyObservable operator-(const PolyObservable&, const PolyObservable&);
  friend PolyObservable operator*(const PolyObservable&, const PolyObservable&);
  friend PolyObservable operator*(const CRat&, const PolyObservable&);
  friend bool operator==(const PolyObservable& a, const PolyObservable& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  PolyObservable d_q(int i) const;
  PolyObservable d_p(int i) const;
  std::string str() const;

 private:
  int n_;
  std::map<std::vector<int>, CRat> terms_;
};

// Exact Poisson bracket sum_i d_q f d_p g - d_p f d_q g.
PolyObservable poisson_bracket_exact(const PolyObservable& f,
                                     const PolyObservable& g);

// Differential operator with polynomial coefficients, in normal-ordered form
// (all multiplication operators to the left of all derivatives), with
// HbarPoly coefficients. Two pictures:
//   QOnly: variables q_1..q_n, derivatives d/dq_i      (Schrodinger)
//   QP:    variables q_1..q_n,p_1..p_n and both derivative families
//          (prequantum, operators act on phase-space functions)
enum class OperatorPicture { QOnly, QP };

class PolyOperator {
 public:
  PolyOperator(int n = 1, OperatorPicture pic = OperatorPicture::QOnly)
      : n_(n), pic_(pic) {}
  int dof() const { return n_; }
  OperatorPicture picture() const { return pic_; }

  // Key: multiplication exponents then derivative exponents. QOnly has
  // n mult + n deriv entries; QP has 2n mult + 2n deriv entries.
  struct Key {
    std::vector<int> mult, deriv;
    bool operator<(const Key& o) const {
      return std::tie(mult, deriv) < std::tie(o.mult, o.deriv);
    }
    bool operator==(const Key& o) const {
      return mult == o.mult && deriv == o.deriv;
    }
  };

  static PolyOperator identity(int n, OperatorPicture pic);
  static PolyOperator zero(int n, OperatorPicture pic) {
    return PolyOperator(n, pic);
  }
  // Multiplication by a monomial / a single derivative.
  static PolyOperator mult_monomial(int n, OperatorPicture pic,
                                    const std::vector<int>& exps,
                                    HbarPoly c = HbarPoly(CRat(1)));
  static PolyOperator derivative(int n, OperatorPicture pic,
                                 const std::vector<int>& dexps,
                                 HbarPoly c = HbarPoly(CRat(1)));
  static PolyOperator mult_observable(const PolyObservable& f,
                                      OperatorPicture pic);

  bool is_zero() const { return terms_.empty(); }
  // True when the operator is c(hbar) * identity.
  bool is_scalar() const;
  HbarPoly scalar_part() const;
  const std::map<Key, HbarPoly>& terms() const { return terms_; }
  void add_term(const Key& k, const HbarPoly& c);

  friend PolyOperator operator+(const PolyOperator&, const PolyOperator&);
  friend PolyOperator operator-(const PolyOperator&, const PolyOperator&);
  friend PolyOperator operator*(const HbarPoly&, const PolyOperator&);
  // Operator composition with exact normal-ordering.
  friend PolyOperator operator*(const PolyOperator&, const PolyOperator&);
  friend bool operator==(const PolyOperator& a, const PolyOperator& b) {
    return a.n_ == b.n_ && a.pic_ == b.pic_ && a.terms_ == b.terms_;
  }

  // Deterministic pretty-print: graded-lex on multiplication exponents, then
  // derivative exponents.
  std::string str() const;

 private:
  int n_;
  OperatorPicture pic_;
  std::map<Key, HbarPoly> terms_;
};

PolyOperator commutator(const PolyOperator& A, const PolyOperator& B);

// Schrodinger quantization of degree <= 1 observables: q^i -> mult,
// p_i -> -i hbar d/dq^i. Throws "outside P^{<=1}" beyond degree one.
PolyOperator schrodinger_quantize(const PolyObservable& f);

// Weyl (totally symmetrized) quantization for one degree of freedom,
// defined through the expansion (a q + b p)^m -> (a q' + b p')^m.
PolyOperator weyl_quantize(const PolyObservable& f);

// Prequantization on R^2 acting on phase-space functions:
//   P_f = -i hbar X_f + (theta(X_f))^ + f^
// with X_f = (d_q f) d_p - (d_p f) d_q, for theta = p dq (Standard) or
// theta' = -q dp (Alternate). Satisfies [P_f,P_g] = -i hbar P_{f,g} exactly.
enum class PrequantGauge { Standard, Alternate };
PolyOperator prequant_operator(const PolyObservable& f,
                               PrequantGauge gauge = PrequantGauge::Standard);

// The obstruction witness: (1/9)[W(q^3),W(p^3)] - (1/3)[W(q^2 p),W(p^2 q)].
// A nonzero scalar multiple of the identity, proportional to hbar^3.
PolyOperator gvh_discrepancy();
// The two bracket-route quantizations of p^2 q^2 (each bracket commutator
// divided by i hbar); they differ from W(p^2 q^2) by distinct scalars.
PolyOperator gvh_route_ppp_qqq();
PolyOperator gvh_route_mixed();

// Checks P^std_f == conj(P'_f) under the formal conjugation
// d/dq -> d/dq + (i/hbar) p, d/dp -> d/dp + (i/hbar) q implementing the
// multiplication-by-exp((i/hbar) q p) gauge equivalence.
struct GaugeEquivalenceReport {
  bool equal = false;
  std::string lhs, rhs;
};
GaugeEquivalenceReport gauge_equivalence_check(const PolyObservable& f);
// The conjugation itself (exposed for tests).
PolyOperator gauge_conjugate(const PolyOperator& A);

}  // namespace gq

#endif
