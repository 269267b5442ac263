#include "gq/weyl.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace gq {

PolyObservable PolyObservable::monomial(int n, const std::vector<int>& exps,
                                        CRat c) {
  if (static_cast<int>(exps.size()) != 2 * n)
    throw std::invalid_argument("monomial exponent size");
  PolyObservable f(n);
  if (!c.is_zero()) f.terms_[exps] = std::move(c);
  return f;
}

PolyObservable PolyObservable::q(int n, int i) {
  std::vector<int> e(2 * n, 0);
  e[i] = 1;
  return monomial(n, e);
}

PolyObservable PolyObservable::p(int n, int i) {
  std::vector<int> e(2 * n, 0);
  e[n + i] = 1;
  return monomial(n, e);
}

PolyObservable PolyObservable::constant(int n, CRat c) {
  return monomial(n, std::vector<int>(2 * n, 0), std::move(c));
}

int PolyObservable::total_degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms_)
    deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  return deg;
}

int PolyObservable::degree_in_p() const {
  int deg = 0;
  for (const auto& [e, c] : terms_)
    deg = std::max(deg, std::accumulate(e.begin() + n_, e.end(), 0));
  return deg;
}

CRat PolyObservable::coeff(const std::vector<int>& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? CRat() : it->second;
}

void PolyObservable::add_term(const std::vector<int>& exps, const CRat& c) {
  CRat s = coeff(exps) + c;
  if (s.is_zero())
    terms_.erase(exps);
  else
    terms_[exps] = s;
}

PolyObservable PolyObservable::conj() const {
  PolyObservable r(n_);
  for (const auto& [e, c] : terms_) r.terms_[e] = c.conj();
  return r;
}

PolyObservable operator+(const PolyObservable& a, const PolyObservable& b) {
  PolyObservable r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

PolyObservable operator-(const PolyObservable& a, const PolyObservable& b) {
  PolyObservable r = a;
  for (const auto& [e, c] : b.terms_) r.add_term(e, -c);
  return r;
}

PolyObservable operator*(const PolyObservable& a, const PolyObservable& b) {
  PolyObservable r(a.n_);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      std::vector<int> e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

PolyObservable operator*(const CRat& s, const PolyObservable& a) {
  PolyObservable r(a.n_);
  if (s.is_zero()) return r;
  for (const auto& [e, c] : a.terms_) r.terms_[e] = s * c;
  return r;
}

PolyObservable PolyObservable::d_q(int i) const {
  PolyObservable r(n_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    std::vector<int> e2 = e;
    --e2[i];
    r.add_term(e2, CRat(Rational(e[i])) * c);
  }
  return r;
}

PolyObservable PolyObservable::d_p(int i) const {
  PolyObservable r(n_);
  for (const auto& [e, c] : terms_) {
    if (e[n_ + i] == 0) continue;
    std::vector<int> e2 = e;
    --e2[n_ + i];
    r.add_term(e2, CRat(Rational(e[n_ + i])) * c);
  }
  return r;
}

std::string PolyObservable::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << c.str();
    for (int i = 0; i < n_; ++i)
      if (e[i] > 0) {
        os << "*q" << (n_ > 1 ? std::to_string(i + 1) : "");
        if (e[i] > 1) os << "^" << e[i];
      }
    for (int i = 0; i < n_; ++i)
      if (e[n_ + i] > 0) {
        os << "*p" << (n_ > 1 ? std::to_string(i + 1) : "");
        if (e[n_ + i] > 1) os << "^" << e[n_ + i];
      }
  }
  return os.str();
}

PolyObservable poisson_bracket_exact(const PolyObservable& f,
                                     const PolyObservable& g) {
  if (f.dof() != g.dof())
    throw std::invalid_argument("bracket needs matching degrees of freedom");
  PolyObservable r(f.dof());
  for (int i = 0; i < f.dof(); ++i) {
    r = r + f.d_q(i) * g.d_p(i) - f.d_p(i) * g.d_q(i);
  }
  return r;
}

namespace {
int op_vars(int n, OperatorPicture pic) {
  return pic == OperatorPicture::QOnly ? n : 2 * n;
}
}  // namespace

PolyOperator PolyOperator::identity(int n, OperatorPicture pic) {
  PolyOperator r(n, pic);
  Key k{std::vector<int>(op_vars(n, pic), 0),
        std::vector<int>(op_vars(n, pic), 0)};
  r.terms_[k] = HbarPoly(CRat(1));
  return r;
}

PolyOperator PolyOperator::mult_monomial(int n, OperatorPicture pic,
                                         const std::vector<int>& exps,
                                         HbarPoly c) {
  PolyOperator r(n, pic);
  if (static_cast<int>(exps.size()) != op_vars(n, pic))
    throw std::invalid_argument("mult exponent size");
  if (!c.is_zero())
    r.terms_[{exps, std::vector<int>(op_vars(n, pic), 0)}] = std::move(c);
  return r;
}

PolyOperator PolyOperator::derivative(int n, OperatorPicture pic,
                                      const std::vector<int>& dexps,
                                      HbarPoly c) {
  PolyOperator r(n, pic);
  if (static_cast<int>(dexps.size()) != op_vars(n, pic))
    throw std::invalid_argument("derivative exponent size");
  if (!c.is_zero())
    r.terms_[{std::vector<int>(op_vars(n, pic), 0), dexps}] = std::move(c);
  return r;
}

PolyOperator PolyOperator::mult_observable(const PolyObservable& f,
                                           OperatorPicture pic) {
  if (pic == OperatorPicture::QOnly) {
    PolyOperator r(f.dof(), pic);
    for (const auto& [e, c] : f.terms()) {
      for (int i = 0; i < f.dof(); ++i)
        if (e[f.dof() + i] != 0)
          throw std::invalid_argument(
              "momentum-dependent multiplication in the q-only picture");
      std::vector<int> m(e.begin(), e.begin() + f.dof());
      r.add_term({m, std::vector<int>(f.dof(), 0)}, HbarPoly(c));
    }
    return r;
  }
  PolyOperator r(f.dof(), pic);
  for (const auto& [e, c] : f.terms())
    r.add_term({e, std::vector<int>(2 * f.dof(), 0)}, HbarPoly(c));
  return r;
}

bool PolyOperator::is_scalar() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& [k, c] = *terms_.begin();
  auto all_zero = [](const std::vector<int>& v) {
    return std::all_of(v.begin(), v.end(), [](int x) { return x == 0; });
  };
  return all_zero(k.mult) && all_zero(k.deriv);
}

HbarPoly PolyOperator::scalar_part() const {
  Key k{std::vector<int>(op_vars(n_, pic_), 0),
        std::vector<int>(op_vars(n_, pic_), 0)};
  auto it = terms_.find(k);
  return it == terms_.end() ? HbarPoly() : it->second;
}

void PolyOperator::add_term(const Key& k, const HbarPoly& c) {
  auto it = terms_.find(k);
  HbarPoly s = (it == terms_.end() ? HbarPoly() : it->second) + c;
  if (s.is_zero())
    terms_.erase(k);
  else
    terms_[k] = s;
}

PolyOperator operator+(const PolyOperator& a, const PolyOperator& b) {
  if (a.n_ != b.n_ || a.pic_ != b.pic_)
    throw std::invalid_argument("operator pictures differ");
  PolyOperator r = a;
  for (const auto& [k, c] : b.terms_) r.add_term(k, c);
  return r;
}

PolyOperator operator-(const PolyOperator& a, const PolyOperator& b) {
  return a + (HbarPoly(CRat(-1)) * b);
}

PolyOperator operator*(const HbarPoly& s, const PolyOperator& a) {
  PolyOperator r(a.n_, a.pic_);
  if (s.is_zero()) return r;
  for (const auto& [k, c] : a.terms_) {
    HbarPoly v = s * c;
    if (!v.is_zero()) r.terms_[k] = v;
  }
  return r;
}

namespace {
Rational binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Rational r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}
Rational falling(int c, int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= (c - i);
  return r;
}
}  // namespace

PolyOperator operator*(const PolyOperator& A, const PolyOperator& B) {
  if (A.n_ != B.n_ || A.pic_ != B.pic_)
    throw std::invalid_argument("operator pictures differ");
  const int v = op_vars(A.n_, A.pic_);
  PolyOperator r(A.n_, A.pic_);
  // (x^a d^b)(x^c d^d): commute d^b past x^c with the operator Leibniz rule,
  // variable by variable: d^b x^c = sum_k C(b,k) c!/(c-k)! x^{c-k} d^{b-k}.
  for (const auto& [ka, ca] : A.terms_)
    for (const auto& [kb, cb] : B.terms_) {
      std::vector<int> kmax(v);
      for (int i = 0; i < v; ++i)
        kmax[i] = std::min(ka.deriv[i], kb.mult[i]);
      std::vector<int> k(v, 0);
      while (true) {
        Rational factor = 1;
        for (int i = 0; i < v; ++i)
          factor *= binomial(ka.deriv[i], k[i]) * falling(kb.mult[i], k[i]);
        PolyOperator::Key key;
        key.mult.resize(v);
        key.deriv.resize(v);
        for (int i = 0; i < v; ++i) {
          key.mult[i] = ka.mult[i] + kb.mult[i] - k[i];
          key.deriv[i] = ka.deriv[i] - k[i] + kb.deriv[i];
        }
        r.add_term(key, HbarPoly(CRat(factor)) * (ca * cb));
        int i = 0;
        while (i < v && k[i] == kmax[i]) k[i++] = 0;
        if (i == v) break;
        ++k[i];
      }
    }
  return r;
}

PolyOperator commutator(const PolyOperator& A, const PolyOperator& B) {
  return A * B - B * A;
}

std::string PolyOperator::str() const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const Key, HbarPoly>*> items;
  for (const auto& t : terms_) items.push_back(&t);
  auto total = [](const std::vector<int>& e) {
    return std::accumulate(e.begin(), e.end(), 0);
  };
  std::sort(items.begin(), items.end(), [&](auto* a, auto* b) {
    int ma = total(a->first.mult), mb = total(b->first.mult);
    if (ma != mb) return ma < mb;
    if (a->first.mult != b->first.mult) return a->first.mult < b->first.mult;
    int da = total(a->first.deriv), db = total(b->first.deriv);
    if (da != db) return da < db;
    return a->first.deriv < b->first.deriv;
  });
  std::ostringstream os;
  auto var_name = [this](int i) {
    if (pic_ == OperatorPicture::QOnly)
      return n_ > 1 ? "q" + std::to_string(i + 1) : std::string("q");
    if (i < n_) return n_ > 1 ? "q" + std::to_string(i + 1) : std::string("q");
    return n_ > 1 ? "p" + std::to_string(i - n_ + 1) : std::string("p");
  };
  bool first = true;
  for (auto* t : items) {
    if (!first) os << " + ";
    first = false;
    os << "(" << t->second.str() << ")";
    const int v = op_vars(n_, pic_);
    for (int i = 0; i < v; ++i)
      if (t->first.mult[i] > 0) {
        os << "*" << var_name(i);
        if (t->first.mult[i] > 1) os << "^" << t->first.mult[i];
      }
    for (int i = 0; i < v; ++i)
      if (t->first.deriv[i] > 0) {
        os << "*d" << var_name(i);
        if (t->first.deriv[i] > 1) os << "^" << t->first.deriv[i];
      }
  }
  return os.str();
}

PolyOperator schrodinger_quantize(const PolyObservable& f) {
  if (f.total_degree() > 1)
    throw std::domain_error("outside P^{<=1}");
  const int n = f.dof();
  PolyOperator r(n, OperatorPicture::QOnly);
  for (const auto& [e, c] : f.terms()) {
    std::vector<int> qe(e.begin(), e.begin() + n);
    std::vector<int> pe(e.begin() + n, e.end());
    int ptot = std::accumulate(pe.begin(), pe.end(), 0);
    if (ptot == 0) {
      r.add_term({qe, std::vector<int>(n, 0)}, HbarPoly(c));
    } else {
      int i = 0;
      while (pe[i] == 0) ++i;
      std::vector<int> de(n, 0);
      de[i] = 1;
      r.add_term({std::vector<int>(n, 0), de},
                 HbarPoly::hbar(1, CRat(Rational(0), Rational(-1)) * c));
    }
  }
  return r;
}

PolyOperator weyl_quantize(const PolyObservable& f) {
  if (f.dof() != 1)
    throw std::invalid_argument("Weyl quantization implemented for n = 1");
  PolyOperator qhat =
      PolyOperator::mult_monomial(1, OperatorPicture::QOnly, {1});
  PolyOperator phat = PolyOperator::derivative(
      1, OperatorPicture::QOnly, {1},
      HbarPoly::hbar(1, CRat(Rational(0), Rational(-1))));
  PolyOperator out(1, OperatorPicture::QOnly);
  for (const auto& [e, c] : f.terms()) {
    const int j = e[0], k = e[1], m = j + k;
    // Expand (a qhat + b phat)^m tracking exponents of the formal scalars
    // (a,b); the coefficient of a^j b^k, divided by C(m,j), is W(q^j p^k).
    std::map<std::pair<int, int>, PolyOperator> table;
    table[{0, 0}] = PolyOperator::identity(1, OperatorPicture::QOnly);
    for (int step = 0; step < m; ++step) {
      std::map<std::pair<int, int>, PolyOperator> next;
      for (const auto& [ab, op] : table) {
        auto add_to = [&next](std::pair<int, int> key, const PolyOperator& v) {
          auto it = next.find(key);
          if (it == next.end())
            next.emplace(key, v);
          else
            it->second = it->second + v;
        };
        add_to({ab.first + 1, ab.second}, op * qhat);
        add_to({ab.first, ab.second + 1}, op * phat);
      }
      table = std::move(next);
    }
    auto it = table.find({j, k});
    if (it == table.end()) continue;
    CRat scale = c / CRat(binomial(m, j));
    out = out + (HbarPoly(scale) * it->second);
  }
  return out;
}

PolyOperator prequant_operator(const PolyObservable& f, PrequantGauge gauge) {
  if (f.dof() != 1)
    throw std::invalid_argument("prequantization implemented for n = 1");
  const auto pic = OperatorPicture::QP;
  // X_f = (d_q f) d_p - (d_p f) d_q.
  PolyObservable fq = f.d_q(0), fp = f.d_p(0);
  PolyOperator dq = PolyOperator::derivative(1, pic, {1, 0});
  PolyOperator dp = PolyOperator::derivative(1, pic, {0, 1});
  HbarPoly mih = HbarPoly::hbar(1, CRat(Rational(0), Rational(-1)));
  PolyOperator lift =
      mih * (PolyOperator::mult_observable(fq, pic) * dp -
             PolyOperator::mult_observable(fp, pic) * dq);
  // theta(X_f): theta = p dq gives -p d_p f; theta' = -q dp gives -q d_q f.
  PolyObservable theta_of_X =
      gauge == PrequantGauge::Standard
          ? CRat(-1) * (PolyObservable::p(1) * fp)
          : CRat(-1) * (PolyObservable::q(1) * fq);
  return lift + PolyOperator::mult_observable(theta_of_X + f, pic);
}

namespace {
PolyObservable mono1(int a, int b) {
  return PolyObservable::monomial(1, {a, b});
}
}  // namespace

PolyOperator gvh_route_ppp_qqq() {
  PolyOperator c = commutator(weyl_quantize(mono1(3, 0)),
                              weyl_quantize(mono1(0, 3)));
  HbarPoly inv_ihbar = HbarPoly::hbar(-1, CRat(Rational(0), Rational(-1)));
  return inv_ihbar * (HbarPoly(CRat(Rational(1, 9))) * c);
}

PolyOperator gvh_route_mixed() {
  PolyOperator c = commutator(weyl_quantize(mono1(2, 1)),
                              weyl_quantize(mono1(1, 2)));
  HbarPoly inv_ihbar = HbarPoly::hbar(-1, CRat(Rational(0), Rational(-1)));
  return inv_ihbar * (HbarPoly(CRat(Rational(1, 3))) * c);
}

PolyOperator gvh_discrepancy() {
  HbarPoly ihbar = HbarPoly::hbar(1, CRat(Rational(0), Rational(1)));
  return ihbar * (gvh_route_ppp_qqq() - gvh_route_mixed());
}

PolyOperator gauge_conjugate(const PolyOperator& A) {
  if (A.picture() != OperatorPicture::QP)
    throw std::invalid_argument("gauge conjugation lives in the QP picture");
  const auto pic = OperatorPicture::QP;
  const int n = A.dof();
  HbarPoly i_over_h = HbarPoly::hbar(-1, CRat(Rational(0), Rational(1)));
  // d/dq_i -> d/dq_i + (i/hbar) p_i, d/dp_i -> d/dp_i + (i/hbar) q_i.
  // Each derivative commutes with its substituted partner variable.
  PolyOperator out(n, pic);
  for (const auto& [key, c] : A.terms()) {
    PolyOperator term = PolyOperator::mult_monomial(n, pic, key.mult, c);
    for (int i = 0; i < 2 * n; ++i) {
      for (int rep = 0; rep < key.deriv[i]; ++rep) {
        std::vector<int> de(2 * n, 0);
        de[i] = 1;
        std::vector<int> me(2 * n, 0);
        me[(i + n) % (2 * n)] = 1;
        PolyOperator sub = PolyOperator::derivative(n, pic, de) +
                           PolyOperator::mult_monomial(n, pic, me, i_over_h);
        term = term * sub;
      }
    }
    out = out + term;
  }
  return out;
}

GaugeEquivalenceReport gauge_equivalence_check(const PolyObservable& f) {
  PolyOperator std_op = prequant_operator(f, PrequantGauge::Standard);
  PolyOperator alt = prequant_operator(f, PrequantGauge::Alternate);
  PolyOperator conj = gauge_conjugate(alt);
  GaugeEquivalenceReport rep;
  rep.lhs = std_op.str();
  rep.rhs = conj.str();
  rep.equal = (std_op == conj);
  return rep;
}

}  // namespace gq
