#pragma once

// Sparse multigraded polynomials over PolyRing and exterior-algebra elements
// over ExtAlgebra. Exterior monomials are index sets stored as bitmasks;
// multiplication signs come from inversion counts.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mbgg/ring.hpp"

namespace mbgg {

using ExpVec = std::vector<int>;

inline Multidegree monomialDegree(const PolyRing& S, const ExpVec& e) {
  Multidegree d = Multidegree::zero(S.degreeRank());
  for (int i = 0; i < S.nvars(); i++)
    if (e[i] != 0) d = d + S.varDegree(i) * e[i];
  return d;
}

inline ExpVec expMul(const ExpVec& a, const ExpVec& b) {
  ExpVec r = a;
  for (size_t i = 0; i < r.size(); i++) r[i] += b[i];
  return r;
}

inline bool expDivides(const ExpVec& a, const ExpVec& b) {  // a | b
  for (size_t i = 0; i < a.size(); i++)
    if (a[i] > b[i]) return false;
  return true;
}

inline ExpVec expQuotient(const ExpVec& b, const ExpVec& a) {  // b / a
  ExpVec r = b;
  for (size_t i = 0; i < r.size(); i++) r[i] -= a[i];
  return r;
}

class Polynomial {
 public:
  using TermMap = std::map<ExpVec, Scalar>;

  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }

  static Polynomial constant(RingPtr ring, const Scalar& c) {
    Polynomial p(std::move(ring));
    p.addTerm(ExpVec(p.ring_->nvars(), 0), c);
    return p;
  }

  static Polynomial one(RingPtr ring) {
    const FieldSpec f = ring->field();
    return constant(std::move(ring), f.one());
  }

  static Polynomial variable(RingPtr ring, int i) {
    Polynomial p(std::move(ring));
    ExpVec e(p.ring_->nvars(), 0);
    e[i] = 1;
    p.addTerm(e, p.ring_->field().one());
    return p;
  }

  static Polynomial monomial(RingPtr ring, const ExpVec& e, const Scalar& c) {
    Polynomial p(std::move(ring));
    p.addTerm(e, c);
    return p;
  }

  const RingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }
  size_t nterms() const { return terms_.size(); }

  void addTerm(const ExpVec& e, const Scalar& c) {
    const FieldSpec& f = ring_->field();
    Scalar cc = f.normalize(c);
    if (f.isZero(cc)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, cc);
    } else {
      it->second = f.add(it->second, cc);
      if (f.isZero(it->second)) terms_.erase(it);
    }
  }

  Polynomial operator+(const Polynomial& o) const {
    requireSameRing(ring_, o.ring_);
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.addTerm(e, c);
    return r;
  }

  Polynomial operator-(const Polynomial& o) const {
    requireSameRing(ring_, o.ring_);
    Polynomial r = *this;
    const FieldSpec& f = ring_->field();
    for (const auto& [e, c] : o.terms_) r.addTerm(e, f.neg(c));
    return r;
  }

  Polynomial operator-() const {
    Polynomial r(ring_);
    const FieldSpec& f = ring_->field();
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, f.neg(c));
    return r;
  }

  Polynomial operator*(const Polynomial& o) const {
    requireSameRing(ring_, o.ring_);
    Polynomial r(ring_);
    const FieldSpec& f = ring_->field();
    for (const auto& [e1, c1] : terms_)
      for (const auto& [e2, c2] : o.terms_) r.addTerm(expMul(e1, e2), f.mul(c1, c2));
    return r;
  }

  Polynomial scaled(const Scalar& c) const {
    Polynomial r(ring_);
    const FieldSpec& f = ring_->field();
    Scalar cc = f.normalize(c);
    if (f.isZero(cc)) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, f.mul(k, cc));
    return r;
  }

  // Multiply by the monomial c * x^e.
  Polynomial monomialShifted(const ExpVec& e, const Scalar& c) const {
    Polynomial r(ring_);
    const FieldSpec& f = ring_->field();
    Scalar cc = f.normalize(c);
    if (f.isZero(cc)) return r;
    for (const auto& [e1, c1] : terms_) r.terms_.emplace(expMul(e1, e), f.mul(c1, cc));
    return r;
  }

  bool operator==(const Polynomial& o) const {
    return ring_->sameAs(*o.ring_) && terms_ == o.terms_;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  bool isHomogeneous() const {
    std::optional<Multidegree> d;
    for (const auto& [e, c] : terms_) {
      Multidegree de = monomialDegree(*ring_, e);
      if (!d)
        d = de;
      else if (*d != de)
        return false;
    }
    return true;
  }

  // Degree of a nonzero homogeneous polynomial.
  std::optional<Multidegree> degreeOpt() const {
    std::optional<Multidegree> d;
    for (const auto& [e, c] : terms_) {
      Multidegree de = monomialDegree(*ring_, e);
      if (!d)
        d = de;
      else if (*d != de)
        throw AlgebraError(AlgebraError::Code::Inhomogeneous,
                           "degree of inhomogeneous polynomial " + str());
    }
    return d;
  }

  Multidegree degree() const {
    auto d = degreeOpt();
    if (!d)
      throw AlgebraError(AlgebraError::Code::BadInput, "degree of zero polynomial");
    return *d;
  }

  bool isConstant() const {
    if (terms_.size() != 1) return false;
    for (int v : terms_.begin()->first)
      if (v != 0) return false;
    return true;
  }

  // Nonzero constant = unit (grading positivity makes these the only units).
  std::optional<Scalar> unitValue() const {
    if (!isConstant()) return std::nullopt;
    return terms_.begin()->second;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    // display monomials in descending lex order
    std::string s;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      std::string c = ring_->field().show(it->second);
      std::string mon;
      for (int i = 0; i < ring_->nvars(); i++) {
        int e = it->first[i];
        if (e == 0) continue;
        if (!mon.empty()) mon += "*";
        mon += ring_->varNames()[i];
        if (e > 1) mon += "^" + std::to_string(e);
      }
      std::string t;
      if (mon.empty())
        t = c;
      else if (c == "1")
        t = mon;
      else if (c == "-1")
        t = "-" + mon;
      else
        t = c + "*" + mon;
      if (s.empty())
        s = t;
      else if (!t.empty() && t[0] == '-')
        s += "-" + t.substr(1);
      else
        s += "+" + t;
    }
    return s;
  }

 private:
  RingPtr ring_;
  TermMap terms_;
};

// All monomials of S of multidegree d, as exponent vectors in ascending lex
// order. DFS over variables with theta-weight pruning.
inline std::vector<ExpVec> monomialsOfDegree(const RingPtr& S, const Multidegree& d) {
  const std::vector<int>& theta = S->theta();  // throws if not positively graded
  if (d.rank() != S->degreeRank())
    throw AlgebraError(AlgebraError::Code::BadInput, "degree has wrong rank");
  std::vector<ExpVec> out;
  long budget = d.dot(theta);
  if (budget < 0) return out;
  int n = S->nvars();
  ExpVec cur(n, 0);
  // recursive lambda: assign exponent of variable i with remaining weight w
  auto rec = [&](auto&& self, int i, long w, Multidegree rem) -> void {
    if (i == n) {
      if (w == 0 && rem.isZero()) out.push_back(cur);
      return;
    }
    long wi = S->varWeight(i);
    long cap = w / wi;
    for (long e = 0; e <= cap; e++) {
      cur[i] = static_cast<int>(e);
      self(self, i + 1, w - e * wi, e == 0 ? rem : rem - S->varDegree(i) * static_cast<int>(e));
      cur[i] = 0;
    }
  };
  rec(rec, 0, budget, d);
  std::sort(out.begin(), out.end());
  return out;
}

class ExtElement {
 public:
  using TermMap = std::map<uint32_t, Scalar>;

  explicit ExtElement(ExtPtr alg) : alg_(std::move(alg)) {}

  static ExtElement zero(ExtPtr alg) { return ExtElement(std::move(alg)); }

  static ExtElement one(ExtPtr alg) {
    ExtElement r(std::move(alg));
    r.addTerm(0u, r.alg_->field().one());
    return r;
  }

  static ExtElement variable(ExtPtr alg, int i) {
    ExtElement r(std::move(alg));
    r.addTerm(1u << i, r.alg_->field().one());
    return r;
  }

  static ExtElement term(ExtPtr alg, uint32_t mask, const Scalar& c) {
    ExtElement r(std::move(alg));
    r.addTerm(mask, c);
    return r;
  }

  const ExtPtr& algebra() const { return alg_; }
  const TermMap& terms() const { return terms_; }
  bool isZero() const { return terms_.empty(); }

  void addTerm(uint32_t mask, const Scalar& c) {
    const FieldSpec& f = alg_->field();
    Scalar cc = f.normalize(c);
    if (f.isZero(cc)) return;
    auto it = terms_.find(mask);
    if (it == terms_.end()) {
      terms_.emplace(mask, cc);
    } else {
      it->second = f.add(it->second, cc);
      if (f.isZero(it->second)) terms_.erase(it);
    }
  }

  ExtElement operator+(const ExtElement& o) const {
    requireSameAlgebra(alg_, o.alg_);
    ExtElement r = *this;
    for (const auto& [m, c] : o.terms_) r.addTerm(m, c);
    return r;
  }

  ExtElement operator-(const ExtElement& o) const {
    requireSameAlgebra(alg_, o.alg_);
    ExtElement r = *this;
    const FieldSpec& f = alg_->field();
    for (const auto& [m, c] : o.terms_) r.addTerm(m, f.neg(c));
    return r;
  }

  ExtElement operator-() const {
    ExtElement r(alg_);
    const FieldSpec& f = alg_->field();
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, f.neg(c));
    return r;
  }

  ExtElement scaled(const Scalar& c) const {
    ExtElement r(alg_);
    const FieldSpec& f = alg_->field();
    Scalar cc = f.normalize(c);
    if (f.isZero(cc)) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, f.mul(k, cc));
    return r;
  }

  bool operator==(const ExtElement& o) const {
    return alg_->sameAs(*o.alg_) && terms_ == o.terms_;
  }
  bool operator!=(const ExtElement& o) const { return !(*this == o); }

  bool isHomogeneous() const {
    std::optional<Multidegree> d;
    for (const auto& [m, c] : terms_) {
      Multidegree dm = alg_->maskDegree(m);
      if (!d)
        d = dm;
      else if (*d != dm)
        return false;
    }
    return true;
  }

  std::optional<Multidegree> degreeOpt() const {
    std::optional<Multidegree> d;
    for (const auto& [m, c] : terms_) {
      Multidegree dm = alg_->maskDegree(m);
      if (!d)
        d = dm;
      else if (*d != dm)
        throw AlgebraError(AlgebraError::Code::Inhomogeneous,
                           "degree of inhomogeneous exterior element");
    }
    return d;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [m, c] : terms_) {
      std::string coeff = alg_->field().show(c);
      std::string mon;
      for (int i = 0; i < alg_->nvars(); i++)
        if (m & (1u << i)) {
          if (!mon.empty()) mon += "*";
          mon += alg_->varNames()[i];
        }
      std::string t;
      if (mon.empty())
        t = coeff;
      else if (coeff == "1")
        t = mon;
      else if (coeff == "-1")
        t = "-" + mon;
      else
        t = coeff + "*" + mon;
      if (s.empty())
        s = t;
      else if (!t.empty() && t[0] == '-')
        s += "-" + t.substr(1);
      else
        s += "+" + t;
    }
    return s;
  }

 private:
  ExtPtr alg_;
  TermMap terms_;
};

// Sign of e_a * e_b for disjoint masks: (-1)^(inversions between a and b).
inline int extSign(uint32_t a, uint32_t b) {
  int inv = 0;
  for (int j = 0; j < 32; j++)
    if (b & (1u << j)) inv += __builtin_popcount(a >> (j + 1));
  return (inv & 1) ? -1 : 1;
}

inline ExtElement extMultiply(const ExtElement& x, const ExtElement& y) {
  requireSameAlgebra(x.algebra(), y.algebra());
  ExtElement r(x.algebra());
  const FieldSpec& f = x.algebra()->field();
  for (const auto& [ma, ca] : x.terms())
    for (const auto& [mb, cb] : y.terms()) {
      if (ma & mb) continue;
      Scalar c = f.mul(ca, cb);
      if (extSign(ma, mb) < 0) c = f.neg(c);
      r.addTerm(ma | mb, c);
    }
  return r;
}

inline ExtElement operator*(const ExtElement& x, const ExtElement& y) {
  return extMultiply(x, y);
}

}  // namespace mbgg
