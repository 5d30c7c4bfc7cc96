#pragma once

// Buchberger engine for submodules of free modules over a positively
// multigraded polynomial ring.
//
// Monomial order: theta-weighted grevlex. Module order: position-over-term,
// lower generator index first. Input columns must be homogeneous; pairs are
// processed in ascending theta-degree (normal selection).
//
// Syzygies come from Schreyer-style reduction traces. In trace mode every
// S-pair is processed (no pair-skipping criteria), since a skipped pair's
// trace is a needed syzygy generator.

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>
#include <vector>

#include "mbgg/module.hpp"

namespace mbgg {

class ModuleOrder {
 public:
  explicit ModuleOrder(RingPtr ring) : ring_(std::move(ring)) {
    for (int i = 0; i < ring_->nvars(); i++) w_.push_back(ring_->varWeight(i));
  }

  long weight(const ExpVec& e) const {
    long s = 0;
    for (size_t i = 0; i < e.size(); i++) s += w_[i] * e[i];
    return s;
  }

  // -1 / 0 / +1 for a < b / a == b / a > b in theta-grevlex.
  int cmpMonomial(const ExpVec& a, const ExpVec& b) const {
    long wa = weight(a), wb = weight(b);
    if (wa != wb) return wa < wb ? -1 : 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; i--)
      if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;  // smaller last exponent wins
    return 0;
  }

  // position-over-term: lower position is greater.
  int cmpTerm(int pa, const ExpVec& ea, int pb, const ExpVec& eb) const {
    if (pa != pb) return pa < pb ? 1 : -1;
    return cmpMonomial(ea, eb);
  }

 private:
  RingPtr ring_;
  std::vector<long> w_;
};

struct LeadTerm {
  int pos = -1;
  ExpVec exp;
  Scalar coeff;
};

inline std::optional<LeadTerm> leadTerm(const Vec& v, const ModuleOrder& ord) {
  std::optional<LeadTerm> best;
  for (size_t p = 0; p < v.size(); p++)
    for (const auto& [e, c] : v[p].terms()) {
      if (!best || ord.cmpTerm(static_cast<int>(p), e, best->pos, best->exp) > 0)
        best = LeadTerm{static_cast<int>(p), e, c};
    }
  return best;
}

class GBEngine {
 public:
  struct Syzygy {
    Vec comb;  // over fed generators: sum comb[j] * gen_j == 0
    Multidegree deg;
  };

  GBEngine(FreeModule ambient, bool trace)
      : amb_(std::move(ambient)), ord_(amb_.ring), trace_(trace) {}

  const FreeModule& ambient() const { return amb_; }
  int numGens() const { return ngens_; }

  // Feed one homogeneous generator with its declared element degree, then
  // saturate the pair queue. Returns false if it reduced to zero (i.e. was
  // already in the span of earlier generators).
  bool feed(Vec v, const Multidegree& deg) {
    int idx = ngens_++;
    Vec rep;
    if (trace_) {
      for (auto& s : syz_) s.comb.push_back(Polynomial::zero(ring()));
      for (auto& e : basis_) e.rep.push_back(Polynomial::zero(ring()));
      rep = zeroVec(ring(), ngens_);
      rep[idx] = Polynomial::one(ring());
    }
    Vec rem = reduceFull(std::move(v), trace_ ? &rep : nullptr);
    bool fresh = !vecIsZero(rem);
    if (!fresh) {
      if (trace_) syz_.push_back({std::move(rep), deg});
    } else {
      addElement(std::move(rem), std::move(rep), deg);
      processPairs();
    }
    return fresh;
  }

  // Normal form modulo the current basis (unique once feeding is finished).
  Vec normalForm(Vec v) const { return reduceFull(std::move(v), nullptr); }

  bool contains(Vec v) const { return vecIsZero(normalForm(std::move(v))); }

  const std::vector<Syzygy>& syzygies() const { return syz_; }

  // lead terms (position, exponent) of the current basis
  std::vector<std::pair<int, ExpVec>> leadTerms() const {
    std::vector<std::pair<int, ExpVec>> out;
    for (const auto& e : basis_) out.emplace_back(e.lpos, e.lexp);
    return out;
  }

  // Canonical reduced GB: minimal leads, tails reduced, monic, sorted by
  // ascending lead term.
  std::vector<Vec> reducedBasis() const {
    const FieldSpec& f = ring()->field();
    std::vector<int> order(basis_.size());
    for (size_t i = 0; i < order.size(); i++) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return ord_.cmpTerm(basis_[a].lpos, basis_[a].lexp, basis_[b].lpos,
                          basis_[b].lexp) < 0;
    });
    std::vector<int> kept;
    for (int k : order) {
      bool redundant = false;
      for (int j : kept)
        if (basis_[j].lpos == basis_[k].lpos &&
            expDivides(basis_[j].lexp, basis_[k].lexp)) {
          redundant = true;
          break;
        }
      if (!redundant) kept.push_back(k);
    }
    std::vector<Vec> out;
    for (int k : kept) {
      // reduce the tail against the other kept elements
      Vec lead = zeroVec(ring(), amb_.rank());
      lead[basis_[k].lpos] =
          Polynomial::monomial(ring(), basis_[k].lexp, basis_[k].lc);
      Vec tail = vecSub(basis_[k].v, lead);
      Vec nf = reduceAgainst(std::move(tail), kept);
      Vec r = vecAdd(lead, nf);
      Scalar inv = f.inv(basis_[k].lc);
      for (Polynomial& p : r) p = p.scaled(inv);
      out.push_back(std::move(r));
    }
    return out;
  }

 private:
  struct Elem {
    Vec v;
    Vec rep;  // over fed generators (trace mode)
    int lpos;
    ExpVec lexp;
    Scalar lc;
    Multidegree deg;
  };

  const RingPtr& ring() const { return amb_.ring; }

  void addElement(Vec v, Vec rep, const Multidegree& deg) {
    auto lt = leadTerm(v, ord_);
    Elem e{std::move(v), std::move(rep), lt->pos, lt->exp, lt->coeff, deg};
    int k = static_cast<int>(basis_.size());
    for (int j = 0; j < k; j++)
      if (basis_[j].lpos == e.lpos) {
        ExpVec lce = e.lexp;
        for (size_t t = 0; t < lce.size(); t++)
          lce[t] = std::max(lce[t], basis_[j].lexp[t]);
        Multidegree pdeg = basis_[j].deg +
                           monomialDegree(*ring(), expQuotient(lce, basis_[j].lexp));
        pairs_.emplace(pdeg.dot(ring()->theta()), j, k);
      }
    basis_.push_back(std::move(e));
  }

  void processPairs() {
    const FieldSpec& f = ring()->field();
    while (!pairs_.empty()) {
      auto it = pairs_.begin();
      auto [w, i, j] = *it;
      pairs_.erase(it);
      const Elem& a = basis_[i];
      const Elem& b = basis_[j];
      ExpVec lce = a.lexp;
      for (size_t t = 0; t < lce.size(); t++) lce[t] = std::max(lce[t], b.lexp[t]);
      ExpVec ma = expQuotient(lce, a.lexp), mb = expQuotient(lce, b.lexp);
      // monic S-pair: x^ma a / lc(a) - x^mb b / lc(b)
      Vec v = zeroVec(ring(), amb_.rank());
      v = vecSubMonomialMultiple(v, f.neg(f.inv(a.lc)), ma, a.v);
      v = vecSubMonomialMultiple(v, f.inv(b.lc), mb, b.v);
      Vec rep;
      if (trace_) {
        rep = zeroVec(ring(), ngens_);
        rep = vecSubMonomialMultiple(rep, f.neg(f.inv(a.lc)), ma, a.rep);
        rep = vecSubMonomialMultiple(rep, f.inv(b.lc), mb, b.rep);
      }
      Multidegree deg = a.deg + monomialDegree(*ring(), ma);
      Vec rem = reduceFull(std::move(v), trace_ ? &rep : nullptr);
      if (vecIsZero(rem)) {
        if (trace_ && !vecIsZero(rep)) syz_.push_back({std::move(rep), deg});
      } else {
        addElement(std::move(rem), std::move(rep), deg);
      }
    }
  }

  // Full normal form; if rep is given it is updated so that the invariant
  // (result + in-flight) == (original) + sum rep[j] gen_j ... is maintained;
  // concretely rep accumulates -quotients against basis reps.
  Vec reduceFull(Vec v, Vec* rep) const {
    const FieldSpec& f = ring()->field();
    Vec rem = zeroVec(ring(), amb_.rank());
    while (true) {
      auto lt = leadTerm(v, ord_);
      if (!lt) break;
      int k = -1;
      for (size_t j = 0; j < basis_.size(); j++)
        if (basis_[j].lpos == lt->pos && expDivides(basis_[j].lexp, lt->exp)) {
          k = static_cast<int>(j);
          break;
        }
      if (k >= 0) {
        Scalar c = f.div(lt->coeff, basis_[k].lc);
        ExpVec e = expQuotient(lt->exp, basis_[k].lexp);
        v = vecSubMonomialMultiple(v, c, e, basis_[k].v);
        if (rep) *rep = vecSubMonomialMultiple(*rep, c, e, basis_[k].rep);
      } else {
        rem[lt->pos].addTerm(lt->exp, lt->coeff);
        v[lt->pos].addTerm(lt->exp, f.neg(lt->coeff));
      }
    }
    return rem;
  }

  Vec reduceAgainst(Vec v, const std::vector<int>& kept) const {
    const FieldSpec& f = ring()->field();
    Vec rem = zeroVec(ring(), amb_.rank());
    while (true) {
      auto lt = leadTerm(v, ord_);
      if (!lt) break;
      int k = -1;
      for (int j : kept)
        if (basis_[j].lpos == lt->pos && expDivides(basis_[j].lexp, lt->exp)) {
          k = j;
          break;
        }
      if (k >= 0) {
        Scalar c = f.div(lt->coeff, basis_[k].lc);
        ExpVec e = expQuotient(lt->exp, basis_[k].lexp);
        v = vecSubMonomialMultiple(v, c, e, basis_[k].v);
      } else {
        rem[lt->pos].addTerm(lt->exp, lt->coeff);
        v[lt->pos].addTerm(lt->exp, f.neg(lt->coeff));
      }
    }
    return rem;
  }

  FreeModule amb_;
  ModuleOrder ord_;
  bool trace_;
  int ngens_ = 0;
  std::vector<Elem> basis_;
  std::vector<Syzygy> syz_;
  std::set<std::tuple<long, int, int>> pairs_;
};

// Fold a matrix's shift into its source twists (same columns, shift 0).
inline GradedMatrix withShiftFolded(const GradedMatrix& A) {
  GradedMatrix B = A;
  for (Multidegree& t : B.source.twists) t = t + A.shift;
  B.shift = Multidegree::zero(A.target.ring->degreeRank());
  return B;
}

// Columns of A followed by columns of B (same target; shifts folded away).
inline GradedMatrix concatColumns(const GradedMatrix& A, const GradedMatrix& B) {
  GradedMatrix A0 = withShiftFolded(A), B0 = withShiftFolded(B);
  if (!A0.target.sameAs(B0.target))
    throw AlgebraError(AlgebraError::Code::BadInput, "column concat target mismatch");
  GradedMatrix C = A0;
  C.source.twists.insert(C.source.twists.end(), B0.source.twists.begin(),
                         B0.source.twists.end());
  C.cols.insert(C.cols.end(), B0.cols.begin(), B0.cols.end());
  return C;
}

// Engine loaded with the columns of A (element degree of column j is
// source.twists[j] + shift).
inline GBEngine engineForColumns(const GradedMatrix& A, bool trace) {
  A.validate();
  GBEngine eng(A.target, trace);
  for (int j = 0; j < A.ncols(); j++)
    eng.feed(A.cols[j], A.source.twists[j] + A.shift);
  return eng;
}

// Generators of ker(A: source -> target), computed from reduction traces.
inline GradedMatrix syzygies(const GradedMatrix& A) {
  GBEngine eng = engineForColumns(A, true);
  GradedMatrix out{A.source, FreeModule{A.source.ring, {}},
                   Multidegree::zero(A.source.ring->degreeRank()),
                   {}};
  for (const auto& s : eng.syzygies()) {
    if (vecIsZero(s.comb)) continue;
    out.source.twists.push_back(s.deg - A.shift);
    out.cols.push_back(s.comb);
  }
  out.validate();
  return out;
}

// Minimal generating subset of the column span (graded Nakayama greedy:
// ascending theta-degree, keep a column iff it is not in the span of the
// previously kept ones). Returns the selected original columns in feed order.
inline GradedMatrix mingensColumns(const GradedMatrix& A) {
  A.validate();
  std::vector<int> order(A.ncols());
  for (size_t i = 0; i < order.size(); i++) order[i] = static_cast<int>(i);
  const std::vector<int>& theta = A.target.ring->theta();
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return (A.source.twists[a] + A.shift).dot(theta) <
           (A.source.twists[b] + A.shift).dot(theta);
  });
  GBEngine eng(A.target, false);
  GradedMatrix out{A.target, FreeModule{A.target.ring, {}}, A.shift, {}};
  for (int j : order) {
    if (vecIsZero(A.cols[j])) continue;
    if (eng.feed(A.cols[j], A.source.twists[j] + A.shift)) {
      out.source.twists.push_back(A.source.twists[j]);
      out.cols.push_back(A.cols[j]);
    }
  }
  out.validate();
  return out;
}

}  // namespace mbgg
