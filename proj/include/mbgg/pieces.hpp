#pragma once

// Graded pieces M_d of a presented module as finite-dimensional vector
// spaces: monomial bases of the quotient, coordinates, multiplication maps,
// finite-dimensionality and support.

#include <map>
#include <utility>
#include <vector>

#include "mbgg/linalg.hpp"
#include "mbgg/presented.hpp"

namespace mbgg {

// One graded piece of coker(relations). The candidate spanning set is all
// pairs (generator g, monomial x^e) with twist_g + deg x^e = d, listed
// generator-major with monomials in ascending lex order; the image of the
// relations in this piece is echelonized and the non-pivot pairs survive as
// the basis.
class GradedPiece {
 public:
  GradedPiece(const PresentedModule& M, Multidegree d)
      : ring_(M.gens.ring),
        deg_(std::move(d)),
        ambientRank_(M.gens.rank()),
        red_(ring_->field(), 0) {
    M.validate();
    const FieldSpec& f = ring_->field();
    for (int g = 0; g < M.gens.rank(); g++) {
      for (ExpVec& e : monomialsOfDegree(ring_, deg_ - M.gens.twists[g])) {
        index_[{g, e}] = static_cast<int>(pairs_.size());
        pairs_.emplace_back(g, std::move(e));
      }
    }
    red_ = EchelonSpace(f, static_cast<int>(pairs_.size()));
    for (int j = 0; j < M.relations.ncols(); j++) {
      Multidegree s = M.relations.source.twists[j];
      for (const ExpVec& m : monomialsOfDegree(ring_, deg_ - s)) {
        std::vector<Scalar> v = expand(vecScaleMonomial(M.relations.cols[j], m));
        red_.insert(std::move(v));
      }
    }
    std::vector<char> isPivot(pairs_.size(), 0);
    for (int p : red_.pivots()) isPivot[p] = 1;
    for (size_t k = 0; k < pairs_.size(); k++)
      if (!isPivot[k]) basis_.push_back(static_cast<int>(k));
  }

  const Multidegree& degree() const { return deg_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<std::pair<int, ExpVec>>& pairs() const { return pairs_; }
  const std::vector<int>& basisPairs() const { return basis_; }

  // k-th basis vector as an element of the module (over its generators)
  Vec basisElement(int k) const {
    const auto& [g, e] = pairs_[basis_[k]];
    Vec v = zeroVec(ring_, ambientRank_);
    v[g] = Polynomial::monomial(ring_, e, ring_->field().fromLong(1));
    return v;
  }

  // coordinates of a homogeneous degree-d element in the piece basis
  std::vector<Scalar> coords(const Vec& v) const {
    std::vector<Scalar> full = expand(v);
    red_.reduceInPlace(full);
    std::vector<Scalar> out;
    out.reserve(basis_.size());
    for (int k : basis_) out.push_back(full[k]);
    return out;
  }

 private:
  static Vec vecScaleMonomial(const Vec& v, const ExpVec& m) {
    Vec out;
    out.reserve(v.size());
    for (const Polynomial& p : v) out.push_back(p.monomialShifted(m, Scalar(1)));
    return out;
  }

  std::vector<Scalar> expand(const Vec& v) const {
    std::vector<Scalar> out(pairs_.size(), Scalar(0));
    for (size_t g = 0; g < v.size(); g++)
      for (const auto& [e, c] : v[g].terms()) {
        auto it = index_.find({static_cast<int>(g), e});
        if (it == index_.end())
          throw AlgebraError(AlgebraError::Code::Inhomogeneous,
                             "element does not lie in the requested degree");
        out[it->second] = ring_->field().normalize(c);
      }
    return out;
  }

  RingPtr ring_;
  Multidegree deg_;
  int ambientRank_;
  std::vector<std::pair<int, ExpVec>> pairs_;
  std::map<std::pair<int, ExpVec>, int> index_;
  EchelonSpace red_;
  std::vector<int> basis_;
};

// Basis of M_d as (generator, monomial) pairs.
inline std::vector<std::pair<int, ExpVec>> gradedPieceBasis(
    const PresentedModule& M, const Multidegree& d) {
  GradedPiece P(M, d);
  std::vector<std::pair<int, ExpVec>> out;
  for (int k : P.basisPairs()) out.push_back(P.pairs()[k]);
  return out;
}

// Matrix of multiplication by a homogeneous f: M_d -> M_{d + deg f} in the
// piece bases (columns indexed by the source basis).
inline DenseMat multiplicationMap(const PresentedModule& M, const Polynomial& f,
                                  const Multidegree& d) {
  requireSameRing(M.gens.ring, f.ring());
  auto fd = f.degreeOpt();
  if (!fd && !f.isZero())
    throw AlgebraError(AlgebraError::Code::Inhomogeneous,
                       "multiplication by an inhomogeneous element");
  GradedPiece src(M, d);
  GradedPiece dst(M, fd ? d + *fd : d);
  DenseMat A(dst.dim(), src.dim());
  for (int k = 0; k < src.dim(); k++) {
    Vec v = src.basisElement(k);
    for (Polynomial& p : v) p = f * p;
    std::vector<Scalar> c = dst.coords(v);
    for (int r = 0; r < dst.dim(); r++) A.at(r, k) = c[r];
  }
  return A;
}

// Dense matrix of the degree-d piece of a map of presented modules
// (phi: N.gens <- M.gens; element degrees d -> d + phi.shift).
inline DenseMat pieceMatrixOfMap(const PresentedModule& M,
                                 const PresentedModule& N,
                                 const GradedMatrix& phi, const Multidegree& d) {
  GradedPiece src(M, d);
  GradedPiece dst(N, d + phi.shift);
  DenseMat A(dst.dim(), src.dim());
  for (int k = 0; k < src.dim(); k++) {
    std::vector<Scalar> c = dst.coords(phi.apply(src.basisElement(k)));
    for (int r = 0; r < dst.dim(); r++) A.at(r, k) = c[r];
  }
  return A;
}

// A module is finite-dimensional over k iff for every generator position the
// lead-term module of its relations contains a pure power of every variable.
inline bool isFiniteDimensional(const PresentedModule& M) {
  M.validate();
  if (M.gens.rank() == 0) return true;
  GBEngine eng = engineForColumns(M.relations, false);
  auto leads = eng.leadTerms();
  int n = M.gens.ring->nvars();
  for (int g = 0; g < M.gens.rank(); g++)
    for (int i = 0; i < n; i++) {
      bool bounded = false;
      for (const auto& [pos, e] : leads) {
        if (pos != g) continue;
        bool pure = e[i] > 0;
        for (int t = 0; t < n && pure; t++)
          if (t != i && e[t] > 0) pure = false;
        if (pure) {
          bounded = true;
          break;
        }
      }
      if (!bounded) return false;
    }
  return true;
}

// All degrees with M_d != 0, for finite-dimensional M, sorted by ascending
// theta-weight then lex. Counts standard monomials of the lead-term module.
inline std::vector<Multidegree> supportDegrees(const PresentedModule& M) {
  if (!isFiniteDimensional(M))
    throw AlgebraError(AlgebraError::Code::BadInput,
                       "support requested for an infinite-dimensional module");
  const RingPtr& S = M.gens.ring;
  GBEngine eng = engineForColumns(M.relations, false);
  auto leads = eng.leadTerms();
  int n = S->nvars();
  std::map<Multidegree, int> seen;
  for (int g = 0; g < M.gens.rank(); g++) {
    std::vector<int> bound(n, 0);  // standard exponents satisfy e_i < bound_i
    for (const auto& [pos, e] : leads) {
      if (pos != g) continue;
      for (int i = 0; i < n; i++) {
        bool pure = e[i] > 0;
        for (int t = 0; t < n && pure; t++)
          if (t != i && e[t] > 0) pure = false;
        if (pure && (bound[i] == 0 || e[i] < bound[i])) bound[i] = e[i];
      }
    }
    ExpVec e(n, 0);
    while (true) {
      bool standard = true;
      for (const auto& [pos, l] : leads) {
        if (pos != g) continue;
        if (expDivides(l, e)) {
          standard = false;
          break;
        }
      }
      if (standard) seen[M.gens.twists[g] + monomialDegree(*S, e)]++;
      int i = 0;
      while (i < n) {
        e[i]++;
        if (e[i] < bound[i]) break;
        e[i] = 0;
        i++;
      }
      if (i == n) break;
    }
  }
  std::vector<Multidegree> out;
  for (const auto& [d, count] : seen) out.push_back(d);
  const std::vector<int>& theta = S->theta();
  std::stable_sort(out.begin(), out.end(), [&](const Multidegree& a,
                                               const Multidegree& b) {
    long wa = a.dot(theta), wb = b.dot(theta);
    if (wa != wb) return wa < wb;
    return a < b;
  });
  return out;
}

}  // namespace mbgg
