#pragma once

// Free modules with generator-degree twists, homogeneous graded matrices,
// presented modules, and complexes of free modules.
//
// Twist convention: FreeModule twists store generator degrees, so the
// rank-one module S(-a) has the single twist a, and twist(F, b) = F(b) lowers
// every generator degree by b.
//
// Homogeneity convention for a degree-delta matrix:
//   target.twists[i] + deg(entry[i][j]) == source.twists[j] + delta.

#include <map>
#include <optional>
#include <vector>

#include "mbgg/polynomial.hpp"

namespace mbgg {

struct FreeModule {
  RingPtr ring;
  std::vector<Multidegree> twists;

  int rank() const { return static_cast<int>(twists.size()); }

  bool sameAs(const FreeModule& o) const {
    return ring->sameAs(*o.ring) && twists == o.twists;
  }

  void validate() const {
    for (const Multidegree& t : twists)
      if (t.rank() != ring->degreeRank())
        throw AlgebraError(AlgebraError::Code::BadInput,
                           "generator degree " + t.str() + " has wrong rank");
  }
};

inline FreeModule twist(const FreeModule& F, const Multidegree& b) {
  FreeModule G = F;
  for (Multidegree& t : G.twists) t = t - b;
  return G;
}

inline FreeModule directSum(const FreeModule& F, const FreeModule& G) {
  requireSameRing(F.ring, G.ring);
  FreeModule H = F;
  H.twists.insert(H.twists.end(), G.twists.begin(), G.twists.end());
  return H;
}

// A module element: one polynomial per generator of the ambient free module.
using Vec = std::vector<Polynomial>;

inline Vec zeroVec(const RingPtr& R, int rank) {
  return Vec(rank, Polynomial::zero(R));
}

inline Vec unitVec(const RingPtr& R, int rank, int i) {
  Vec v = zeroVec(R, rank);
  v[i] = Polynomial::one(R);
  return v;
}

inline bool vecIsZero(const Vec& v) {
  for (const Polynomial& p : v)
    if (!p.isZero()) return false;
  return true;
}

inline Vec vecAdd(const Vec& a, const Vec& b) {
  Vec r = a;
  for (size_t i = 0; i < r.size(); i++) r[i] = r[i] + b[i];
  return r;
}

inline Vec vecSub(const Vec& a, const Vec& b) {
  Vec r = a;
  for (size_t i = 0; i < r.size(); i++) r[i] = r[i] - b[i];
  return r;
}

inline Vec vecNeg(const Vec& a) {
  Vec r = a;
  for (size_t i = 0; i < r.size(); i++) r[i] = -r[i];
  return r;
}

// v - (c * x^e) * w
inline Vec vecSubMonomialMultiple(const Vec& v, const Scalar& c, const ExpVec& e,
                                  const Vec& w) {
  Vec r = v;
  for (size_t i = 0; i < r.size(); i++)
    if (!w[i].isZero()) r[i] = r[i] - w[i].monomialShifted(e, c);
  return r;
}

inline Vec vecScalePoly(const Vec& v, const Polynomial& p) {
  Vec r = v;
  for (size_t i = 0; i < r.size(); i++) r[i] = r[i] * p;
  return r;
}

// Degree of a homogeneous element of F (nullopt for the zero vector).
inline std::optional<Multidegree> vecDegree(const FreeModule& F, const Vec& v) {
  std::optional<Multidegree> d;
  for (int i = 0; i < F.rank(); i++) {
    if (v[i].isZero()) continue;
    auto di = v[i].degreeOpt();
    Multidegree dd = F.twists[i] + *di;
    if (!d)
      d = dd;
    else if (*d != dd)
      throw AlgebraError(AlgebraError::Code::Inhomogeneous,
                         "module element is not homogeneous");
  }
  return d;
}

// Homogeneous matrix of degree `shift`, stored column-major (columns are
// elements of the target free module).
struct GradedMatrix {
  FreeModule target, source;
  Multidegree shift;
  std::vector<Vec> cols;

  static GradedMatrix zero(FreeModule target, FreeModule source, Multidegree shift) {
    GradedMatrix m{target, source, shift, {}};
    m.cols.assign(source.rank(), zeroVec(target.ring, target.rank()));
    return m;
  }

  static GradedMatrix identity(const FreeModule& F) {
    GradedMatrix m{F, F, Multidegree::zero(F.ring->degreeRank()), {}};
    for (int j = 0; j < F.rank(); j++) m.cols.push_back(unitVec(F.ring, F.rank(), j));
    return m;
  }

  int rows() const { return target.rank(); }
  int ncols() const { return source.rank(); }
  const Polynomial& entry(int i, int j) const { return cols[j][i]; }
  Polynomial& entry(int i, int j) { return cols[j][i]; }

  void validate() const {
    requireSameRing(target.ring, source.ring);
    target.validate();
    source.validate();
    if (shift.rank() != target.ring->degreeRank())
      throw AlgebraError(AlgebraError::Code::BadInput, "matrix shift has wrong rank");
    if (static_cast<int>(cols.size()) != source.rank())
      throw AlgebraError(AlgebraError::Code::BadInput, "matrix has wrong column count");
    for (int j = 0; j < ncols(); j++) {
      if (static_cast<int>(cols[j].size()) != target.rank())
        throw AlgebraError(AlgebraError::Code::BadInput, "matrix has ragged columns");
      for (int i = 0; i < rows(); i++) {
        const Polynomial& e = cols[j][i];
        if (e.isZero()) continue;
        requireSameRing(e.ring(), target.ring);
        auto d = e.degreeOpt();  // throws if the entry is inhomogeneous
        if (target.twists[i] + *d != source.twists[j] + shift)
          throw AlgebraError(
              AlgebraError::Code::Inhomogeneous,
              "entry (" + std::to_string(i) + "," + std::to_string(j) +
                  ") breaks homogeneity: " + (target.twists[i] + *d).str() +
                  " vs " + (source.twists[j] + shift).str());
      }
    }
  }

  bool isZeroMatrix() const {
    for (const Vec& c : cols)
      if (!vecIsZero(c)) return false;
    return true;
  }

  Vec apply(const Vec& v) const {
    Vec r = zeroVec(target.ring, target.rank());
    for (int j = 0; j < ncols(); j++) {
      if (v[j].isZero()) continue;
      for (int i = 0; i < rows(); i++)
        if (!cols[j][i].isZero()) r[i] = r[i] + cols[j][i] * v[j];
    }
    return r;
  }
};

// A then B... no: compose(A, B) = A o B (apply B first); A.source == B.target.
inline GradedMatrix compose(const GradedMatrix& A, const GradedMatrix& B) {
  if (!A.source.sameAs(B.target))
    throw AlgebraError(AlgebraError::Code::BadInput,
                       "composition shape mismatch");
  GradedMatrix C{A.target, B.source, A.shift + B.shift, {}};
  for (int j = 0; j < B.ncols(); j++) C.cols.push_back(A.apply(B.cols[j]));
  return C;
}

inline GradedMatrix negated(const GradedMatrix& A) {
  GradedMatrix B = A;
  for (Vec& c : B.cols) c = vecNeg(c);
  return B;
}

inline GradedMatrix twistMatrix(const GradedMatrix& A, const Multidegree& b) {
  GradedMatrix B = A;
  B.target = twist(B.target, b);
  B.source = twist(B.source, b);
  return B;
}

inline GradedMatrix directSum(const GradedMatrix& A, const GradedMatrix& B) {
  if (A.shift != B.shift)
    throw AlgebraError(AlgebraError::Code::BadInput, "direct sum shift mismatch");
  GradedMatrix C{directSum(A.target, B.target), directSum(A.source, B.source),
                 A.shift, {}};
  const RingPtr& R = A.target.ring;
  for (int j = 0; j < A.ncols(); j++) {
    Vec c = A.cols[j];
    Vec pad = zeroVec(R, B.rows());
    c.insert(c.end(), pad.begin(), pad.end());
    C.cols.push_back(std::move(c));
  }
  for (int j = 0; j < B.ncols(); j++) {
    Vec c = zeroVec(R, A.rows());
    c.insert(c.end(), B.cols[j].begin(), B.cols[j].end());
    C.cols.push_back(std::move(c));
  }
  return C;
}

// Cokernel presentation: module with generators gens and relation columns
// relations (a degree-0 matrix into gens).
struct PresentedModule {
  FreeModule gens;
  GradedMatrix relations;

  static PresentedModule fromFree(const FreeModule& F) {
    PresentedModule M{F, GradedMatrix::zero(F, FreeModule{F.ring, {}},
                                            Multidegree::zero(F.ring->degreeRank()))};
    return M;
  }

  void validate() const {
    gens.validate();
    relations.validate();
    if (!relations.target.sameAs(gens))
      throw AlgebraError(AlgebraError::Code::BadInput,
                         "relation matrix target must be the generator module");
    if (!relations.shift.isZero())
      throw AlgebraError(AlgebraError::Code::BadInput,
                         "relation matrix must have shift zero");
  }

  bool isFree() const { return relations.ncols() == 0; }
};

// Complex of free modules: diffs[i] maps term(i) -> term(i-1) with shift 0.
struct FComplex {
  RingPtr ring;
  std::map<int, FreeModule> terms;
  std::map<int, GradedMatrix> diffs;

  FreeModule term(int i) const {
    auto it = terms.find(i);
    if (it != terms.end()) return it->second;
    return FreeModule{ring, {}};
  }

  GradedMatrix diff(int i) const {
    auto it = diffs.find(i);
    if (it != diffs.end()) return it->second;
    return GradedMatrix::zero(term(i - 1), term(i), Multidegree::zero(ring->degreeRank()));
  }

  int lo() const { return terms.empty() ? 0 : terms.begin()->first; }
  int hi() const { return terms.empty() ? 0 : terms.rbegin()->first; }

  void validate() const {
    for (const auto& [i, d] : diffs) {
      d.validate();
      if (!d.shift.isZero())
        throw AlgebraError(AlgebraError::Code::BadInput,
                           "complex differential must have shift zero");
      if (!d.target.sameAs(term(i - 1)) || !d.source.sameAs(term(i)))
        throw AlgebraError(AlgebraError::Code::BadInput,
                           "complex differential shape mismatch");
    }
    for (const auto& [i, d] : diffs) {
      auto up = diffs.find(i + 1);
      if (up == diffs.end()) continue;
      if (!compose(d, up->second).isZeroMatrix())
        throw AlgebraError(AlgebraError::Code::NotSquareZero,
                           "complex differentials do not compose to zero");
    }
  }
};

}  // namespace mbgg
