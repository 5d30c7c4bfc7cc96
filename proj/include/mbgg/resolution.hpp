#pragma once

// Minimal free resolutions, homology of free complexes, Ext into a twist of
// the ring.

#include <utility>

#include "mbgg/presented.hpp"

namespace mbgg {

// Minimal free resolution F_0 <- F_1 <- ... <- F_length (cut short when a
// syzygy module vanishes). diffs(i): F_i -> F_{i-1} all have entries in the
// graded maximal ideal.
inline FComplex minimalFreeResolution(const PresentedModule& M, int length) {
  if (length < 0)
    throw AlgebraError(AlgebraError::Code::BadInput,
                       "resolution length must be >= 0");
  MinimalPresentation mp = minimalPresentation(M);
  FComplex C{M.gens.ring, {}, {}};
  C.terms[0] = mp.module.gens;
  if (mp.module.gens.rank() == 0) return C;
  GradedMatrix d = mp.module.relations;
  for (int i = 1; i <= length; i++) {
    if (d.ncols() == 0) break;
    C.terms[i] = d.source;
    C.diffs[i] = d;
    if (i == length) break;
    d = mingensColumns(syzygies(d));
  }
  C.validate();
  return C;
}

// Homology ker(d_i)/im(d_{i+1}) of a free complex at homological index i,
// as a minimally presented module with representatives in term(i).
inline SubquotientPresentation complexHomology(const FComplex& C, int i) {
  C.validate();
  GradedMatrix Z = syzygies(C.diff(i));
  GradedMatrix B = C.diff(i + 1);
  GradedMatrix R = GradedMatrix::zero(
      C.term(i), FreeModule{C.ring, {}}, Multidegree::zero(C.ring->degreeRank()));
  return presentSubquotient(Z, B, R);
}

// Hom(-, S(c)) applied to a single matrix: transpose, with twists sent to
// -t - c.
inline GradedMatrix dualMap(const GradedMatrix& d, const Multidegree& c) {
  GradedMatrix D = withShiftFolded(d);
  const RingPtr& S = D.target.ring;
  FreeModule tgt{S, {}};
  for (const Multidegree& t : D.source.twists) tgt.twists.push_back((t * -1) - c);
  FreeModule src{S, {}};
  for (const Multidegree& t : D.target.twists) src.twists.push_back((t * -1) - c);
  GradedMatrix out{tgt, src, Multidegree::zero(S->degreeRank()), {}};
  for (int j = 0; j < D.rows(); j++) {
    Vec col = zeroVec(S, D.ncols());
    for (int r = 0; r < D.ncols(); r++) col[r] = D.cols[r][j];
    out.cols.push_back(std::move(col));
  }
  out.validate();
  return out;
}

// Ext^i_S(M, S(c)), minimally presented.
inline PresentedModule extModule(const PresentedModule& M, int i,
                                 const Multidegree& c) {
  if (i < 0) throw AlgebraError(AlgebraError::Code::BadInput, "ext index < 0");
  FComplex res = minimalFreeResolution(M, i + 1);
  const RingPtr& S = M.gens.ring;
  FreeModule Fi = res.term(i);
  FreeModule dualFi{S, {}};
  for (const Multidegree& t : Fi.twists) dualFi.twists.push_back((t * -1) - c);
  Multidegree z = Multidegree::zero(S->degreeRank());
  GradedMatrix psiNext = dualMap(res.diff(i + 1), c);  // Hom(F_i) -> Hom(F_{i+1})
  GradedMatrix Z = syzygies(psiNext);
  GradedMatrix B = i == 0 ? GradedMatrix::zero(dualFi, FreeModule{S, {}}, z)
                          : dualMap(res.diff(i), c);
  GradedMatrix R = GradedMatrix::zero(dualFi, FreeModule{S, {}}, z);
  return presentSubquotient(Z, B, R).module;
}

}  // namespace mbgg
