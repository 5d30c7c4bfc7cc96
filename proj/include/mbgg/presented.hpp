#pragma once

// Presented modules: minimal presentations with generator tracking, kernels
// of maps between presented modules, and subquotient presentations.

#include <utility>
#include <vector>

#include "mbgg/groebner.hpp"

namespace mbgg {

inline bool isZeroModule(const PresentedModule& M) {
  M.validate();
  if (M.gens.rank() == 0) return true;
  GBEngine eng = engineForColumns(M.relations, false);
  for (int i = 0; i < M.gens.rank(); i++)
    if (!eng.contains(unitVec(M.gens.ring, M.gens.rank(), i))) return false;
  return true;
}

struct MinimalPresentation {
  PresentedModule module;
  // original generator indices that survive; the class of survivor k in the
  // input module equals the class of generator k of `module`.
  std::vector<int> generatorIndices;
};

// Prune unit entries of the relation matrix (each unit entry at (i,j) lets
// generator i be eliminated after clearing its row by column operations),
// then minimally generate the remaining relations. Survivors keep their
// meaning as elements of the input module.
inline MinimalPresentation minimalPresentation(const PresentedModule& M) {
  M.validate();
  const RingPtr& S = M.gens.ring;
  const FieldSpec& f = S->field();
  std::vector<Multidegree> rowTwists = M.gens.twists;
  std::vector<int> genIdx(rowTwists.size());
  for (size_t i = 0; i < genIdx.size(); i++) genIdx[i] = static_cast<int>(i);
  std::vector<Vec> cols = M.relations.cols;
  std::vector<Multidegree> colTwists = M.relations.source.twists;

  while (true) {
    int pi = -1, pj = -1;
    for (size_t i = 0; i < rowTwists.size() && pi < 0; i++)
      for (size_t j = 0; j < cols.size(); j++) {
        if (cols[j][i].unitValue()) {
          pi = static_cast<int>(i);
          pj = static_cast<int>(j);
          break;
        }
      }
    if (pi < 0) break;
    Scalar cinv = f.inv(*cols[pj][pi].unitValue());
    for (size_t l = 0; l < cols.size(); l++) {
      if (static_cast<int>(l) == pj || cols[l][pi].isZero()) continue;
      Polynomial q = cols[l][pi].scaled(cinv);
      for (size_t r = 0; r < rowTwists.size(); r++)
        cols[l][r] = cols[l][r] - q * cols[pj][r];
    }
    for (auto& col : cols) col.erase(col.begin() + pi);
    rowTwists.erase(rowTwists.begin() + pi);
    genIdx.erase(genIdx.begin() + pi);
    cols.erase(cols.begin() + pj);
    colTwists.erase(colTwists.begin() + pj);
  }

  FreeModule gens{S, rowTwists};
  GradedMatrix rel{gens, FreeModule{S, colTwists},
                   Multidegree::zero(S->degreeRank()), cols};
  rel.validate();
  GradedMatrix minRel = mingensColumns(rel);
  PresentedModule out{gens, minRel};
  out.validate();
  return {std::move(out), std::move(genIdx)};
}

// Presentation of (im Z + im R) / (im B + im R) inside coker(R), with the
// chosen cycle representatives of the surviving generators.
struct SubquotientPresentation {
  PresentedModule module;
  // representatives: ambient free module <- module.gens, shift 0
  GradedMatrix representatives;
};

inline SubquotientPresentation presentSubquotient(const GradedMatrix& Z,
                                                  const GradedMatrix& B,
                                                  const GradedMatrix& R) {
  GradedMatrix Z0 = withShiftFolded(Z);
  GradedMatrix B0 = withShiftFolded(B);
  GradedMatrix R0 = withShiftFolded(R);
  if (!Z0.target.sameAs(B0.target) || !Z0.target.sameAs(R0.target))
    throw AlgebraError(AlgebraError::Code::BadInput,
                       "subquotient: ambient modules differ");
  {
    GBEngine cyc = engineForColumns(concatColumns(Z0, R0), false);
    for (const Vec& b : B0.cols)
      if (!cyc.contains(b))
        throw AlgebraError(AlgebraError::Code::BadInput,
                           "subquotient: boundary outside cycle span");
  }
  GradedMatrix big = concatColumns(concatColumns(Z0, B0), R0);
  GradedMatrix S = syzygies(big);
  int nz = Z0.ncols();
  GradedMatrix rel{Z0.source, FreeModule{Z0.target.ring, S.source.twists},
                   Multidegree::zero(Z0.target.ring->degreeRank()),
                   {}};
  for (const Vec& s : S.cols) rel.cols.emplace_back(s.begin(), s.begin() + nz);
  rel.validate();
  MinimalPresentation mp = minimalPresentation(PresentedModule{Z0.source, rel});
  GradedMatrix reps{Z0.target, mp.module.gens,
                    Multidegree::zero(Z0.target.ring->degreeRank()),
                    {}};
  for (int idx : mp.generatorIndices) reps.cols.push_back(Z0.cols[idx]);
  reps.validate();
  return {std::move(mp.module), std::move(reps)};
}

// Kernel of the map M -> N whose action on generators is phi
// (phi: N.gens <- M.gens). Checks that phi carries relations of M into the
// relation submodule of N.
struct KernelResult {
  PresentedModule kernel;
  // inclusion: M.gens <- kernel.gens, shift 0; columns express the kernel
  // generators in terms of the generators of M.
  GradedMatrix inclusion;
};

inline KernelResult kernelOfPresentedMap(const PresentedModule& M,
                                         const PresentedModule& N,
                                         const GradedMatrix& phi) {
  M.validate();
  N.validate();
  phi.validate();
  if (!phi.source.sameAs(M.gens) || !phi.target.sameAs(N.gens))
    throw AlgebraError(AlgebraError::Code::BadInput,
                       "kernel: map shape does not match modules");
  {
    GBEngine relN = engineForColumns(N.relations, false);
    GradedMatrix carried = compose(phi, M.relations);
    for (const Vec& col : carried.cols)
      if (!relN.contains(col))
        throw AlgebraError(AlgebraError::Code::RelationsNotPreserved,
                           "kernel: map does not preserve relations");
  }
  GradedMatrix B = concatColumns(phi, N.relations);
  GradedMatrix S = syzygies(B);
  int m0 = M.gens.rank();
  GradedMatrix inc{M.gens, FreeModule{M.gens.ring, {}},
                   Multidegree::zero(M.gens.ring->degreeRank()),
                   {}};
  for (int j = 0; j < S.ncols(); j++) {
    Vec head(S.cols[j].begin(), S.cols[j].begin() + m0);
    if (vecIsZero(head)) continue;  // syzygy purely among relations of N
    inc.source.twists.push_back(S.source.twists[j] - phi.shift);
    inc.cols.push_back(std::move(head));
  }
  inc.validate();
  // relations of the kernel: combinations of kernel generators that land in
  // the relation submodule of M
  GradedMatrix big = concatColumns(inc, M.relations);
  GradedMatrix T = syzygies(big);
  int k0 = inc.ncols();
  GradedMatrix rel{inc.source, FreeModule{M.gens.ring, T.source.twists},
                   Multidegree::zero(M.gens.ring->degreeRank()),
                   {}};
  for (const Vec& t : T.cols) rel.cols.emplace_back(t.begin(), t.begin() + k0);
  rel.validate();
  MinimalPresentation mp =
      minimalPresentation(PresentedModule{inc.source, rel});
  GradedMatrix incMin{M.gens, mp.module.gens,
                      Multidegree::zero(M.gens.ring->degreeRank()),
                      {}};
  for (int idx : mp.generatorIndices) incMin.cols.push_back(inc.cols[idx]);
  incMin.validate();
  return {std::move(mp.module), std::move(incMin)};
}

}  // namespace mbgg
