#pragma once

// Differential modules: a presented module D with a square-zero endomorphism
// of degree a. Mapping cones, folding of complexes, homology, free flag
// resolutions, minimization, and minimal flag resolutions over Z-gradings.

#include <algorithm>
#include <utility>
#include <vector>

#include "mbgg/pieces.hpp"
#include "mbgg/resolution.hpp"

namespace mbgg {

struct DifferentialModule {
  Multidegree degree;          // degree a of the differential
  PresentedModule underlying;  // relations may be empty (free)
  GradedMatrix del;            // underlying.gens <- underlying.gens, shift a

  const RingPtr& ring() const { return underlying.gens.ring; }
  int rank() const { return underlying.gens.rank(); }
  bool isFreeUnderlying() const { return underlying.isFree(); }

  void validate() const {
    underlying.validate();
    del.validate();
    if (!del.target.sameAs(underlying.gens) || !del.source.sameAs(underlying.gens))
      throw AlgebraError(AlgebraError::Code::BadInput,
                         "differential must be an endomorphism of the generators");
    if (del.shift != degree)
      throw AlgebraError(AlgebraError::Code::BadInput,
                         "differential shift does not match the declared degree");
    if (underlying.relations.ncols() == 0) {
      if (!compose(del, del).isZeroMatrix())
        throw AlgebraError(AlgebraError::Code::NotSquareZero,
                           "differential does not square to zero");
    } else {
      GBEngine rel = engineForColumns(underlying.relations, false);
      GradedMatrix carried = compose(del, underlying.relations);
      for (const Vec& col : carried.cols)
        if (!rel.contains(col))
          throw AlgebraError(AlgebraError::Code::RelationsNotPreserved,
                             "differential does not preserve the relations");
      GradedMatrix sq = compose(del, del);
      for (const Vec& col : sq.cols)
        if (!rel.contains(col))
          throw AlgebraError(AlgebraError::Code::NotSquareZero,
                             "differential squares to zero only up to a nonzero class");
    }
  }
};

inline DifferentialModule mkDifferentialModule(GradedMatrix del,
                                               PresentedModule underlying) {
  DifferentialModule D{del.shift, std::move(underlying), std::move(del)};
  D.validate();
  return D;
}

inline DifferentialModule mkFreeDM(GradedMatrix del) {
  PresentedModule U = PresentedModule::fromFree(del.target);
  return mkDifferentialModule(std::move(del), std::move(U));
}

// Free differential module with block upper-triangular differential: column
// blocks map strictly into earlier blocks.
struct FlagDM {
  DifferentialModule dm;
  std::vector<int> blockSizes;  // generator counts of F_0, F_1, ...

  int blockOf(int gen) const {
    int b = 0;
    for (int size : blockSizes) {
      if (gen < size) return b;
      gen -= size;
      b++;
    }
    throw AlgebraError(AlgebraError::Code::BadInput, "generator outside flag");
  }

  void validate() const {
    dm.validate();
    if (!dm.isFreeUnderlying())
      throw AlgebraError(AlgebraError::Code::BadInput, "flag must be free");
    int total = 0;
    for (int s : blockSizes) {
      if (s < 0) throw AlgebraError(AlgebraError::Code::BadInput, "negative block");
      total += s;
    }
    if (total != dm.rank())
      throw AlgebraError(AlgebraError::Code::BadInput, "flag blocks do not partition");
    for (int j = 0; j < dm.del.ncols(); j++)
      for (int i = 0; i < dm.del.rows(); i++)
        if (!dm.del.entry(i, j).isZero() && blockOf(i) >= blockOf(j))
          throw AlgebraError(AlgebraError::Code::BadInput,
                             "flag differential is not strictly block upper triangular");
  }
};

struct DMorphism {
  DifferentialModule source, target;
  GradedMatrix matrix;  // target.gens <- source.gens, shift 0

  void validate() const {
    source.validate();
    target.validate();
    matrix.validate();
    if (source.degree != target.degree)
      throw AlgebraError(AlgebraError::Code::BadInput,
                         "morphism endpoints have different differential degrees");
    if (!matrix.target.sameAs(target.underlying.gens) ||
        !matrix.source.sameAs(source.underlying.gens))
      throw AlgebraError(AlgebraError::Code::BadInput, "morphism shape mismatch");
    if (!matrix.shift.isZero())
      throw AlgebraError(AlgebraError::Code::BadInput, "morphism must have degree 0");
    GradedMatrix lhs = compose(target.del, matrix);
    GradedMatrix rhs = compose(matrix, source.del);
    GradedMatrix diff = lhs;
    for (int j = 0; j < diff.ncols(); j++)
      diff.cols[j] = vecSub(lhs.cols[j], rhs.cols[j]);
    if (target.underlying.relations.ncols() == 0) {
      if (!diff.isZeroMatrix())
        throw AlgebraError(AlgebraError::Code::BadInput,
                           "matrix does not commute with the differentials");
    } else {
      GBEngine rel = engineForColumns(target.underlying.relations, false);
      for (const Vec& col : diff.cols)
        if (!rel.contains(col))
          throw AlgebraError(AlgebraError::Code::BadInput,
                             "matrix does not commute with the differentials");
    }
  }
};

inline PresentedModule presentedDirectSum(const PresentedModule& A,
                                          const PresentedModule& B) {
  return PresentedModule{directSum(A.gens, B.gens),
                         directSum(A.relations, B.relations)};
}

// Mapping cone of f: S -> T: underlying T + S(a), differential
// [[del_T, f],[0, -del_S]].
inline DifferentialModule coneDM(const DMorphism& f) {
  f.validate();
  const Multidegree& a = f.source.degree;
  PresentedModule Sa = f.source.underlying;
  Sa.gens = twist(Sa.gens, a);
  Sa.relations = twistMatrix(Sa.relations, a);
  PresentedModule U = presentedDirectSum(f.target.underlying, Sa);
  int rT = f.target.rank(), rS = f.source.rank();
  GradedMatrix del{U.gens, U.gens, a, {}};
  for (int j = 0; j < rT; j++) {
    Vec col = f.target.del.cols[j];
    Vec pad = zeroVec(U.gens.ring, rS);
    col.insert(col.end(), pad.begin(), pad.end());
    del.cols.push_back(std::move(col));
  }
  for (int j = 0; j < rS; j++) {
    Vec col = f.matrix.cols[j];
    Vec tail = vecNeg(f.source.del.cols[j]);
    col.insert(col.end(), tail.begin(), tail.end());
    del.cols.push_back(std::move(col));
  }
  DifferentialModule C{a, std::move(U), std::move(del)};
  C.validate();
  return C;
}

// Fold a finite free complex into a flag differential module: block i is
// C_i(i*a), and the d_i sit below the diagonal blocks unchanged.
inline FlagDM foldComplex(const FComplex& C, const Multidegree& a) {
  C.validate();
  const RingPtr& S = C.ring;
  int lo = C.lo(), hi = C.hi();
  std::vector<int> sizes;
  FreeModule F{S, {}};
  std::vector<int> offsets;
  for (int i = lo; i <= hi; i++) {
    offsets.push_back(F.rank());
    FreeModule Fi = twist(C.term(i), a * i);
    F.twists.insert(F.twists.end(), Fi.twists.begin(), Fi.twists.end());
    sizes.push_back(Fi.rank());
  }
  GradedMatrix del = GradedMatrix::zero(F, F, a);
  for (int i = lo + 1; i <= hi; i++) {
    const GradedMatrix& d = C.diff(i);
    int srcOff = offsets[i - lo], tgtOff = offsets[i - lo - 1];
    for (int j = 0; j < d.ncols(); j++)
      for (int r = 0; r < d.rows(); r++)
        del.cols[srcOff + j][tgtOff + r] = d.entry(r, j);
  }
  FlagDM out{mkFreeDM(std::move(del)), std::move(sizes)};
  out.validate();
  return out;
}

// Inverse of foldComplex for flags whose differential is supported on
// adjacent blocks (as folded complexes are).
inline FComplex unfoldFlag(const FlagDM& F) {
  F.validate();
  const Multidegree& a = F.dm.degree;
  const RingPtr& S = F.dm.ring();
  std::vector<int> offsets;
  int off = 0;
  for (int s : F.blockSizes) {
    offsets.push_back(off);
    off += s;
  }
  for (int j = 0; j < F.dm.del.ncols(); j++)
    for (int i = 0; i < F.dm.del.rows(); i++)
      if (!F.dm.del.entry(i, j).isZero() &&
          F.blockOf(j) != F.blockOf(i) + 1)
        throw AlgebraError(AlgebraError::Code::BadInput,
                           "flag differential is not supported on adjacent blocks");
  FComplex C{S, {}, {}};
  for (size_t b = 0; b < F.blockSizes.size(); b++) {
    FreeModule Fb{S, {}};
    for (int k = 0; k < F.blockSizes[b]; k++)
      Fb.twists.push_back(F.dm.underlying.gens.twists[offsets[b] + k]);
    C.terms[static_cast<int>(b)] = twist(Fb, a * -static_cast<int>(b));
  }
  for (size_t b = 1; b < F.blockSizes.size(); b++) {
    GradedMatrix d{C.terms[static_cast<int>(b) - 1], C.terms[static_cast<int>(b)],
                   Multidegree::zero(S->degreeRank()), {}};
    for (int j = 0; j < F.blockSizes[b]; j++) {
      Vec col = zeroVec(S, F.blockSizes[b - 1]);
      for (int r = 0; r < F.blockSizes[b - 1]; r++)
        col[r] = F.dm.del.entry(offsets[b - 1] + r, offsets[b] + j);
      d.cols.push_back(std::move(col));
    }
    C.diffs[static_cast<int>(b)] = std::move(d);
  }
  C.validate();
  return C;
}

// Homology ker(del)/im(del), minimally presented, with representatives in
// the generators of the underlying module.
inline SubquotientPresentation homologyDMWithReps(const DifferentialModule& D) {
  D.validate();
  KernelResult K =
      kernelOfPresentedMap(D.underlying, D.underlying, D.del);
  return presentSubquotient(K.inclusion, D.del, D.underlying.relations);
}

inline PresentedModule homologyDM(const DifferentialModule& D) {
  return homologyDMWithReps(D).module;
}

inline bool isMinimalDM(const DifferentialModule& D) {
  for (const Vec& col : D.del.cols)
    for (const Polynomial& e : col)
      if (e.unitValue()) return false;
  return true;
}

// Split off contractible summands: repeatedly locate a unit entry (i, j) of
// the differential with i != j (scan by lowest row, then lowest column),
// apply the rank-one cancellation del'[r][l] = del[r][l] - del[r][j]
// del[i][l] / c, and delete generators i and j.
inline DifferentialModule minimizeDM(const DifferentialModule& Din) {
  Din.validate();
  if (!Din.isFreeUnderlying())
    throw AlgebraError(AlgebraError::Code::BadInput,
                       "minimization needs a free underlying module");
  const RingPtr& S = Din.ring();
  const FieldSpec& f = S->field();
  std::vector<Multidegree> twists = Din.underlying.gens.twists;
  std::vector<Vec> cols = Din.del.cols;

  while (true) {
    int pi = -1, pj = -1;
    for (size_t i = 0; i < twists.size() && pi < 0; i++)
      for (size_t j = 0; j < twists.size(); j++) {
        if (i == j) continue;
        if (cols[j][i].unitValue()) {
          pi = static_cast<int>(i);
          pj = static_cast<int>(j);
          break;
        }
      }
    if (pi < 0) break;
    Scalar cinv = f.inv(*cols[pj][pi].unitValue());
    int n = static_cast<int>(twists.size());
    std::vector<Vec> next(n, Vec());
    for (int l = 0; l < n; l++) {
      if (l == pi || l == pj) continue;
      Vec col = cols[l];
      if (!cols[l][pi].isZero()) {
        Polynomial q = cols[l][pi].scaled(cinv);
        for (int r = 0; r < n; r++) col[r] = col[r] - q * cols[pj][r];
      }
      next[l] = std::move(col);
    }
    auto dropTwo = [&](int a, int b) {
      int hi = std::max(a, b), lo = std::min(a, b);
      for (int l = 0; l < n; l++) {
        if (next[l].empty()) continue;
        next[l].erase(next[l].begin() + hi);
        next[l].erase(next[l].begin() + lo);
      }
    };
    dropTwo(pi, pj);
    std::vector<Vec> pruned;
    std::vector<Multidegree> prunedTwists;
    for (int l = 0; l < n; l++) {
      if (l == pi || l == pj) continue;
      pruned.push_back(std::move(next[l]));
      prunedTwists.push_back(twists[l]);
    }
    cols = std::move(pruned);
    twists = std::move(prunedTwists);
  }

  FreeModule F{S, twists};
  GradedMatrix del{F, F, Din.degree, cols};
  DifferentialModule out{Din.degree, PresentedModule::fromFree(F), del};
  out.validate();  // square-zero is preserved; fail loudly if not
  return out;
}

struct ResDMResult {
  FlagDM flag;
  GradedMatrix eps;  // quasi-isomorphism flag -> D on generators, shift 0
  bool complete;     // cone(eps) exact within the iteration budget
};

// Free flag resolution of a differential module: repeatedly adjoin a free
// block on the minimal generators of the homology of the running cone.
inline ResDMResult resDM(const DifferentialModule& D, int maxIter) {
  D.validate();
  const RingPtr& S = D.ring();
  const Multidegree& a = D.degree;
  Multidegree z0 = Multidegree::zero(S->degreeRank());
  int rankD = D.rank();

  DifferentialModule X = D;
  std::vector<FreeModule> blocks;
  // eps_i split into the D-part u_i and flag parts w_{i,j}
  std::vector<GradedMatrix> uCols;
  std::vector<std::vector<GradedMatrix>> wCols;
  std::vector<int> blockOffset;  // row offset of F_j inside X
  bool complete = false;

  for (int iter = 0; iter < maxIter; iter++) {
    SubquotientPresentation H = homologyDMWithReps(X);
    if (H.module.gens.rank() == 0) {
      complete = true;
      break;
    }
    FreeModule Fi{S, H.module.gens.twists};
    const GradedMatrix& reps = H.representatives;  // X.gens <- Fi, shift 0
    GradedMatrix u{D.underlying.gens, Fi, z0, {}};
    std::vector<GradedMatrix> w;
    for (size_t j = 0; j < blocks.size(); j++)
      w.push_back(GradedMatrix{twist(blocks[j], a), Fi, z0, {}});
    for (int c = 0; c < reps.ncols(); c++) {
      u.cols.push_back(Vec(reps.cols[c].begin(), reps.cols[c].begin() + rankD));
      for (size_t j = 0; j < blocks.size(); j++) {
        int off = blockOffset[j];
        w[j].cols.push_back(Vec(reps.cols[c].begin() + off,
                                reps.cols[c].begin() + off + blocks[j].rank()));
      }
    }
    u.validate();
    for (auto& wj : w) wj.validate();

    // extend the cone: X <- cone(eps_i: (Fi, 0) -> X)
    DifferentialModule FiDM{
        a, PresentedModule::fromFree(Fi),
        GradedMatrix::zero(Fi, Fi, a)};
    DMorphism epsI{FiDM, X, reps};
    blockOffset.push_back(X.rank());
    X = coneDM(epsI);
    blocks.push_back(Fi);
    uCols.push_back(std::move(u));
    wCols.push_back(std::move(w));
  }
  if (!complete && isZeroModule(homologyDM(X))) complete = true;

  // assemble the flag: F = F_0 + F_1 + ..., del block (j, i) = -w_{i,j}
  FreeModule F{S, {}};
  std::vector<int> sizes;
  std::vector<int> flagOffset;
  for (const FreeModule& b : blocks) {
    flagOffset.push_back(F.rank());
    F.twists.insert(F.twists.end(), b.twists.begin(), b.twists.end());
    sizes.push_back(b.rank());
  }
  GradedMatrix del = GradedMatrix::zero(F, F, a);
  GradedMatrix eps{D.underlying.gens, F, z0, {}};
  for (size_t i = 0; i < blocks.size(); i++)
    for (int c = 0; c < blocks[i].rank(); c++) {
      eps.cols.push_back(uCols[i].cols[c]);
      for (size_t j = 0; j < i; j++) {
        const Vec& wc = wCols[i][j].cols[c];
        for (int r = 0; r < blocks[j].rank(); r++)
          del.cols[flagOffset[i] + c][flagOffset[j] + r] = -wc[r];
      }
    }
  FlagDM flag{mkFreeDM(std::move(del)), std::move(sizes)};
  flag.validate();
  eps.validate();
  DMorphism check{flag.dm, D, eps};
  check.validate();  // del_D eps = eps del_F
  return {std::move(flag), std::move(eps), complete};
}

inline int defaultResDMIterations(const DifferentialModule& D) {
  return D.ring()->nvars() + 1;
}

// Minimal free flag resolution for Z-graded differential modules of degree 0:
// block i is generated in degree n + i, where n is the least degree of a
// minimal generator of H(D). Runs t rounds of the degree-by-degree algorithm.
inline FlagDM resMinFlag(const DifferentialModule& D, int t) {
  D.validate();
  const RingPtr& S = D.ring();
  const FieldSpec& f = S->field();
  if (S->degreeRank() != 1)
    throw AlgebraError(AlgebraError::Code::UnsupportedGrading,
                       "minimal flag resolutions need a rank-one grading");
  if (!D.degree.isZero())
    throw AlgebraError(AlgebraError::Code::NonzeroDegreeDifferential,
                       "minimal flag resolutions need a degree-zero differential");
  Multidegree z0 = Multidegree::zero(1);

  PresentedModule H0 = homologyDM(D);
  FreeModule F{S, {}};
  std::vector<int> sizes;
  GradedMatrix del{F, F, z0, {}};
  if (H0.gens.rank() == 0) {
    FlagDM out{mkFreeDM(GradedMatrix::zero(F, F, z0)), {}};
    out.validate();
    return out;
  }
  int n = H0.gens.twists[0].c[0];
  for (const Multidegree& tw : H0.gens.twists) n = std::min(n, tw.c[0]);

  DifferentialModule X = D;
  std::vector<FreeModule> blocks;
  std::vector<std::vector<GradedMatrix>> wCols;
  std::vector<int> blockOffset;

  for (int i = 0; i < t; i++) {
    Multidegree d{n + i};
    GradedPiece piece(X.underlying, d);
    DenseMat P = pieceMatrixOfMap(X.underlying, X.underlying, X.del, d);
    KernelBasis K = kernelBasis(P, f);
    EchelonSpace bounds(f, piece.dim());
    for (int c = 0; c < P.cols; c++) {
      std::vector<Scalar> col(P.rows);
      for (int r = 0; r < P.rows; r++) col[r] = P.at(r, c);
      bounds.insert(std::move(col));
    }
    EchelonSpace span = bounds;  // boundaries plus accepted cycles
    std::vector<Vec> cycles;     // elements of X in generator coordinates
    for (int k = 0; k < K.vecs.cols; k++) {
      std::vector<Scalar> v(piece.dim());
      for (int r = 0; r < piece.dim(); r++) v[r] = K.vecs.at(r, k);
      bounds.reduceInPlace(v);  // normalize the representative
      if (!span.insert(v)) continue;  // already a boundary modulo accepted
      Vec elem = zeroVec(S, X.rank());
      for (int r = 0; r < piece.dim(); r++) {
        if (f.isZero(v[r])) continue;
        Vec b = piece.basisElement(r);
        for (int g = 0; g < X.rank(); g++)
          elem[g] = elem[g] + b[g].scaled(v[r]);
      }
      cycles.push_back(std::move(elem));
    }
    if (cycles.empty()) {
      if (isZeroModule(homologyDM(X))) break;  // fully resolved
      continue;                                // nothing in this degree
    }
    FreeModule Fi{S, std::vector<Multidegree>(cycles.size(), d)};
    GradedMatrix reps{X.underlying.gens, Fi, z0, cycles};
    reps.validate();
    std::vector<GradedMatrix> w;
    for (size_t j = 0; j < blocks.size(); j++) {
      GradedMatrix wj{blocks[j], Fi, z0, {}};
      for (int c = 0; c < reps.ncols(); c++) {
        int off = blockOffset[j];
        wj.cols.push_back(Vec(reps.cols[c].begin() + off,
                              reps.cols[c].begin() + off + blocks[j].rank()));
      }
      wj.validate();
      w.push_back(std::move(wj));
    }
    DifferentialModule FiDM{z0, PresentedModule::fromFree(Fi),
                            GradedMatrix::zero(Fi, Fi, z0)};
    DMorphism epsI{FiDM, X, reps};
    blockOffset.push_back(X.rank());
    X = coneDM(epsI);
    blocks.push_back(Fi);
    wCols.push_back(std::move(w));
  }

  std::vector<int> flagOffset;
  for (const FreeModule& b : blocks) {
    flagOffset.push_back(F.rank());
    F.twists.insert(F.twists.end(), b.twists.begin(), b.twists.end());
    sizes.push_back(b.rank());
  }
  del = GradedMatrix::zero(F, F, z0);
  for (size_t i = 0; i < blocks.size(); i++)
    for (int c = 0; c < blocks[i].rank(); c++)
      for (size_t j = 0; j < i; j++) {
        const Vec& wc = wCols[i][j].cols[c];
        for (int r = 0; r < blocks[j].rank(); r++)
          del.cols[flagOffset[i] + c][flagOffset[j] + r] = -wc[r];
      }
  FlagDM out{mkFreeDM(std::move(del)), std::move(sizes)};
  out.validate();
  return out;
}

}  // namespace mbgg
