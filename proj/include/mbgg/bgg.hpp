#pragma once

// Functors between graded modules over a positively multigraded polynomial
// ring S and modules over its Koszul-dual exterior algebra E:
//
//  * free modules and homogeneous matrices over E, and square-zero
//    differential E-modules of degree (0, ..., 0; -1);
//  * finitely supported E-modules stored degreewise (dimensions plus the
//    left-multiplication action of each e_i), including extraction of the
//    graded pieces of a presented E-module;
//  * toricLL: the linear complex of S-modules attached to a finitely
//    supported E-module;
//  * toricRR: the differential E-module attached to a window of graded
//    pieces of an S-module.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "mbgg/linalg.hpp"
#include "mbgg/module.hpp"
#include "mbgg/pieces.hpp"
#include "mbgg/polynomial.hpp"
#include "mbgg/ring.hpp"

namespace mbgg {

// ---------------------------------------------------------------------------
// Free modules and homogeneous matrices over the exterior algebra
// ---------------------------------------------------------------------------

struct EFreeModule {
  ExtPtr alg;
  std::vector<Multidegree> twists;  // generator degrees, rank degreeRank()

  int rank() const { return static_cast<int>(twists.size()); }

  void validate() const {
    if (!alg) throw AlgebraError(AlgebraError::Code::BadInput, "missing algebra");
    for (const Multidegree& t : twists)
      if (t.rank() != alg->degreeRank())
        throw AlgebraError(AlgebraError::Code::BadInput,
                           "generator degree has wrong rank");
  }

  bool sameAs(const EFreeModule& o) const {
    return alg->sameAs(*o.alg) && twists == o.twists;
  }
};

// Homogeneous matrix over E: column j collects the coefficients of the image
// of the j-th source generator, and every nonzero entry satisfies
// target.twists[i] + deg(entry) == source.twists[j] + shift.
struct EMatrix {
  EFreeModule target;
  EFreeModule source;
  Multidegree shift;
  std::vector<std::vector<ExtElement>> cols;  // cols[j][i]

  static EMatrix zero(EFreeModule tgt, EFreeModule src, Multidegree sh) {
    EMatrix m{std::move(tgt), std::move(src), std::move(sh), {}};
    m.cols.assign(m.source.rank(),
                  std::vector<ExtElement>(m.target.rank(),
                                          ExtElement::zero(m.target.alg)));
    return m;
  }

  int rows() const { return target.rank(); }
  int ncols() const { return source.rank(); }
  const ExtElement& entry(int i, int j) const { return cols[j][i]; }

  bool isZeroMatrix() const {
    for (const auto& col : cols)
      for (const ExtElement& e : col)
        if (!e.isZero()) return false;
    return true;
  }

  void validate() const {
    target.validate();
    source.validate();
    requireSameAlgebra(target.alg, source.alg);
    if (shift.rank() != target.alg->degreeRank())
      throw AlgebraError(AlgebraError::Code::BadInput, "shift has wrong rank");
    if (static_cast<int>(cols.size()) != source.rank())
      throw AlgebraError(AlgebraError::Code::BadInput, "wrong column count");
    for (int j = 0; j < ncols(); j++) {
      if (static_cast<int>(cols[j].size()) != target.rank())
        throw AlgebraError(AlgebraError::Code::BadInput, "wrong column height");
      for (int i = 0; i < rows(); i++) {
        const ExtElement& e = cols[j][i];
        if (e.isZero()) continue;
        requireSameAlgebra(e.algebra(), target.alg);
        std::optional<Multidegree> d = e.degreeOpt();
        if (target.twists[i] + *d != source.twists[j] + shift)
          throw AlgebraError(AlgebraError::Code::Inhomogeneous,
                             "inhomogeneous exterior matrix entry");
      }
    }
  }
};

inline EMatrix composeE(const EMatrix& A, const EMatrix& B) {
  requireSameAlgebra(A.source.alg, B.target.alg);
  if (A.source.twists != B.target.twists)
    throw AlgebraError(AlgebraError::Code::BadInput,
                       "composition of exterior maps with mismatched modules");
  EMatrix C = EMatrix::zero(A.target, B.source, A.shift + B.shift);
  for (int j = 0; j < B.ncols(); j++)
    for (int w = 0; w < A.ncols(); w++) {
      const ExtElement& b = B.cols[j][w];
      if (b.isZero()) continue;
      for (int i = 0; i < A.rows(); i++) {
        const ExtElement& a = A.cols[w][i];
        if (a.isZero()) continue;
        C.cols[j][i] = C.cols[j][i] + extMultiply(a, b);
      }
    }
  return C;
}

// Free right E-module with a square-zero endomorphism of degree
// (0, ..., 0; -1).
struct DifferentialEModule {
  EFreeModule gens;
  EMatrix del;

  const ExtPtr& algebra() const { return gens.alg; }
  int rank() const { return gens.rank(); }

  void validate() const {
    gens.validate();
    del.validate();
    if (!del.target.sameAs(gens) || !del.source.sameAs(gens))
      throw AlgebraError(AlgebraError::Code::BadInput,
                         "differential is not an endomorphism");
    int t = gens.alg->degreeRank();
    Multidegree want = Multidegree::zero(t);
    want[t - 1] = -1;
    if (del.shift != want)
      throw AlgebraError(AlgebraError::Code::BadInput,
                         "differential must have degree (0, ..., 0; -1)");
    if (!composeE(del, del).isZeroMatrix())
      throw AlgebraError(AlgebraError::Code::NotSquareZero,
                         "exterior differential does not square to zero");
  }
};

// ---------------------------------------------------------------------------
// Finitely supported E-modules, stored degreewise
// ---------------------------------------------------------------------------

// A finite-dimensional graded E-module N given by the dimensions of its
// nonzero pieces and, for each variable, the matrices of left multiplication
// e_i : N_d -> N_{d + deg e_i} in fixed bases. Degrees absent from `dims`
// are zero; action matrices with a zero source or target may be omitted.
struct EModuleGraded {
  ExtPtr alg;
  std::map<Multidegree, int> dims;
  std::map<std::pair<int, Multidegree>, DenseMat> act;  // (i, source degree)

  int dimAt(const Multidegree& d) const {
    auto it = dims.find(d);
    return it == dims.end() ? 0 : it->second;
  }

  int totalDim() const {
    int s = 0;
    for (const auto& [d, n] : dims) s += n;
    return s;
  }

  DenseMat actionAt(int i, const Multidegree& d) const {
    auto it = act.find({i, d});
    if (it != act.end()) return it->second;
    return DenseMat(dimAt(d + alg->varDegree(i)), dimAt(d));
  }

  void validate() const {
    if (!alg) throw AlgebraError(AlgebraError::Code::BadInput, "missing algebra");
    const FieldSpec& f = alg->field();
    for (const auto& [d, n] : dims) {
      if (d.rank() != alg->degreeRank())
        throw AlgebraError(AlgebraError::Code::BadInput,
                           "piece degree has wrong rank");
      if (n <= 0)
        throw AlgebraError(AlgebraError::Code::BadInput,
                           "piece dimensions must be positive");
    }
    for (const auto& [key, m] : act) {
      const auto& [i, d] = key;
      if (i < 0 || i >= alg->nvars())
        throw AlgebraError(AlgebraError::Code::BadInput, "action index out of range");
      if (m.rows != dimAt(d + alg->varDegree(i)) || m.cols != dimAt(d))
        throw AlgebraError(AlgebraError::Code::BadInput, "action matrix shape");
    }
    // Left multiplications anticommute and square to zero.
    for (const auto& [d, n] : dims) {
      for (int i = 0; i < alg->nvars(); i++) {
        Multidegree di = d + alg->varDegree(i);
        DenseMat Ai = actionAt(i, d);
        for (int j = i; j < alg->nvars(); j++) {
          Multidegree dj = d + alg->varDegree(j);
          DenseMat AB = matMul(actionAt(j, di), Ai, f);
          DenseMat BA = matMul(actionAt(i, dj), actionAt(j, d), f);
          for (int r = 0; r < AB.rows; r++)
            for (int c = 0; c < AB.cols; c++) {
              Scalar s = f.add(AB.at(r, c), BA.at(r, c));
              if (!f.isZero(s))
                throw AlgebraError(AlgebraError::Code::NotSquareZero,
                                   "exterior actions do not anticommute");
            }
        }
      }
    }
  }
};

// (generator, monomial mask) pairs of a free E-module, grouped by degree;
// within a degree the pairs are generator-major with masks ascending.
inline std::map<Multidegree, std::vector<std::pair<int, uint32_t>>>
ePairsByDegree(const EFreeModule& F) {
  F.validate();
  std::map<Multidegree, std::vector<std::pair<int, uint32_t>>> out;
  uint32_t total = 1u << F.alg->nvars();
  for (int g = 0; g < F.rank(); g++)
    for (uint32_t m = 0; m < total; m++)
      out[F.twists[g] + F.alg->maskDegree(m)].emplace_back(g, m);
  return out;
}

// Graded pieces of coker(relations), where the relations present a quotient
// of the free module `gens` (relations.target == gens, shift 0). The bases
// are the non-pivot (generator, mask) pairs after echelonizing the E-span of
// the relation columns degree by degree.
inline EModuleGraded gradedPiecesOfEModule(const EFreeModule& gens,
                                           const EMatrix& relations) {
  gens.validate();
  relations.validate();
  requireSameAlgebra(gens.alg, relations.target.alg);
  if (relations.target.twists != gens.twists)
    throw AlgebraError(AlgebraError::Code::BadInput,
                       "relations do not land in the given free module");
  if (!relations.shift.isZero())
    throw AlgebraError(AlgebraError::Code::BadInput,
                       "relations must have shift zero");
  const ExtPtr& E = gens.alg;
  const FieldSpec& f = E->field();
  int nv = E->nvars();
  uint32_t total = 1u << nv;

  auto pairs = ePairsByDegree(gens);
  std::map<Multidegree, std::map<std::pair<int, uint32_t>, int>> index;
  for (const auto& [d, ps] : pairs) {
    auto& ix = index[d];
    for (size_t k = 0; k < ps.size(); k++) ix[ps[k]] = static_cast<int>(k);
  }

  // Echelonize the E-multiples of the relation columns in each degree.
  std::map<Multidegree, EchelonSpace> red;
  for (const auto& [d, ps] : pairs)
    red.emplace(d, EchelonSpace(f, static_cast<int>(ps.size())));
  for (int j = 0; j < relations.ncols(); j++) {
    Multidegree s = relations.source.twists[j];
    for (uint32_t m = 0; m < total; m++) {
      Multidegree d = s + E->maskDegree(m);
      auto it = pairs.find(d);
      if (it == pairs.end()) continue;
      std::vector<Scalar> v(it->second.size(), Scalar(0));
      ExtElement em = ExtElement::term(E, m, f.one());
      bool any = false;
      for (int g = 0; g < gens.rank(); g++) {
        ExtElement p = extMultiply(relations.cols[j][g], em);
        for (const auto& [mask, c] : p.terms()) {
          v[index[d].at({g, mask})] = f.add(v[index[d].at({g, mask})], c);
          any = true;
        }
      }
      if (any) red.at(d).insert(std::move(v));
    }
  }

  // Bases: non-pivot pairs per degree.
  std::map<Multidegree, std::vector<int>> basis;
  EModuleGraded N;
  N.alg = E;
  for (const auto& [d, ps] : pairs) {
    std::vector<char> isPivot(ps.size(), 0);
    for (int p : red.at(d).pivots()) isPivot[p] = 1;
    std::vector<int> b;
    for (size_t k = 0; k < ps.size(); k++)
      if (!isPivot[k]) b.push_back(static_cast<int>(k));
    if (!b.empty()) N.dims[d] = static_cast<int>(b.size());
    basis[d] = std::move(b);
  }

  // Left multiplication by e_i in the quotient bases. The relation span is
  // closed under left multiplication (its columns are homogeneous, hence of
  // pure word length), so reducing the image of a basis pair is well defined.
  for (const auto& [d, ps] : pairs) {
    const std::vector<int>& b = basis.at(d);
    if (b.empty()) continue;
    for (int i = 0; i < nv; i++) {
      Multidegree td = d + E->varDegree(i);
      auto tp = pairs.find(td);
      int tdim = N.dimAt(td);
      DenseMat A(tdim, static_cast<int>(b.size()));
      bool nonzero = false;
      for (size_t k = 0; k < b.size(); k++) {
        const auto& [g, m] = ps[b[k]];
        if (m & (1u << i)) continue;  // e_i * e_m = 0
        uint32_t tm = m | (1u << i);
        std::vector<Scalar> w(tp->second.size(), Scalar(0));
        Scalar c = f.one();
        if (extSign(1u << i, m) < 0) c = f.neg(c);
        w[index[td].at({g, tm})] = c;
        red.at(td).reduceInPlace(w);
        if (tdim == 0) {
          for (const Scalar& s : w)
            if (!f.isZero(s))
              throw AlgebraError(AlgebraError::Code::BadInput,
                                 "action does not preserve the relations");
          continue;
        }
        const std::vector<int>& tb = basis.at(td);
        for (int r = 0; r < tdim; r++) {
          A.at(r, static_cast<int>(k)) = w[tb[r]];
          if (!f.isZero(w[tb[r]])) nonzero = true;
        }
      }
      if (nonzero) N.act.insert_or_assign({i, d}, std::move(A));
    }
  }
  N.validate();
  return N;
}

// ---------------------------------------------------------------------------
// toricLL: the linear complex of an E-module
// ---------------------------------------------------------------------------

// The complex of free S-modules whose j-th term is the sum over degrees
// (a; j) in the support of N of S(-a) ^ dim N_(a; j), with differential
// term_j -> term_{j-1} sending a generator of the (a; j) block to the sum
// over i of x_i times its image under the e_i-action.
inline FComplex toricLL(const EModuleGraded& N) {
  N.validate();
  const ExtAlgebra& E = *N.alg;
  RingPtr S = E.base();
  int t = S->degreeRank();
  FComplex C{S, {}, {}};

  // Block offsets: within term j the degree blocks appear in lex order.
  std::map<Multidegree, int> offset;
  for (const auto& [d, n] : N.dims) {
    int j = d[t];
    FreeModule& F = C.terms.try_emplace(j, FreeModule{S, {}}).first->second;
    offset[d] = F.rank();
    Multidegree a = Multidegree::zero(t);
    for (int q = 0; q < t; q++) a[q] = d[q];
    for (int k = 0; k < n; k++) F.twists.push_back(a);
  }

  for (const auto& [d, n] : N.dims) {
    int j = d[t];
    if (C.term(j - 1).rank() == 0) continue;
    GradedMatrix& D =
        C.diffs
            .try_emplace(j, GradedMatrix::zero(C.term(j - 1), C.term(j),
                                               Multidegree::zero(t)))
            .first->second;
    for (int i = 0; i < E.nvars(); i++) {
      Multidegree td = d + E.varDegree(i);
      if (N.dimAt(td) == 0) continue;
      DenseMat A = N.actionAt(i, d);
      for (int v = 0; v < A.cols; v++)
        for (int w = 0; w < A.rows; w++) {
          if (S->field().isZero(A.at(w, v))) continue;
          Polynomial& e = D.cols[offset.at(d) + v][offset.at(td) + w];
          e = e + Polynomial::variable(S, i).scaled(A.at(w, v));
        }
    }
  }
  C.validate();
  return C;
}

// ---------------------------------------------------------------------------
// toricRR: the differential E-module of a window of graded pieces
// ---------------------------------------------------------------------------

// Degrees e + a*deg(x_i) with e a generator degree of M, a in {0, 1}:
// the default window for modules of infinite k-dimension.
inline std::vector<Multidegree> defaultDegreeWindow(const PresentedModule& M) {
  const RingPtr& S = M.gens.ring;
  std::set<Multidegree> w;
  for (const Multidegree& e : M.gens.twists) {
    w.insert(e);
    for (int i = 0; i < S->nvars(); i++) w.insert(e + S->varDegree(i));
  }
  return std::vector<Multidegree>(w.begin(), w.end());
}

// The differential E-module with one generator in degree omega(d) for each
// basis vector of M_d, d running over the window, plus the labels needed to
// locate each generator (its window degree and its index in the piece basis).
struct ToricRRResult {
  DifferentialEModule dm;
  std::vector<Multidegree> genDegrees;  // window degree of each generator
  std::vector<int> genBasisIndex;       // position in the piece basis
};

inline ToricRRResult toricRRLabeled(const PresentedModule& M,
                                    const std::vector<Multidegree>& window) {
  M.validate();
  const RingPtr& S = M.gens.ring;
  S->theta();  // requires a positive grading
  ExtPtr E = dualRingToric(S);
  int t = S->degreeRank();

  std::set<Multidegree> wset;
  for (const Multidegree& d : window) {
    if (d.rank() != t)
      throw AlgebraError(AlgebraError::Code::BadInput,
                         "window degree has wrong rank");
    wset.insert(d);
  }

  std::map<Multidegree, GradedPiece> pieces;
  for (const Multidegree& d : wset) pieces.emplace(d, GradedPiece(M, d));

  ToricRRResult out;
  out.dm.gens.alg = E;
  std::map<Multidegree, int> base;
  for (const Multidegree& d : wset) {
    base[d] = out.dm.gens.rank();
    int n = pieces.at(d).dim();
    for (int b = 0; b < n; b++) {
      out.dm.gens.twists.push_back(omegaTwistDegree(*E, d));
      out.genDegrees.push_back(d);
      out.genBasisIndex.push_back(b);
    }
  }

  Multidegree shift = Multidegree::zero(t + 1);
  shift[t] = -1;
  out.dm.del = EMatrix::zero(out.dm.gens, out.dm.gens, shift);
  for (const Multidegree& d : wset) {
    const GradedPiece& src = pieces.at(d);
    if (src.dim() == 0) continue;
    for (int i = 0; i < S->nvars(); i++) {
      Multidegree td = d + S->varDegree(i);
      if (!wset.count(td) || pieces.at(td).dim() == 0) continue;
      DenseMat A = multiplicationMap(M, Polynomial::variable(S, i), d);
      for (int v = 0; v < A.cols; v++)
        for (int w = 0; w < A.rows; w++)
          if (!S->field().isZero(A.at(w, v)))
            out.dm.del.cols[base[d] + v][base[td] + w].addTerm(1u << i,
                                                               A.at(w, v));
    }
  }
  out.dm.validate();
  return out;
}

inline ToricRRResult toricRRLabeled(const PresentedModule& M) {
  return toricRRLabeled(M, isFiniteDimensional(M) ? supportDegrees(M)
                                                  : defaultDegreeWindow(M));
}

inline DifferentialEModule toricRR(const PresentedModule& M,
                                   const std::vector<Multidegree>& window) {
  return toricRRLabeled(M, window).dm;
}

inline DifferentialEModule toricRR(const PresentedModule& M) {
  return toricRRLabeled(M).dm;
}

}  // namespace mbgg
