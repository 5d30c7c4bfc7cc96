#pragma once

// Strongly linear strand of the minimal free resolution of a module
// generated in a single degree d: the linear complex of the kernel of the
// dual differential restricted to the M_d block,
//
//   strand(M) = toricLL( ker( M_d block of R(M) --del--> R(M) ) ),
//
// computed on the window {d} union {d + deg x_i}, which contains every
// degree the restricted differential can reach.

#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "mbgg/bgg.hpp"
#include "mbgg/presented.hpp"

namespace mbgg {

// Every term of every nonzero entry has total exponent one.
inline bool isStronglyLinearMatrix(const GradedMatrix& f) {
  for (const auto& col : f.cols)
    for (const Polynomial& p : col)
      for (const auto& [e, c] : p.terms()) {
        int s = 0;
        for (int v : e) s += v;
        if (s != 1) return false;
      }
  return true;
}

struct StrandResult {
  FComplex strand;            // term 0 is S(-d) ^ dim M_d
  Multidegree sourceDegree;   // the common generator degree d
  std::map<Multidegree, int> kernelDims;  // pieces of the kernel module
};

inline StrandResult stronglyLinearStrand(const PresentedModule& Min) {
  const RingPtr& S = Min.gens.ring;
  S->theta();  // requires a positive grading
  PresentedModule M = minimalPresentation(Min).module;
  if (M.gens.rank() == 0)
    throw AlgebraError(AlgebraError::Code::NotSingleDegree,
                       "zero module has no generating degree");
  Multidegree d = M.gens.twists[0];
  for (const Multidegree& t : M.gens.twists)
    if (t != d)
      throw AlgebraError(AlgebraError::Code::NotSingleDegree,
                         "module is not generated in a single degree");

  std::vector<Multidegree> window{d};
  for (int i = 0; i < S->nvars(); i++) window.push_back(d + S->varDegree(i));
  ToricRRResult RR = toricRRLabeled(M, window);
  const EFreeModule& gens = RR.dm.gens;
  const ExtPtr& E = gens.alg;
  const FieldSpec& f = E->field();
  int nv = E->nvars();
  uint32_t total = 1u << nv;

  // Source generators: the M_d block.
  std::vector<int> srcGens;
  for (int g = 0; g < gens.rank(); g++)
    if (RR.genDegrees[g] == d) srcGens.push_back(g);

  // Coordinates of the ambient free module, degree by degree.
  auto pairs = ePairsByDegree(gens);
  std::map<Multidegree, std::map<std::pair<int, uint32_t>, int>> index;
  for (const auto& [dd, ps] : pairs) {
    auto& ix = index[dd];
    for (size_t k = 0; k < ps.size(); k++) ix[ps[k]] = static_cast<int>(k);
  }

  // Source pairs (g, mask) with g in the M_d block, grouped by degree.
  Multidegree od = omegaTwistDegree(*E, d);
  std::map<Multidegree, std::vector<std::pair<int, uint32_t>>> srcPairs;
  for (int g : srcGens)
    for (uint32_t m = 0; m < total; m++)
      srcPairs[od + E->maskDegree(m)].emplace_back(g, m);

  // Image of one source pair under the differential, in ambient coordinates
  // at the degree one step down.
  Multidegree down = Multidegree::zero(E->degreeRank());
  down[E->degreeRank() - 1] = -1;
  auto imageOf = [&](int g, uint32_t m, const Multidegree& tdeg) {
    std::vector<Scalar> w(pairs.at(tdeg).size(), Scalar(0));
    ExtElement em = ExtElement::term(E, m, f.one());
    for (int u = 0; u < gens.rank(); u++) {
      const ExtElement& e = RR.dm.del.cols[g][u];
      if (e.isZero()) continue;
      ExtElement p = extMultiply(e, em);
      for (const auto& [mask, c] : p.terms())
        w[index.at(tdeg).at({u, mask})] = f.add(w[index.at(tdeg).at({u, mask})], c);
    }
    return w;
  };

  // K = ker(del restricted to the M_d block), degree by degree: kernel of
  // the matrix whose columns are the images of the source pairs.
  struct DegreeData {
    std::vector<std::pair<int, uint32_t>> ps;  // source pairs
    DenseMat basis;                            // kernel vectors as columns
    std::vector<int> freeCols;
  };
  std::map<Multidegree, DegreeData> K;
  EModuleGraded N;
  N.alg = E;
  for (const auto& [dd, ps] : srcPairs) {
    Multidegree tdeg = dd + down;
    auto tpit = pairs.find(tdeg);  // absent: nothing one step down, image 0
    DenseMat P(tpit == pairs.end() ? 0 : static_cast<int>(tpit->second.size()),
               static_cast<int>(ps.size()));
    if (tpit != pairs.end())
      for (size_t k = 0; k < ps.size(); k++) {
        std::vector<Scalar> w = imageOf(ps[k].first, ps[k].second, tdeg);
        for (int r = 0; r < P.rows; r++) P.at(r, static_cast<int>(k)) = w[r];
      }
    KernelBasis kb = kernelBasis(P, f);
    if (kb.vecs.cols == 0) continue;
    N.dims[dd] = kb.vecs.cols;
    K.emplace(dd, DegreeData{ps, std::move(kb.vecs), std::move(kb.freeCols)});
  }

  // Left multiplication by e_i maps K into itself (the differential is
  // right-linear, so left products of kernel elements are kernel elements);
  // the coordinates in the kernel basis are read off at the free columns,
  // and the expansion is checked against the image.
  for (const auto& [dd, data] : K) {
    for (int i = 0; i < nv; i++) {
      Multidegree td = dd + E->varDegree(i);
      auto it = K.find(td);
      DenseMat A(it == K.end() ? 0 : it->second.basis.cols,
                 data.basis.cols);
      bool nonzero = false;
      for (int k = 0; k < data.basis.cols; k++) {
        // Expand e_i * (sum of coeff * g e_m) in the source pairs at td.
        std::map<std::pair<int, uint32_t>, Scalar> img;
        for (size_t p = 0; p < data.ps.size(); p++) {
          const Scalar& c = data.basis.at(static_cast<int>(p), k);
          if (f.isZero(c)) continue;
          const auto& [g, m] = data.ps[p];
          if (m & (1u << i)) continue;
          Scalar cc = c;
          if (extSign(1u << i, m) < 0) cc = f.neg(cc);
          auto [pos, inserted] = img.emplace(std::make_pair(g, m | (1u << i)), cc);
          if (!inserted) pos->second = f.add(pos->second, cc);
        }
        bool any = false;
        for (const auto& [pr, c] : img)
          if (!f.isZero(c)) any = true;
        if (!any) continue;
        if (it == K.end())
          throw AlgebraError(AlgebraError::Code::BadInput,
                             "kernel is not closed under the exterior action");
        const DegreeData& tdata = it->second;
        std::map<std::pair<int, uint32_t>, int> tix;
        for (size_t p = 0; p < tdata.ps.size(); p++)
          tix[tdata.ps[p]] = static_cast<int>(p);
        std::vector<Scalar> w(tdata.ps.size(), Scalar(0));
        for (const auto& [pr, c] : img) w[tix.at(pr)] = c;
        // Coordinates in the kernel basis: each basis vector is 1 at its own
        // free column and 0 at the others.
        std::vector<Scalar> coord(tdata.basis.cols, Scalar(0));
        for (int r = 0; r < tdata.basis.cols; r++)
          coord[r] = w[tdata.freeCols[r]];
        // Check the expansion reproduces the image exactly.
        for (size_t p = 0; p < tdata.ps.size(); p++) {
          Scalar s = f.neg(w[p]);
          for (int r = 0; r < tdata.basis.cols; r++)
            s = f.add(s, f.mul(tdata.basis.at(static_cast<int>(p), r), coord[r]));
          if (!f.isZero(s))
            throw AlgebraError(AlgebraError::Code::BadInput,
                               "kernel is not closed under the exterior action");
        }
        for (int r = 0; r < A.rows; r++) {
          A.at(r, k) = coord[r];
          if (!f.isZero(coord[r])) nonzero = true;
        }
      }
      if (nonzero) N.act.insert_or_assign({i, dd}, std::move(A));
    }
  }

  StrandResult out{toricLL(N), d, N.dims};
  for (const auto& [j, diff] : out.strand.diffs)
    if (!isStronglyLinearMatrix(diff))
      throw AlgebraError(AlgebraError::Code::BadInput,
                         "strand differential is not strongly linear");
  return out;
}

}  // namespace mbgg
