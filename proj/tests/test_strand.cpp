// Strongly linear strands of minimal free resolutions: the predicate for
// strongly linear matrices, small strands over a toric grading, the Koszul
// strand of a residue field, and the canonical module of a weighted curve.

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <vector>

#include "mbgg/resolution.hpp"
#include "mbgg/strand.hpp"
#include "util.hpp"

using namespace mbgg;

namespace {

Polynomial var(const RingPtr& S, int i) { return Polynomial::variable(S, i); }

PresentedModule cyclicQuotient(const RingPtr& S,
                               const std::vector<Polynomial>& ideal) {
  FreeModule F{S, {Multidegree::zero(S->degreeRank())}};
  FreeModule src{S, {}};
  GradedMatrix rel{F, src, Multidegree::zero(S->degreeRank()), {}};
  for (const Polynomial& p : ideal) {
    rel.source.twists.push_back(*p.degreeOpt());
    rel.cols.push_back({p});
  }
  rel.validate();
  return PresentedModule{F, rel};
}

bool polyEq(const Polynomial& p, const Polynomial& q) {
  return (p - q).isZero();
}

std::multiset<Multidegree> twistMultiset(const std::vector<Multidegree>& v) {
  return std::multiset<Multidegree>(v.begin(), v.end());
}

}  // namespace

TEST_CASE("strongly linear matrices") {
  RingPtr S = testutil::standardRing({"x", "y"});
  FreeModule tgt{S, {{0}}};

  auto single = [&](const Polynomial& p, Multidegree src) {
    GradedMatrix m{tgt, FreeModule{S, {src}}, Multidegree::zero(1), {{p}}};
    m.validate();
    return m;
  };

  CHECK(isStronglyLinearMatrix(single(var(S, 0), {1})));
  CHECK(isStronglyLinearMatrix(
      single(var(S, 0) + var(S, 1).scaled(Scalar(-3)), {1})));
  CHECK_FALSE(isStronglyLinearMatrix(single(var(S, 0) * var(S, 0), {2})));
  CHECK_FALSE(isStronglyLinearMatrix(single(var(S, 0) * var(S, 1), {2})));
  CHECK_FALSE(isStronglyLinearMatrix(single(Polynomial::one(S), {0})));
  // Zero matrices are vacuously strongly linear.
  CHECK(isStronglyLinearMatrix(
      GradedMatrix::zero(tgt, FreeModule{S, {{5}}}, Multidegree::zero(1))));
}

TEST_CASE("strand of a toric hypersurface pair") {
  RingPtr S = testutil::hirzebruch(3);
  PresentedModule M =
      cyclicQuotient(S, {var(S, 0), var(S, 1) * var(S, 1)});

  StrandResult R = stronglyLinearStrand(M);
  CHECK(R.sourceDegree == Multidegree{0, 0});

  // Only the linear relation x_0 survives in the strand.
  CHECK(R.strand.lo() == 0);
  CHECK(R.strand.hi() == 1);
  CHECK(R.strand.term(0).twists == std::vector<Multidegree>{{0, 0}});
  CHECK(R.strand.term(1).twists == std::vector<Multidegree>{{1, 0}});
  REQUIRE(R.strand.diff(1).rows() == 1);
  REQUIRE(R.strand.diff(1).ncols() == 1);
  CHECK(polyEq(R.strand.diff(1).entry(0, 0), var(S, 0)));
  CHECK(isStronglyLinearMatrix(R.strand.diff(1)));

  CHECK(R.kernelDims ==
        std::map<Multidegree, int>{{{0, 0, 0}, 1}, {{1, 0, 1}, 1}});
}

TEST_CASE("strand of a residue field is the Koszul complex") {
  RingPtr S = testutil::standardRing({"x", "y"});
  PresentedModule k = cyclicQuotient(S, {var(S, 0), var(S, 1)});

  StrandResult R = stronglyLinearStrand(k);
  CHECK(R.sourceDegree == Multidegree{0});
  CHECK(R.strand.lo() == 0);
  CHECK(R.strand.hi() == 2);
  CHECK(R.strand.term(0).twists == std::vector<Multidegree>{{0}});
  CHECK(R.strand.term(1).twists == std::vector<Multidegree>{{1}, {1}});
  CHECK(R.strand.term(2).twists == std::vector<Multidegree>{{2}});
  CHECK(isStronglyLinearMatrix(R.strand.diff(1)));
  CHECK(isStronglyLinearMatrix(R.strand.diff(2)));

  // The strand of the residue field is the whole minimal free resolution.
  FComplex res = minimalFreeResolution(k, 2);
  for (int j = 0; j <= 2; j++)
    CHECK(twistMultiset(R.strand.term(j).twists) ==
          twistMultiset(res.term(j).twists));
}

TEST_CASE("strand keeps only linear relations") {
  RingPtr S = testutil::standardRing({"x", "y", "z"});
  PresentedModule M = cyclicQuotient(
      S, {var(S, 0), var(S, 1) * var(S, 1),
          var(S, 2) * var(S, 2) * var(S, 2)});

  StrandResult R = stronglyLinearStrand(M);
  CHECK(R.strand.lo() == 0);
  CHECK(R.strand.hi() == 1);
  CHECK(R.strand.term(1).rank() == 1);
  CHECK(polyEq(R.strand.diff(1).entry(0, 0), var(S, 0)));

  // Term by term, the strand is dominated by the minimal free resolution.
  FComplex res = minimalFreeResolution(M, 3);
  for (int j = 0; j <= 3; j++)
    CHECK(R.strand.term(j).rank() <= res.term(j).rank());
}

TEST_CASE("strand of a free module is concentrated in one spot") {
  RingPtr S = testutil::hirzebruch(3);
  PresentedModule F =
      PresentedModule::fromFree(FreeModule{S, {{1, 1}, {1, 1}}});
  StrandResult R = stronglyLinearStrand(F);
  CHECK(R.sourceDegree == Multidegree{1, 1});
  CHECK(R.strand.lo() == 0);
  CHECK(R.strand.hi() == 0);
  CHECK(R.strand.term(0).twists ==
        std::vector<Multidegree>{{1, 1}, {1, 1}});
}

TEST_CASE("strand rejects unsupported inputs") {
  RingPtr S = testutil::hirzebruch(3);

  SECTION("generators in two different degrees") {
    PresentedModule M =
        PresentedModule::fromFree(FreeModule{S, {{0, 0}, {1, 0}}});
    try {
      stronglyLinearStrand(M);
      FAIL("expected an error for mixed generator degrees");
    } catch (const AlgebraError& e) {
      CHECK(e.code() == AlgebraError::Code::NotSingleDegree);
    }
  }

  SECTION("the zero module") {
    PresentedModule M = PresentedModule::fromFree(FreeModule{S, {}});
    CHECK_THROWS_AS(stronglyLinearStrand(M), AlgebraError);
  }

  SECTION("non-positive gradings") {
    RingPtr W = testutil::weightedRing({1, -1});
    PresentedModule M = PresentedModule::fromFree(FreeModule{W, {{0}}});
    try {
      stronglyLinearStrand(M);
      FAIL("expected an error for a non-positive grading");
    } catch (const AlgebraError& e) {
      CHECK(e.code() == AlgebraError::Code::NotPositivelyGraded);
    }
  }
}

TEST_CASE("strand of the canonical module of a weighted curve") {
  // The coordinate ring of P(1,1,1,2,2); the curve is cut out by the 2x2
  // minors of [[x_0, x_1, x_2^2, x_3], [x_1, x_2, x_3, x_4]] and its
  // canonical module is Ext^3 of the quotient into S(-7).
  RingPtr S = testutil::weightedRing({1, 1, 1, 2, 2});
  auto x = [&](int i) { return var(S, i); };
  std::vector<Polynomial> minors = {
      x(0) * x(2) - x(1) * x(1),         // columns 0,1
      x(0) * x(3) - x(1) * x(2) * x(2),  // columns 0,2
      x(0) * x(4) - x(1) * x(3),         // columns 0,3
      x(1) * x(3) - x(2) * x(2) * x(2),  // columns 1,2
      x(1) * x(4) - x(2) * x(3),         // columns 1,3
      x(2) * x(2) * x(4) - x(3) * x(3),  // columns 2,3
  };
  PresentedModule SI = cyclicQuotient(S, minors);
  PresentedModule M = extModule(SI, 3, Multidegree{-7});

  // The canonical module is generated in the single degree 1, with
  // three generators.
  PresentedModule Mmin = minimalPresentation(M).module;
  REQUIRE(Mmin.gens.rank() == 3);
  CHECK(twistMultiset(Mmin.gens.twists) ==
        std::multiset<Multidegree>{{1}, {1}, {1}});

  StrandResult R = stronglyLinearStrand(M);
  CHECK(R.sourceDegree == Multidegree{1});
  CHECK(R.strand.lo() == 0);
  CHECK(R.strand.hi() == 2);
  CHECK(R.strand.term(0).rank() == 3);
  CHECK(R.strand.term(1).rank() == 6);
  CHECK(R.strand.term(2).rank() == 3);
  CHECK(R.strand.term(0).twists ==
        std::vector<Multidegree>{{1}, {1}, {1}});
  CHECK(twistMultiset(R.strand.term(1).twists) ==
        std::multiset<Multidegree>{{2}, {2}, {2}, {2}, {3}, {3}});
  CHECK(twistMultiset(R.strand.term(2).twists) ==
        std::multiset<Multidegree>{{3}, {4}, {4}});
  CHECK(isStronglyLinearMatrix(R.strand.diff(1)));
  CHECK(isStronglyLinearMatrix(R.strand.diff(2)));

  // Kernel pieces behind the strand terms.
  CHECK(R.kernelDims ==
        std::map<Multidegree, int>{
            {{1, 0}, 3}, {{2, 1}, 4}, {{3, 1}, 2}, {{3, 2}, 1}, {{4, 2}, 2}});

  // The strand is a subcomplex of the minimal free resolution up to
  // isomorphism: term by term its ranks are dominated.
  FComplex res = minimalFreeResolution(M, 2);
  CHECK(twistMultiset(res.term(0).twists) ==
        twistMultiset(R.strand.term(0).twists));
  for (int j = 0; j <= 2; j++)
    CHECK(R.strand.term(j).rank() <= res.term(j).rank());
}
