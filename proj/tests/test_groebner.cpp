#include <algorithm>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "mbgg/groebner.hpp"
#include "mbgg/pieces.hpp"
#include "util.hpp"

using namespace mbgg;

namespace {

Polynomial var(const RingPtr& S, int i) { return Polynomial::variable(S, i); }

bool polyEq(const Polynomial& a, const Polynomial& b) { return (a - b).isZero(); }

// dense matrix of the degree-d piece of a map between free modules
DenseMat freePieceMatrix(const GradedMatrix& A, const Multidegree& d) {
  return pieceMatrixOfMap(PresentedModule::fromFree(A.source),
                          PresentedModule::fromFree(A.target), A, d);
}

}  // namespace

TEST_CASE("theta-grevlex with position-over-term") {
  RingPtr S = testutil::standardRing({"x", "y", "z"});
  ModuleOrder ord(S);
  // grevlex: x^2y > xy^2, xz > y^2? weight tie (2=2): last exponent smaller wins
  CHECK(ord.cmpMonomial({2, 1, 0}, {1, 2, 0}) > 0);
  CHECK(ord.cmpMonomial({1, 2, 0}, {2, 1, 0}) < 0);
  CHECK(ord.cmpMonomial({1, 0, 1}, {0, 2, 0}) < 0);  // xz < y^2 (z-exp larger)
  CHECK(ord.cmpMonomial({3, 0, 0}, {1, 1, 0}) > 0);  // weight 3 > 2
  CHECK(ord.cmpMonomial({1, 1, 1}, {1, 1, 1}) == 0);
  // position: lower index dominates
  CHECK(ord.cmpTerm(0, {0, 0, 0}, 1, {5, 5, 5}) > 0);
  CHECK(ord.cmpTerm(2, {1, 0, 0}, 2, {0, 1, 0}) > 0);

  Vec v = zeroVec(S, 2);
  v[0] = var(S, 1);          // y at position 0
  v[1] = var(S, 0) * var(S, 0);  // x^2 at position 1
  auto lt = leadTerm(v, ord);
  REQUIRE(lt.has_value());
  CHECK(lt->pos == 0);
  CHECK(lt->exp == ExpVec{0, 1, 0});
}

TEST_CASE("weighted order respects the positivity functional") {
  RingPtr S = testutil::hirzebruch(3);  // weights 1,1,1,4
  ModuleOrder ord(S);
  CHECK(ord.weight({1, 0, 0, 0}) == 1);
  CHECK(ord.weight({0, 1, 0, 0}) == 1);
  CHECK(ord.weight({0, 0, 0, 1}) == 4);
  // x_3 beats any cubic in the others
  CHECK(ord.cmpMonomial({0, 0, 0, 1}, {3, 0, 0, 0}) > 0);
  CHECK(ord.cmpMonomial({0, 0, 0, 1}, {0, 0, 5, 0}) < 0);
}

TEST_CASE("reduced basis of (x^2 - y^2, xy)") {
  RingPtr S = testutil::standardRing({"x", "y"});
  Polynomial x = var(S, 0), y = var(S, 1);
  GBEngine eng(FreeModule{S, {Multidegree::zero(1)}}, false);
  eng.feed({x * x - y * y}, {2});
  eng.feed({x * y}, {2});
  auto rb = eng.reducedBasis();
  REQUIRE(rb.size() == 3);
  CHECK(polyEq(rb[0][0], x * y));
  CHECK(polyEq(rb[1][0], x * x - y * y));
  CHECK(polyEq(rb[2][0], y * y * y));
}

TEST_CASE("normal form is independent of feed order") {
  RingPtr S = testutil::standardRing({"x", "y", "z"});
  std::mt19937 rng(1234);
  for (int round = 0; round < 10; round++) {
    std::vector<Polynomial> gens;
    for (int i = 0; i < 4; i++)
      gens.push_back(testutil::randomHomogeneous(rng, S, {2 + (i % 2)}));
    std::vector<Polynomial> probes;
    for (int i = 0; i < 3; i++)
      probes.push_back(testutil::randomHomogeneous(rng, S, {4}));

    FreeModule F{S, {Multidegree::zero(1)}};
    GBEngine a(F, false);
    for (const auto& g : gens)
      if (!g.isZero()) a.feed({g}, *g.degreeOpt());
    std::vector<Polynomial> shuffled = gens;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    GBEngine b(F, false);
    for (const auto& g : shuffled)
      if (!g.isZero()) b.feed({g}, *g.degreeOpt());

    for (const auto& p : probes) {
      Vec ra = a.normalForm({p}), rb = b.normalForm({p});
      CHECK(vecIsZero(vecSub(ra, rb)));
      // idempotence and membership of the reduction difference
      CHECK(vecIsZero(vecSub(a.normalForm(ra), ra)));
      CHECK(a.contains(vecSub(Vec{p}, ra)));
    }
  }
}

TEST_CASE("syzygy of (x y) is the Koszul relation") {
  RingPtr S = testutil::standardRing({"x", "y"});
  Polynomial x = var(S, 0), y = var(S, 1);
  GradedMatrix A{FreeModule{S, {Multidegree::zero(1)}},
                 FreeModule{S, {{1}, {1}}},
                 Multidegree::zero(1),
                 {{x}, {y}}};
  GradedMatrix Z = syzygies(A);
  REQUIRE(Z.ncols() == 1);
  CHECK(Z.source.twists[0] == Multidegree{2});
  CHECK(polyEq(Z.entry(0, 0), y));
  CHECK(polyEq(Z.entry(1, 0), -x));
  CHECK(compose(A, Z).isZeroMatrix());
}

TEST_CASE("syzygy of the square-zero block from the running example") {
  RingPtr S = testutil::standardRing({"x", "y"});
  Polynomial x = var(S, 0), y = var(S, 1);
  // columns (xy, y^2) and (-x^2, -xy); kernel is generated by (x, y)
  GradedMatrix A{FreeModule{S, {Multidegree::zero(1), Multidegree::zero(1)}},
                 FreeModule{S, {{2}, {2}}},
                 Multidegree::zero(1),
                 {{x * y, y * y}, {-(x * x), -(x * y)}}};
  GradedMatrix Z = syzygies(A);
  REQUIRE(Z.ncols() == 1);
  CHECK(Z.source.twists[0] == Multidegree{3});
  CHECK(polyEq(Z.entry(0, 0), x));
  CHECK(polyEq(Z.entry(1, 0), y));
}

TEST_CASE("zero columns contribute unit syzygies") {
  RingPtr S = testutil::standardRing({"x", "y"});
  Polynomial x = var(S, 0);
  GradedMatrix A{FreeModule{S, {Multidegree::zero(1)}},
                 FreeModule{S, {{1}, {5}}},
                 Multidegree::zero(1),
                 {{x}, {Polynomial::zero(S)}}};
  GradedMatrix Z = syzygies(A);
  REQUIRE(Z.ncols() == 1);
  CHECK(polyEq(Z.entry(0, 0), Polynomial::zero(S)));
  CHECK(polyEq(Z.entry(1, 0), Polynomial::one(S)));
}

TEST_CASE("syzygies are complete degree by degree") {
  auto check = [](const FieldSpec& f, unsigned seed) {
    RingPtr S = testutil::standardRing({"x", "y", "z"}, f);
    std::mt19937 rng(seed);
    for (int round = 0; round < 6; round++) {
      FreeModule tgt{S, {Multidegree::zero(1), Multidegree::zero(1)}};
      FreeModule src{S, {{1}, {2}, {2}}};
      GradedMatrix A{tgt, src, Multidegree::zero(1), {}};
      for (int j = 0; j < 3; j++) {
        Vec col = zeroVec(S, 2);
        for (int i = 0; i < 2; i++)
          col[i] = testutil::randomHomogeneous(rng, S, src.twists[j]);
        A.cols.push_back(col);
      }
      A.validate();
      GradedMatrix Z = syzygies(A);
      CHECK(compose(A, Z).isZeroMatrix());

      PresentedModule freeSrc = PresentedModule::fromFree(src);
      for (int w = 0; w <= 7; w++) {
        Multidegree d{w};
        DenseMat piece = freePieceMatrix(A, d);
        KernelBasis K = kernelBasis(piece, f);
        // the kernel piece must equal the span of the syzygy columns there
        GradedPiece P(freeSrc, d);
        EchelonSpace span(f, P.dim());
        for (int j = 0; j < Z.ncols(); j++) {
          for (const ExpVec& m : monomialsOfDegree(S, d - Z.source.twists[j])) {
            Vec v = Z.cols[j];
            for (Polynomial& p : v)
              p = p.monomialShifted(m, f.fromLong(1));
            span.insert(P.coords(v));
          }
        }
        CHECK(span.rank() == K.vecs.cols);
        for (int k = 0; k < K.vecs.cols; k++) {
          std::vector<Scalar> v(P.dim());
          for (int r = 0; r < P.dim(); r++) v[r] = K.vecs.at(r, k);
          CHECK(span.contains(v));
        }
      }
    }
  };
  check(FieldSpec::rationals(), 2024);
  check(FieldSpec::prime(101), 2025);
}

TEST_CASE("syzygies over a rank-two grading") {
  RingPtr S = testutil::hirzebruch(3, FieldSpec::prime(101));
  Polynomial x0 = var(S, 0), x1 = var(S, 1), x2 = var(S, 2), x3 = var(S, 3);
  // Koszul pair on x_0, x_2 (both of degree (1,0))
  GradedMatrix A{FreeModule{S, {Multidegree::zero(2)}},
                 FreeModule{S, {{1, 0}, {1, 0}}},
                 Multidegree::zero(2),
                 {{x0}, {x2}}};
  GradedMatrix Z = syzygies(A);
  REQUIRE(Z.ncols() == 1);
  CHECK(Z.source.twists[0] == Multidegree{2, 0});
  CHECK(compose(A, Z).isZeroMatrix());

  // mixed degrees
  GradedMatrix B{FreeModule{S, {Multidegree::zero(2)}},
                 FreeModule{S, {{1, 0}, {0, 1}}},
                 Multidegree::zero(2),
                 {{x0}, {x3}}};
  GradedMatrix ZB = syzygies(B);
  REQUIRE(ZB.ncols() == 1);
  CHECK(ZB.source.twists[0] == Multidegree{1, 1});
  CHECK(compose(B, ZB).isZeroMatrix());
}

TEST_CASE("minimal generators of a set of columns") {
  RingPtr S = testutil::standardRing({"x", "y"});
  Polynomial x = var(S, 0), y = var(S, 1);
  FreeModule F{S, {Multidegree::zero(1)}};
  GradedMatrix A{F, FreeModule{S, {{2}, {1}, {1}, {2}}}, Multidegree::zero(1),
                 {{x * x}, {x}, {y}, {x * y + y * y}}};
  GradedMatrix G = mingensColumns(A);
  // ascending degree: x, y accepted; x^2 and xy + y^2 lie in (x, y)
  REQUIRE(G.ncols() == 2);
  CHECK(polyEq(G.entry(0, 0), x));
  CHECK(polyEq(G.entry(0, 1), y));
  CHECK(G.source.twists == std::vector<Multidegree>{{1}, {1}});
}

TEST_CASE("minimal generators: span is preserved and irredundant") {
  RingPtr S = testutil::standardRing({"x", "y"}, FieldSpec::prime(101));
  std::mt19937 rng(77);
  for (int round = 0; round < 8; round++) {
    FreeModule F{S, {Multidegree::zero(1), {1}}};
    std::vector<Multidegree> twists = {{1}, {2}, {2}, {3}};
    GradedMatrix A{F, FreeModule{S, twists}, Multidegree::zero(1), {}};
    for (const auto& t : twists) {
      Vec col(2, Polynomial::zero(S));
      col[0] = testutil::randomHomogeneous(rng, S, t);
      col[1] = testutil::randomHomogeneous(rng, S, t - Multidegree{1});
      A.cols.push_back(col);
    }
    A.validate();
    GradedMatrix G = mingensColumns(A);
    GBEngine full = engineForColumns(A, false);
    GBEngine kept = engineForColumns(G, false);
    for (int j = 0; j < G.ncols(); j++) CHECK(full.contains(G.cols[j]));
    for (int j = 0; j < A.ncols(); j++) CHECK(kept.contains(A.cols[j]));
    for (int j = 0; j < G.ncols(); j++) {
      GBEngine others(F, false);
      for (int l = 0; l < G.ncols(); l++)
        if (l != j)
          others.feed(G.cols[l], G.source.twists[l] + G.shift);
      CHECK(!others.contains(G.cols[j]));
    }
  }
}

TEST_CASE("membership engine rejects non-members") {
  RingPtr S = testutil::standardRing({"x", "y"});
  Polynomial x = var(S, 0), y = var(S, 1);
  GBEngine eng(FreeModule{S, {Multidegree::zero(1)}}, false);
  eng.feed({x * x}, {2});
  eng.feed({x * y}, {2});
  CHECK(eng.contains({x * x * y + x * y * y}));
  CHECK(!eng.contains({y * y}));
  CHECK(!eng.contains({x}));
  CHECK(eng.contains({Polynomial::zero(S)}));
}
