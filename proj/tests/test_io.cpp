#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "mbgg/io.hpp"
#include "mbgg/resolution.hpp"
#include "util.hpp"

using namespace mbgg;

namespace {

Polynomial var(const RingPtr& S, int i) { return Polynomial::variable(S, i); }

bool polyEq(const Polynomial& a, const Polynomial& b) { return (a - b).isZero(); }

PresentedModule cyclicQuotient(const RingPtr& S,
                               const std::vector<Polynomial>& ideal) {
  FreeModule F{S, {Multidegree::zero(S->degreeRank())}};
  GradedMatrix rel{F, FreeModule{S, {}}, Multidegree::zero(S->degreeRank()), {}};
  for (const Polynomial& f : ideal) {
    rel.source.twists.push_back(f.degree());
    rel.cols.push_back({f});
  }
  rel.validate();
  return {F, rel};
}

bool matrixEq(const GradedMatrix& a, const GradedMatrix& b) {
  if (a.target.twists != b.target.twists || a.source.twists != b.source.twists ||
      a.shift != b.shift)
    return false;
  for (int j = 0; j < a.ncols(); j++)
    for (int i = 0; i < a.rows(); i++)
      if (!polyEq(a.entry(i, j), b.entry(i, j))) return false;
  return true;
}

bool ematrixEq(const EMatrix& a, const EMatrix& b) {
  if (a.target.twists != b.target.twists || a.source.twists != b.source.twists ||
      a.shift != b.shift)
    return false;
  for (int j = 0; j < a.ncols(); j++)
    for (int i = 0; i < a.rows(); i++)
      if (a.entry(i, j) != b.entry(i, j)) return false;
  return true;
}

}  // namespace

TEST_CASE("polynomial expressions parse and round trip") {
  RingPtr S = testutil::hirzebruch(3);

  SECTION("string output re-parses to the same polynomial") {
    std::vector<Polynomial> samples = {
        Polynomial::zero(S),
        Polynomial::one(S),
        var(S, 0) * var(S, 0) - var(S, 2).scaled(Scalar(3)),
        var(S, 1) * var(S, 3) + Polynomial::constant(S, Scalar(mpq_class(3, 2))),
        -var(S, 0) + var(S, 1).scaled(Scalar(mpq_class(-7, 5))),
        (var(S, 0) + var(S, 2)) * (var(S, 0) + var(S, 2)),
    };
    for (const Polynomial& p : samples)
      CHECK(polyEq(parsePolynomial(S, p.str()), p));
  }

  SECTION("grammar details") {
    CHECK(polyEq(parsePolynomial(S, "x_1*x_0"), var(S, 0) * var(S, 1)));
    CHECK(polyEq(parsePolynomial(S, "x_0^3"), var(S, 0) * var(S, 0) * var(S, 0)));
    CHECK(polyEq(parsePolynomial(S, " 2 * x_0 - 3 "),
                 var(S, 0).scaled(Scalar(2)) - Polynomial::constant(S, Scalar(3))));
    CHECK(polyEq(parsePolynomial(S, "1/2*x_3+x_3"),
                 var(S, 3).scaled(Scalar(mpq_class(3, 2)))));
    CHECK(parsePolynomial(S, "0").isZero());
    CHECK(polyEq(parsePolynomial(S, "-x_0"), -var(S, 0)));
  }

  SECTION("malformed expressions are rejected") {
    CHECK_THROWS_AS(parsePolynomial(S, "z"), IoError);
    CHECK_THROWS_AS(parsePolynomial(S, "x_0 x_1"), IoError);
    CHECK_THROWS_AS(parsePolynomial(S, "x_0^"), IoError);
    CHECK_THROWS_AS(parsePolynomial(S, "2/0"), IoError);
    CHECK_THROWS_AS(parsePolynomial(S, ""), IoError);
    CHECK_THROWS_AS(parsePolynomial(S, "x_0+"), IoError);
    CHECK_THROWS_AS(parsePolynomial(S, "x_0?"), IoError);
  }
}

TEST_CASE("exterior expressions parse with sign conventions") {
  RingPtr S = testutil::hirzebruch(3);
  ExtPtr E = dualRingToric(S);

  CHECK(parseExtElement(E, "e_0*e_1") == ExtElement::term(E, 0b11u, Scalar(1)));
  CHECK(parseExtElement(E, "e_1*e_0") == ExtElement::term(E, 0b11u, Scalar(-1)));
  CHECK(parseExtElement(E, "e_0*e_0").isZero());
  CHECK(parseExtElement(E, "e_3*e_1*e_0") ==
        ExtElement::term(E, 0b1011u, Scalar(-1)));
  CHECK(parseExtElement(E, "2*e_2-e_0") ==
        ExtElement::variable(E, 2).scaled(Scalar(2)) - ExtElement::variable(E, 0));
  CHECK(parseExtElement(E, "0").isZero());

  ExtElement w = ExtElement::term(E, 0b110u, Scalar(mpq_class(5, 3))) +
                 ExtElement::one(E);
  CHECK(parseExtElement(E, w.str()) == w);

  CHECK_THROWS_AS(parseExtElement(E, "x_0"), IoError);
  CHECK_THROWS_AS(parseExtElement(E, "e_0*"), IoError);
}

TEST_CASE("scalar strings round trip over both fields") {
  FieldSpec q = FieldSpec::rationals();
  for (const Scalar& a : {Scalar(0), Scalar(-7), Scalar(mpq_class(3, 2)),
                          Scalar(mpq_class(-22, 7))})
    CHECK(scalarFromString(q, scalarToString(q, a), "t") == a);

  FieldSpec f = FieldSpec::prime(101);
  for (long v : {0L, 1L, 50L, 51L, 100L, -1L}) {
    Scalar a = f.fromLong(v);
    CHECK(scalarFromString(f, scalarToString(f, a), "t") == a);
  }
  CHECK(scalarFromString(f, "1/2", "t") == f.div(f.one(), f.fromLong(2)));

  CHECK_THROWS_AS(scalarFromString(q, "3/0", "t"), IoError);
  CHECK_THROWS_AS(scalarFromString(q, "abc", "t"), IoError);
}

TEST_CASE("ring JSON round trips") {
  SECTION("multigraded ring over the rationals") {
    RingPtr S = testutil::hirzebruch(3);
    RingPtr T = ringFromJson(ringToJson(S));
    CHECK(S->sameAs(*T));
  }

  SECTION("prime field and explicit positivity functional survive") {
    GradingSpec g;
    g.rank = 2;
    g.varDegrees = {Multidegree{1, 0}, Multidegree{0, 1}};
    g.theta = std::vector<int>{1, 1};
    RingPtr S = makePolyRing(FieldSpec::prime(101), {"u", "v"}, g);
    Json j = ringToJson(S);
    CHECK(j["field"]["Fp"] == 101);
    CHECK(j["theta"] == std::vector<int>{1, 1});
    RingPtr T = ringFromJson(j);
    CHECK(S->sameAs(*T));
    CHECK(T->field().characteristic() == 101);
  }

  SECTION("malformed ring documents are rejected") {
    Json good = ringToJson(testutil::hirzebruch(3));
    Json j = good;
    j["schema"] = 2;
    CHECK_THROWS_AS(ringFromJson(j), IoError);
    j = good;
    j.erase("vars");
    CHECK_THROWS_AS(ringFromJson(j), IoError);
    j = good;
    j["field"] = "RR";
    CHECK_THROWS_AS(ringFromJson(j), IoError);
    j = good;
    j["degrees"][1] = {-3, 1, 0};
    CHECK_THROWS_AS(ringFromJson(j), IoError);
  }
}

TEST_CASE("builtin ring shorthands") {
  RingPtr h = builtinRing("hirzebruch 3");
  CHECK(h->nvars() == 4);
  CHECK(h->varDegree(1) == Multidegree{-3, 1});
  CHECK(h->sameAs(*testutil::hirzebruch(3)));

  RingPtr w = builtinRing("weighted-projective [1,1,1,2,2]");
  CHECK(w->nvars() == 5);
  CHECK(w->varDegree(3) == Multidegree{2});
  CHECK(w->varDegree(0) == Multidegree{1});

  RingPtr s = builtinRing("standard 1");
  CHECK(s->nvars() == 2);
  CHECK(s->varDegree(0) == Multidegree{1});
  CHECK(s->varNames() == std::vector<std::string>{"x_0", "x_1"});

  CHECK_THROWS_AS(builtinRing("standard"), IoError);
  CHECK_THROWS_AS(builtinRing("weighted-projective [0]"), IoError);
  CHECK_THROWS_AS(builtinRing("weighted-projective"), IoError);
  CHECK_THROWS_AS(builtinRing("banana 2"), IoError);
}

TEST_CASE("matrix and module JSON round trips") {
  RingPtr S = testutil::hirzebruch(3);
  Polynomial x0 = var(S, 0), x1 = var(S, 1), x2 = var(S, 2), x3 = var(S, 3);

  SECTION("graded matrix with a shift") {
    FreeModule tgt{S, {Multidegree{0, 0}, Multidegree{1, 0}}};
    FreeModule src{S, {Multidegree{0, 1}, Multidegree{1, 1}}};
    GradedMatrix m = GradedMatrix::zero(tgt, src, Multidegree{0, 0});
    m.entry(0, 0) = x3;
    m.entry(1, 0) = Polynomial::zero(S);
    m.entry(0, 1) = x0 * x3;
    m.entry(1, 1) = x3;
    m.validate();
    CHECK(matrixEq(matrixFromJson(S, matrixToJson(m)), m));
  }

  SECTION("module with relations") {
    PresentedModule M = cyclicQuotient(S, {x0, x1 * x1});
    PresentedModule N = moduleFromJson(S, moduleToJson(M));
    CHECK(N.gens.twists == M.gens.twists);
    CHECK(matrixEq(N.relations, M.relations));
  }

  SECTION("free module omits the relations field") {
    PresentedModule F = PresentedModule::fromFree(
        FreeModule{S, {Multidegree{1, 0}, Multidegree{0, 0}}});
    Json j = moduleToJson(F);
    CHECK(!j.contains("relations"));
    PresentedModule G = moduleFromJson(S, j);
    CHECK(G.isFree());
    CHECK(G.gens.twists == F.gens.twists);
  }

  SECTION("structural problems are IoError, algebraic ones are AlgebraError") {
    PresentedModule M = cyclicQuotient(S, {x0});
    Json j = moduleToJson(M);
    Json bad = j;
    bad["gens"][0] = {0, 0, 0};
    CHECK_THROWS_AS(moduleFromJson(S, bad), IoError);
    bad = j;
    bad["relations"]["cols"].push_back({"x_2"});
    CHECK_THROWS_AS(moduleFromJson(S, bad), IoError);
    bad = j;
    bad["relations"]["cols"][0][0] = "x_0+x_3";
    CHECK_THROWS_AS(moduleFromJson(S, bad), AlgebraError);
    bad = j;
    bad["relations"]["cols"][0][0] = "x_0+oops";
    CHECK_THROWS_AS(moduleFromJson(S, bad), IoError);
  }
}

TEST_CASE("complex JSON round trips through a resolution") {
  RingPtr S = testutil::standardRing({"x_0", "x_1"});
  PresentedModule k = cyclicQuotient(S, {var(S, 0), var(S, 1)});
  FComplex C = minimalFreeResolution(k, 2);

  FComplex D = complexFromJson(S, complexToJson(C));
  CHECK(D.lo() == C.lo());
  CHECK(D.hi() == C.hi());
  for (int i = C.lo(); i <= C.hi(); i++)
    CHECK(D.term(i).twists == C.term(i).twists);
  for (int i = C.lo() + 1; i <= C.hi(); i++)
    CHECK(matrixEq(D.diff(i), C.diff(i)));

  Json j = complexToJson(C);
  j["diffs"][0]["cols"][0][0] = "x_0^2";
  CHECK_THROWS_AS(complexFromJson(S, j), AlgebraError);
  j = complexToJson(C);
  j["terms"][1]["index"] = 0;
  CHECK_THROWS_AS(complexFromJson(S, j), IoError);
}

TEST_CASE("differential module JSON round trips") {
  RingPtr S = testutil::standardRing({"x", "y"});
  Polynomial x = var(S, 0), y = var(S, 1);

  SECTION("free underlying module") {
    FreeModule F{S, {Multidegree::zero(1), Multidegree::zero(1)}};
    GradedMatrix del{F, F, {2}, {{x * y, y * y}, {-(x * x), -(x * y)}}};
    DifferentialModule D = mkFreeDM(del);
    Json j = dmToJson(D);
    CHECK(!j.contains("relations"));
    DifferentialModule E = dmFromJson(S, j);
    CHECK(E.degree == D.degree);
    CHECK(E.underlying.gens.twists == D.underlying.gens.twists);
    CHECK(matrixEq(E.del, D.del));
  }

  SECTION("presented underlying module") {
    PresentedModule k = cyclicQuotient(S, {x, y});
    DifferentialModule D = mkDifferentialModule(
        GradedMatrix::zero(k.gens, k.gens, Multidegree{0}), k);
    DifferentialModule E = dmFromJson(S, dmToJson(D));
    CHECK(matrixEq(E.underlying.relations, D.underlying.relations));
    CHECK(matrixEq(E.del, D.del));
  }

  SECTION("a non-square-zero differential fails algebraically") {
    Json j;
    j["degree"] = {1};
    j["twists"] = {{0}, {0}};
    j["del"] = Json::array({Json::array({"x", "0"}), Json::array({"0", "y"})});
    CHECK_THROWS_AS(dmFromJson(S, j), AlgebraError);
  }
}

TEST_CASE("exterior-side JSON round trips") {
  RingPtr S = testutil::hirzebruch(3);
  ExtPtr E = dualRingToric(S);

  SECTION("dual differential module") {
    PresentedModule M = cyclicQuotient(S, {var(S, 0)});
    ToricRRResult R = toricRRLabeled(M);
    Json j = edmToJson(R.dm);
    DifferentialEModule D = edmFromJson(E, j);
    CHECK(D.gens.twists == R.dm.gens.twists);
    CHECK(ematrixEq(D.del, R.dm.del));
  }

  SECTION("graded exterior module, degreewise form") {
    EFreeModule F{E, {Multidegree{0, 0, 0}}};
    EMatrix none = EMatrix::zero(F, EFreeModule{E, {}}, Multidegree{0, 0, 0});
    EModuleGraded N = gradedPiecesOfEModule(F, none);
    EModuleGraded P = emoduleFromJson(E, emoduleToJson(N));
    CHECK(P.dims == N.dims);
    CHECK(P.act == N.act);
    CHECK(P.totalDim() == 16);
  }

  SECTION("graded exterior module, presentation form") {
    Json j;
    j["gens"] = {{0, 0, 0}};
    EModuleGraded N = emoduleFromJson(E, j);
    CHECK(N.totalDim() == 16);

    Json q;
    q["gens"] = {{0, 0, 0}};
    q["relations"]["source"] = {{-1, 0, -1}};
    q["relations"]["cols"] = {{"e_0"}};
    EModuleGraded Q = emoduleFromJson(E, q);
    CHECK(Q.totalDim() == 8);
  }

  SECTION("malformed exterior documents are rejected") {
    Json j;
    j["dims"] = {{{"degree", {0, 0, 0}}, {"dim", 0}}};
    CHECK_THROWS_AS(emoduleFromJson(E, j), IoError);
    Json q;
    q["twists"] = {{0, 0, 0}};
    q["del"] = Json::array({Json::array({"e_0", "e_1"})});
    CHECK_THROWS_AS(edmFromJson(E, q), IoError);
  }
}

TEST_CASE("strand results serialize with their kernel data") {
  RingPtr S = testutil::hirzebruch(3);
  PresentedModule M = cyclicQuotient(S, {var(S, 0), var(S, 1) * var(S, 1)});
  StrandResult R = stronglyLinearStrand(M);
  Json j = strandToJson(R);

  CHECK(j["sourceDegree"] == Json::array({0, 0}));
  bool found = false;
  for (const Json& e : j["kernelDims"])
    if (e["degree"] == Json::array({0, 0, 0}) && e["dim"] == 1) found = true;
  CHECK(found);

  FComplex C = complexFromJson(S, j["strand"]);
  CHECK(C.term(0).twists == R.strand.term(0).twists);
  CHECK(C.term(1).twists == R.strand.term(1).twists);
  CHECK(matrixEq(C.diff(1), R.strand.diff(1)));
}

TEST_CASE("text rendering matches the aligned table format") {
  RingPtr S = testutil::standardRing({"x_0", "x_1"});
  PresentedModule k = cyclicQuotient(S, {var(S, 0), var(S, 1)});

  SECTION("matrix rows carry brace-degree labels") {
    FComplex C = minimalFreeResolution(k, 2);
    CHECK(renderMatrixText(C.diff(1)) == "  {0} | x_0 x_1 |\n");
    CHECK(renderMatrixText(C.diff(2)) ==
          "  {1} | x_1  |\n"
          "  {1} | -x_0 |\n");
  }

  SECTION("complex rendering lists terms then maps") {
    RingPtr H = testutil::hirzebruch(3);
    PresentedModule M = cyclicQuotient(H, {var(H, 0), var(H, 1) * var(H, 1)});
    StrandResult R = stronglyLinearStrand(M);
    CHECK(renderComplexText(R.strand) ==
          "complex with terms in [0, 1]\n"
          "term 0: rank 1  {0, 0}\n"
          "term 1: rank 1  {1, 0}\n"
          "map 1 -> 0:\n"
          "  {0, 0} | x_0 |\n");
  }

  SECTION("exterior differential modules render with omega twists") {
    RingPtr H = testutil::hirzebruch(3);
    PresentedModule M = cyclicQuotient(H, {var(H, 0)});
    ToricRRResult R = toricRRLabeled(M);
    CHECK(renderEDMText(R.dm) ==
          "differential module of rank 5 over the dual exterior algebra\n"
          "generators: {-4, 3, 4} {-1, 2, 4} {-1, 3, 4} {-1, 3, 4} {0, 2, 4}\n"
          "differential:\n"
          "  {-4, 3, 4} | 0 e_1 0 0 0 |\n"
          "  {-1, 2, 4} | 0 0   0 0 0 |\n"
          "  {-1, 3, 4} | 0 e_3 0 0 0 |\n"
          "  {-1, 3, 4} | 0 0   0 0 0 |\n"
          "  {0, 2, 4}  | 0 e_2 0 0 0 |\n");
  }

  SECTION("zero-column matrices still render their rows") {
    FreeModule F{S, {Multidegree{0}}};
    GradedMatrix m{F, FreeModule{S, {}}, Multidegree{0}, {}};
    CHECK(renderMatrixText(m) == "  {0} | |\n");
  }
}

TEST_CASE("schema gates and degree lists") {
  Json j;
  j["schema"] = 1;
  CHECK_NOTHROW(requireSchema(j, "doc"));
  j["schema"] = 3;
  CHECK_THROWS_AS(requireSchema(j, "doc"), IoError);
  CHECK_THROWS_AS(requireSchema(Json::object(), "doc"), IoError);

  Json degs = Json::array({Json::array({1, 0}), Json::array({0, 1})});
  std::vector<Multidegree> v = twistsFromJson(degs, 2, "w");
  REQUIRE(v.size() == 2);
  CHECK(v[0] == Multidegree{1, 0});
  CHECK(v[1] == Multidegree{0, 1});
  CHECK_THROWS_AS(twistsFromJson(degs, 3, "w"), IoError);

  try {
    twistsFromJson(degs, 3, "window");
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("window[0]") != std::string::npos);
  }
}
