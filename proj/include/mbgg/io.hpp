#pragma once

// Serialization and rendering: JSON readers/writers (schema version 1) for
// rings, modules, matrices, complexes, differential modules and their
// exterior-algebra counterparts; a small expression grammar for polynomial
// and exterior entries; and plain-text table rendering of graded matrices.

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mbgg/bgg.hpp"
#include "mbgg/diffmod.hpp"
#include "mbgg/module.hpp"
#include "mbgg/pieces.hpp"
#include "mbgg/polynomial.hpp"
#include "mbgg/ring.hpp"
#include "mbgg/strand.hpp"

namespace mbgg {

using Json = nlohmann::json;

// File-format and schema problems.  Distinct from AlgebraError so callers can
// map the two onto different exit codes.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// JSON field access with error messages that name the offending field.
// ---------------------------------------------------------------------------

inline const Json& getField(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object())
    throw IoError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end())
    throw IoError(where + ": missing field \"" + key + "\"");
  return *it;
}

inline int getInt(const Json& j, const std::string& where) {
  if (!j.is_number_integer())
    throw IoError(where + ": expected an integer");
  return j.get<int>();
}

inline std::string getString(const Json& j, const std::string& where) {
  if (!j.is_string())
    throw IoError(where + ": expected a string");
  return j.get<std::string>();
}

inline void requireSchema(const Json& j, const std::string& where) {
  int v = getInt(getField(j, "schema", where), where + ".schema");
  if (v != kSchemaVersion)
    throw IoError(where + ".schema: unsupported version " + std::to_string(v) +
                  " (this build reads version " + std::to_string(kSchemaVersion) + ")");
}

inline Json loadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw IoError("cannot open file: " + path);
  try {
    return Json::parse(in, nullptr, /*allow_exceptions=*/true, /*ignore_comments=*/true);
  } catch (const Json::parse_error& e) {
    throw IoError("JSON parse error in " + path + ": " + e.what());
  }
}

inline void writeTextFile(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out)
    throw IoError("cannot open file for writing: " + path);
  out << body;
  if (!out)
    throw IoError("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Multidegrees.
// ---------------------------------------------------------------------------

inline Json degreeToJson(const Multidegree& d) {
  Json a = Json::array();
  for (int i = 0; i < d.rank(); i++) a.push_back(d[i]);
  return a;
}

inline Multidegree degreeFromJson(const Json& j, int rank, const std::string& where) {
  if (!j.is_array())
    throw IoError(where + ": expected a degree vector (array of integers)");
  if (static_cast<int>(j.size()) != rank)
    throw IoError(where + ": degree vector has length " + std::to_string(j.size()) +
                  ", expected " + std::to_string(rank));
  std::vector<int> c;
  c.reserve(j.size());
  for (size_t i = 0; i < j.size(); i++)
    c.push_back(getInt(j[i], where + "[" + std::to_string(i) + "]"));
  return Multidegree(std::move(c));
}

inline Json twistsToJson(const std::vector<Multidegree>& ts) {
  Json a = Json::array();
  for (const Multidegree& t : ts) a.push_back(degreeToJson(t));
  return a;
}

inline std::vector<Multidegree> twistsFromJson(const Json& j, int rank,
                                               const std::string& where) {
  if (!j.is_array())
    throw IoError(where + ": expected an array of degree vectors");
  std::vector<Multidegree> out;
  out.reserve(j.size());
  for (size_t i = 0; i < j.size(); i++)
    out.push_back(degreeFromJson(j[i], rank, where + "[" + std::to_string(i) + "]"));
  return out;
}

// ---------------------------------------------------------------------------
// Scalars.  Serialized as strings: "5", "-3", "7/2".
// ---------------------------------------------------------------------------

inline std::string scalarToString(const FieldSpec& f, const Scalar& a) {
  return f.show(a);
}

inline Scalar scalarFromString(const FieldSpec& f, const std::string& s,
                               const std::string& where) {
  size_t slash = s.find('/');
  try {
    if (slash == std::string::npos)
      return f.normalize(Scalar(mpz_class(s)));
    mpz_class num(s.substr(0, slash));
    mpz_class den(s.substr(slash + 1));
    if (den == 0)
      throw IoError(where + ": zero denominator in scalar \"" + s + "\"");
    mpq_class q(num, den);
    q.canonicalize();
    return f.normalize(q);
  } catch (const std::invalid_argument&) {
    throw IoError(where + ": bad scalar literal \"" + s + "\"");
  }
}

// ---------------------------------------------------------------------------
// Expression grammar shared by polynomial and exterior entries.
//
//   expression := ['-'] term (('+' | '-') term)*
//   term       := factor ('*' factor)*
//   factor     := INT ['/' INT] | IDENT ['^' INT]
//
// Identifiers must be variable names of the ring or algebra at hand.
// ---------------------------------------------------------------------------

namespace iodetail {

struct Token {
  enum Kind { End, Plus, Minus, Star, Caret, Slash, Int, Ident } kind = End;
  std::string text;
};

class Lexer {
 public:
  Lexer(const std::string& src, std::string where)
      : src_(src), where_(std::move(where)) {
    advance();
  }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw IoError(where_ + ": " + msg + " in \"" + src_ + "\"");
  }

 private:
  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      pos_++;
    if (pos_ >= src_.size()) {
      tok_ = {Token::End, ""};
      return;
    }
    char c = src_[pos_];
    switch (c) {
      case '+': tok_ = {Token::Plus, "+"}; pos_++; return;
      case '-': tok_ = {Token::Minus, "-"}; pos_++; return;
      case '*': tok_ = {Token::Star, "*"}; pos_++; return;
      case '^': tok_ = {Token::Caret, "^"}; pos_++; return;
      case '/': tok_ = {Token::Slash, "/"}; pos_++; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
        pos_++;
      tok_ = {Token::Int, src_.substr(start, pos_ - start)};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        pos_++;
      tok_ = {Token::Ident, src_.substr(start, pos_ - start)};
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& src_;
  std::string where_;
  size_t pos_ = 0;
  Token tok_;
};

inline int parseExponent(Lexer& lx) {
  if (lx.peek().kind != Token::Caret) return 1;
  lx.take();
  if (lx.peek().kind != Token::Int) lx.fail("expected an integer exponent after '^'");
  int e = std::stoi(lx.take().text);
  if (e < 0) lx.fail("negative exponent");
  return e;
}

// Element = value type with one(), scaled-by-rational, multiply, add/sub, and
// a variable lookup.  Instantiated for Polynomial and ExtElement below.
template <class Ops>
typename Ops::Element parseExpression(Ops ops, const std::string& src,
                                      const std::string& where) {
  Lexer lx(src, where);
  using Elem = typename Ops::Element;

  auto parseFactor = [&](Elem& acc) {
    const Token& t = lx.peek();
    if (t.kind == Token::Int) {
      mpz_class num(lx.take().text);
      mpz_class den(1);
      if (lx.peek().kind == Token::Slash) {
        lx.take();
        if (lx.peek().kind != Token::Int) lx.fail("expected an integer denominator");
        den = mpz_class(lx.take().text);
        if (den == 0) lx.fail("zero denominator");
      }
      mpq_class q(num, den);
      q.canonicalize();
      acc = ops.scale(acc, q);
      return;
    }
    if (t.kind == Token::Ident) {
      std::string name = lx.take().text;
      int idx = ops.variableIndex(name);
      if (idx < 0) lx.fail("unknown variable \"" + name + "\"");
      int e = parseExponent(lx);
      for (int k = 0; k < e; k++) acc = ops.mulVariable(acc, idx);
      return;
    }
    lx.fail("expected a coefficient or variable");
  };

  auto parseTerm = [&]() {
    Elem acc = ops.one();
    parseFactor(acc);
    while (lx.peek().kind == Token::Star) {
      lx.take();
      parseFactor(acc);
    }
    return acc;
  };

  Elem result = ops.zero();
  bool negate = false;
  if (lx.peek().kind == Token::Minus) {
    lx.take();
    negate = true;
  } else if (lx.peek().kind == Token::Plus) {
    lx.take();
  }
  while (true) {
    Elem t = parseTerm();
    result = negate ? ops.sub(result, t) : ops.add(result, t);
    if (lx.peek().kind == Token::Plus) {
      lx.take();
      negate = false;
    } else if (lx.peek().kind == Token::Minus) {
      lx.take();
      negate = true;
    } else {
      break;
    }
  }
  if (lx.peek().kind != Token::End) lx.fail("trailing input");
  return result;
}

struct PolyOps {
  using Element = Polynomial;
  RingPtr S;
  std::map<std::string, int> names;

  explicit PolyOps(RingPtr ring) : S(std::move(ring)) {
    for (int i = 0; i < S->nvars(); i++) names[S->varNames()[i]] = i;
  }
  Polynomial zero() const { return Polynomial::zero(S); }
  Polynomial one() const { return Polynomial::one(S); }
  int variableIndex(const std::string& n) const {
    auto it = names.find(n);
    return it == names.end() ? -1 : it->second;
  }
  Polynomial scale(const Polynomial& p, const Scalar& c) const {
    return p.scaled(S->field().normalize(c));
  }
  Polynomial mulVariable(const Polynomial& p, int i) const {
    return p * Polynomial::variable(S, i);
  }
  Polynomial add(const Polynomial& a, const Polynomial& b) const { return a + b; }
  Polynomial sub(const Polynomial& a, const Polynomial& b) const { return a - b; }
};

struct ExtOps {
  using Element = ExtElement;
  ExtPtr E;
  std::map<std::string, int> names;

  explicit ExtOps(ExtPtr alg) : E(std::move(alg)) {
    for (int i = 0; i < E->nvars(); i++) names[E->varNames()[i]] = i;
  }
  ExtElement zero() const { return ExtElement::zero(E); }
  ExtElement one() const { return ExtElement::one(E); }
  int variableIndex(const std::string& n) const {
    auto it = names.find(n);
    return it == names.end() ? -1 : it->second;
  }
  ExtElement scale(const ExtElement& p, const Scalar& c) const {
    return p.scaled(E->field().normalize(c));
  }
  ExtElement mulVariable(const ExtElement& p, int i) const {
    return extMultiply(p, ExtElement::variable(E, i));
  }
  ExtElement add(const ExtElement& a, const ExtElement& b) const { return a + b; }
  ExtElement sub(const ExtElement& a, const ExtElement& b) const { return a - b; }
};

}  // namespace iodetail

inline Polynomial parsePolynomial(const RingPtr& S, const std::string& src,
                                  const std::string& where = "polynomial") {
  return iodetail::parseExpression(iodetail::PolyOps(S), src, where);
}

inline ExtElement parseExtElement(const ExtPtr& E, const std::string& src,
                                  const std::string& where = "exterior element") {
  return iodetail::parseExpression(iodetail::ExtOps(E), src, where);
}

// ---------------------------------------------------------------------------
// Rings.
// ---------------------------------------------------------------------------

inline Json ringToJson(const RingPtr& S) {
  Json j;
  j["schema"] = kSchemaVersion;
  if (S->field().isRational())
    j["field"] = "QQ";
  else
    j["field"] = Json{{"Fp", S->field().characteristic()}};
  j["vars"] = S->varNames();
  Json degs = Json::array();
  for (int i = 0; i < S->nvars(); i++) degs.push_back(degreeToJson(S->varDegree(i)));
  j["degrees"] = degs;
  if (S->grading().theta)
    j["theta"] = *S->grading().theta;
  return j;
}

inline FieldSpec fieldFromJson(const Json& j, const std::string& where) {
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s == "QQ") return FieldSpec::rationals();
    throw IoError(where + ": unknown field \"" + s + "\" (use \"QQ\" or {\"Fp\": p})");
  }
  if (j.is_object() && j.contains("Fp"))
    return FieldSpec::prime(getInt(j["Fp"], where + ".Fp"));
  throw IoError(where + ": expected \"QQ\" or {\"Fp\": p}");
}

inline RingPtr ringFromJson(const Json& j, const std::string& where = "ring") {
  requireSchema(j, where);
  FieldSpec f = fieldFromJson(getField(j, "field", where), where + ".field");
  const Json& jv = getField(j, "vars", where);
  if (!jv.is_array() || jv.empty())
    throw IoError(where + ".vars: expected a nonempty array of variable names");
  std::vector<std::string> names;
  for (size_t i = 0; i < jv.size(); i++)
    names.push_back(getString(jv[i], where + ".vars[" + std::to_string(i) + "]"));

  const Json& jd = getField(j, "degrees", where);
  if (!jd.is_array() || jd.size() != names.size())
    throw IoError(where + ".degrees: expected one degree vector per variable");
  if (!jd[0].is_array() || jd[0].empty())
    throw IoError(where + ".degrees[0]: expected a nonempty degree vector");
  GradingSpec g;
  g.rank = static_cast<int>(jd[0].size());
  for (size_t i = 0; i < jd.size(); i++)
    g.varDegrees.push_back(
        degreeFromJson(jd[i], g.rank, where + ".degrees[" + std::to_string(i) + "]"));
  if (j.contains("theta")) {
    const Json& jt = j["theta"];
    if (!jt.is_array() || static_cast<int>(jt.size()) != g.rank)
      throw IoError(where + ".theta: expected an integer vector of length " +
                    std::to_string(g.rank));
    std::vector<int> th;
    for (size_t i = 0; i < jt.size(); i++)
      th.push_back(getInt(jt[i], where + ".theta[" + std::to_string(i) + "]"));
    g.theta = std::move(th);
  }
  return makePolyRing(f, std::move(names), std::move(g));
}

// Built-in ring shorthands:
//   "standard n"                    k[x_0..x_n], all degrees 1
//   "weighted-projective [w0,...]"  one variable per weight, degree w_i
//   "hirzebruch a"                  4 variables, degrees (1,0),(-a,1),(1,0),(0,1)
// All built-ins are over QQ; use a full ring object for other fields.
inline RingPtr builtinRing(const std::string& desc) {
  std::istringstream in(desc);
  std::string name;
  in >> name;
  std::string rest;
  std::getline(in, rest);
  size_t a = rest.find_first_not_of(" \t");
  rest = (a == std::string::npos) ? std::string() : rest.substr(a);

  auto xs = [](int count) {
    std::vector<std::string> names;
    for (int i = 0; i < count; i++) names.push_back("x_" + std::to_string(i));
    return names;
  };

  if (name == "standard") {
    int n = 0;
    try {
      n = std::stoi(rest);
    } catch (const std::exception&) {
      throw IoError("builtin \"standard\" needs an integer: standard n");
    }
    if (n < 0) throw IoError("builtin \"standard\": n must be >= 0");
    GradingSpec g;
    g.rank = 1;
    g.varDegrees.assign(n + 1, Multidegree{1});
    return makePolyRing(FieldSpec::rationals(), xs(n + 1), std::move(g));
  }
  if (name == "weighted-projective") {
    Json w;
    try {
      w = Json::parse(rest);
    } catch (const Json::parse_error&) {
      throw IoError("builtin \"weighted-projective\" needs a weight list: "
                    "weighted-projective [1,1,2]");
    }
    if (!w.is_array() || w.empty())
      throw IoError("builtin \"weighted-projective\": weights must be a nonempty array");
    GradingSpec g;
    g.rank = 1;
    for (size_t i = 0; i < w.size(); i++) {
      int wi = getInt(w[i], "weights[" + std::to_string(i) + "]");
      if (wi <= 0) throw IoError("builtin \"weighted-projective\": weights must be positive");
      g.varDegrees.push_back(Multidegree{wi});
    }
    return makePolyRing(FieldSpec::rationals(), xs(static_cast<int>(w.size())),
                        std::move(g));
  }
  if (name == "hirzebruch") {
    int aa = 0;
    try {
      aa = std::stoi(rest);
    } catch (const std::exception&) {
      throw IoError("builtin \"hirzebruch\" needs an integer: hirzebruch a");
    }
    GradingSpec g;
    g.rank = 2;
    g.varDegrees = {Multidegree{1, 0}, Multidegree{-aa, 1}, Multidegree{1, 0},
                    Multidegree{0, 1}};
    return makePolyRing(FieldSpec::rationals(), xs(4), std::move(g));
  }
  throw IoError("unknown builtin ring \"" + name +
                "\" (known: standard, weighted-projective, hirzebruch)");
}

// A ring given either as a builtin shorthand string or as a full JSON object.
inline RingPtr ringFromAny(const Json& j, const std::string& where = "ring") {
  if (j.is_string()) return builtinRing(j.get<std::string>());
  if (j.is_object()) return ringFromJson(j, where);
  throw IoError(where + ": expected a ring object or a builtin string");
}

// ---------------------------------------------------------------------------
// Graded matrices, presented modules, complexes.
// ---------------------------------------------------------------------------

inline Json polyColsToJson(const GradedMatrix& m) {
  Json cols = Json::array();
  for (int j = 0; j < m.ncols(); j++) {
    Json col = Json::array();
    for (int i = 0; i < m.rows(); i++) col.push_back(m.entry(i, j).str());
    cols.push_back(std::move(col));
  }
  return cols;
}

inline Json matrixToJson(const GradedMatrix& m) {
  Json j;
  j["target"] = twistsToJson(m.target.twists);
  j["source"] = twistsToJson(m.source.twists);
  j["shift"] = degreeToJson(m.shift);
  j["cols"] = polyColsToJson(m);
  return j;
}

inline std::vector<Vec> polyColsFromJson(const RingPtr& S, const Json& j, int rows,
                                         const std::string& where) {
  if (!j.is_array())
    throw IoError(where + ": expected an array of columns");
  std::vector<Vec> cols;
  for (size_t c = 0; c < j.size(); c++) {
    const Json& jc = j[c];
    std::string cw = where + "[" + std::to_string(c) + "]";
    if (!jc.is_array() || static_cast<int>(jc.size()) != rows)
      throw IoError(cw + ": expected " + std::to_string(rows) + " row entries");
    Vec col;
    for (size_t r = 0; r < jc.size(); r++) {
      std::string rw = cw + "[" + std::to_string(r) + "]";
      col.push_back(parsePolynomial(S, getString(jc[r], rw), rw));
    }
    cols.push_back(std::move(col));
  }
  return cols;
}

inline GradedMatrix matrixFromJson(const RingPtr& S, const Json& j,
                                   const std::string& where = "matrix") {
  int t = S->degreeRank();
  FreeModule target{S, twistsFromJson(getField(j, "target", where), t, where + ".target")};
  FreeModule source{S, twistsFromJson(getField(j, "source", where), t, where + ".source")};
  Multidegree shift = j.contains("shift")
                          ? degreeFromJson(j["shift"], t, where + ".shift")
                          : Multidegree::zero(t);
  std::vector<Vec> cols =
      polyColsFromJson(S, getField(j, "cols", where), target.rank(), where + ".cols");
  if (static_cast<int>(cols.size()) != source.rank())
    throw IoError(where + ".cols: expected " + std::to_string(source.rank()) +
                  " columns, got " + std::to_string(cols.size()));
  GradedMatrix m{std::move(target), std::move(source), std::move(shift), std::move(cols)};
  m.validate();
  return m;
}

inline Json moduleToJson(const PresentedModule& M) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["gens"] = twistsToJson(M.gens.twists);
  if (M.relations.ncols() > 0) {
    Json rel;
    rel["source"] = twistsToJson(M.relations.source.twists);
    rel["cols"] = polyColsToJson(M.relations);
    j["relations"] = std::move(rel);
  }
  return j;
}

inline PresentedModule moduleFromJson(const RingPtr& S, const Json& j,
                                      const std::string& where = "module") {
  int t = S->degreeRank();
  FreeModule gens{S, twistsFromJson(getField(j, "gens", where), t, where + ".gens")};
  if (!j.contains("relations") || j["relations"].is_null())
    return PresentedModule::fromFree(gens);
  const Json& jr = j["relations"];
  FreeModule source{S, twistsFromJson(getField(jr, "source", where + ".relations"), t,
                                      where + ".relations.source")};
  std::vector<Vec> cols = polyColsFromJson(S, getField(jr, "cols", where + ".relations"),
                                           gens.rank(), where + ".relations.cols");
  if (static_cast<int>(cols.size()) != source.rank())
    throw IoError(where + ".relations.cols: expected " + std::to_string(source.rank()) +
                  " columns, got " + std::to_string(cols.size()));
  GradedMatrix rel{gens, std::move(source), Multidegree::zero(t), std::move(cols)};
  PresentedModule M{std::move(gens), std::move(rel)};
  M.validate();
  return M;
}

inline Json complexToJson(const FComplex& C) {
  Json j;
  j["schema"] = kSchemaVersion;
  Json terms = Json::array();
  for (const auto& [i, F] : C.terms) {
    Json t;
    t["index"] = i;
    t["twists"] = twistsToJson(F.twists);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  Json diffs = Json::array();
  for (const auto& [i, d] : C.diffs) {
    Json e;
    e["index"] = i;
    e["shift"] = degreeToJson(d.shift);
    e["cols"] = polyColsToJson(d);
    diffs.push_back(std::move(e));
  }
  j["diffs"] = std::move(diffs);
  return j;
}

inline FComplex complexFromJson(const RingPtr& S, const Json& j,
                                const std::string& where = "complex") {
  int t = S->degreeRank();
  FComplex C;
  C.ring = S;
  const Json& jt = getField(j, "terms", where);
  if (!jt.is_array())
    throw IoError(where + ".terms: expected an array");
  for (size_t k = 0; k < jt.size(); k++) {
    std::string tw = where + ".terms[" + std::to_string(k) + "]";
    int idx = getInt(getField(jt[k], "index", tw), tw + ".index");
    if (C.terms.count(idx))
      throw IoError(tw + ".index: duplicate term index " + std::to_string(idx));
    C.terms.emplace(idx,
                    FreeModule{S, twistsFromJson(getField(jt[k], "twists", tw), t,
                                                 tw + ".twists")});
  }
  if (j.contains("diffs")) {
    const Json& jd = j["diffs"];
    if (!jd.is_array())
      throw IoError(where + ".diffs: expected an array");
    for (size_t k = 0; k < jd.size(); k++) {
      std::string dw = where + ".diffs[" + std::to_string(k) + "]";
      int idx = getInt(getField(jd[k], "index", dw), dw + ".index");
      if (C.diffs.count(idx))
        throw IoError(dw + ".index: duplicate differential index " + std::to_string(idx));
      FreeModule target = C.term(idx - 1);
      FreeModule source = C.term(idx);
      Multidegree shift = jd[k].contains("shift")
                              ? degreeFromJson(jd[k]["shift"], t, dw + ".shift")
                              : Multidegree::zero(t);
      std::vector<Vec> cols = polyColsFromJson(S, getField(jd[k], "cols", dw),
                                               target.rank(), dw + ".cols");
      if (static_cast<int>(cols.size()) != source.rank())
        throw IoError(dw + ".cols: expected " + std::to_string(source.rank()) +
                      " columns, got " + std::to_string(cols.size()));
      C.diffs.emplace(idx, GradedMatrix{std::move(target), std::move(source),
                                        std::move(shift), std::move(cols)});
    }
  }
  C.validate();
  return C;
}

// ---------------------------------------------------------------------------
// Differential modules.
// ---------------------------------------------------------------------------

inline Json dmToJson(const DifferentialModule& D) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["degree"] = degreeToJson(D.degree);
  j["twists"] = twistsToJson(D.underlying.gens.twists);
  if (!D.isFreeUnderlying()) {
    Json rel;
    rel["source"] = twistsToJson(D.underlying.relations.source.twists);
    rel["cols"] = polyColsToJson(D.underlying.relations);
    j["relations"] = std::move(rel);
  }
  j["del"] = polyColsToJson(D.del);
  return j;
}

inline DifferentialModule dmFromJson(const RingPtr& S, const Json& j,
                                     const std::string& where = "differential module") {
  int t = S->degreeRank();
  Multidegree a = degreeFromJson(getField(j, "degree", where), t, where + ".degree");
  FreeModule F{S, twistsFromJson(getField(j, "twists", where), t, where + ".twists")};

  PresentedModule U = PresentedModule::fromFree(F);
  if (j.contains("relations") && !j["relations"].is_null()) {
    const Json& jr = j["relations"];
    FreeModule src{S, twistsFromJson(getField(jr, "source", where + ".relations"), t,
                                     where + ".relations.source")};
    std::vector<Vec> cols = polyColsFromJson(
        S, getField(jr, "cols", where + ".relations"), F.rank(), where + ".relations.cols");
    if (static_cast<int>(cols.size()) != src.rank())
      throw IoError(where + ".relations.cols: expected " + std::to_string(src.rank()) +
                    " columns, got " + std::to_string(cols.size()));
    U = PresentedModule{F, GradedMatrix{F, std::move(src), Multidegree::zero(t),
                                        std::move(cols)}};
  }

  std::vector<Vec> del =
      polyColsFromJson(S, getField(j, "del", where), F.rank(), where + ".del");
  if (static_cast<int>(del.size()) != F.rank())
    throw IoError(where + ".del: expected " + std::to_string(F.rank()) +
                  " columns, got " + std::to_string(del.size()));
  GradedMatrix d{F, F, std::move(a), std::move(del)};
  return mkDifferentialModule(std::move(d), std::move(U));
}

// ---------------------------------------------------------------------------
// Exterior side.
// ---------------------------------------------------------------------------

inline Json extColsToJson(const EMatrix& m) {
  Json cols = Json::array();
  for (int j = 0; j < m.ncols(); j++) {
    Json col = Json::array();
    for (int i = 0; i < m.rows(); i++) col.push_back(m.entry(i, j).str());
    cols.push_back(std::move(col));
  }
  return cols;
}

inline Json edmToJson(const DifferentialEModule& D) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["twists"] = twistsToJson(D.gens.twists);
  j["del"] = extColsToJson(D.del);
  return j;
}

inline DifferentialEModule edmFromJson(const ExtPtr& E, const Json& j,
                                       const std::string& where = "differential module") {
  int t = E->degreeRank();
  EFreeModule F{E, twistsFromJson(getField(j, "twists", where), t, where + ".twists")};
  const Json& jd = getField(j, "del", where);
  if (!jd.is_array() || static_cast<int>(jd.size()) != F.rank())
    throw IoError(where + ".del: expected " + std::to_string(F.rank()) + " columns");
  Multidegree shift = Multidegree::zero(t);
  shift[t - 1] = -1;
  EMatrix d = EMatrix::zero(F, F, shift);
  for (int c = 0; c < F.rank(); c++) {
    const Json& jc = jd[c];
    std::string cw = where + ".del[" + std::to_string(c) + "]";
    if (!jc.is_array() || static_cast<int>(jc.size()) != F.rank())
      throw IoError(cw + ": expected " + std::to_string(F.rank()) + " row entries");
    for (int r = 0; r < F.rank(); r++) {
      std::string rw = cw + "[" + std::to_string(r) + "]";
      d.cols[c][r] = parseExtElement(E, getString(jc[r], rw), rw);
    }
  }
  DifferentialEModule D{std::move(F), std::move(d)};
  D.validate();
  return D;
}

inline Json emoduleToJson(const EModuleGraded& N) {
  Json j;
  j["schema"] = kSchemaVersion;
  Json dims = Json::array();
  for (const auto& [d, n] : N.dims) {
    Json e;
    e["degree"] = degreeToJson(d);
    e["dim"] = n;
    dims.push_back(std::move(e));
  }
  j["dims"] = std::move(dims);
  Json acts = Json::array();
  const FieldSpec& f = N.alg->field();
  for (const auto& [key, A] : N.act) {
    Json e;
    e["var"] = key.first;
    e["degree"] = degreeToJson(key.second);
    Json rows = Json::array();
    for (int r = 0; r < A.rows; r++) {
      Json row = Json::array();
      for (int c = 0; c < A.cols; c++) row.push_back(scalarToString(f, A.at(r, c)));
      rows.push_back(std::move(row));
    }
    e["entries"] = std::move(rows);
    acts.push_back(std::move(e));
  }
  j["actions"] = std::move(acts);
  return j;
}

// Accepts either a degreewise description {"dims": [...], "actions": [...]}
// or a presentation {"gens": [twists], "relations": {source, cols}} which is
// expanded into its graded pieces.
inline EModuleGraded emoduleFromJson(const ExtPtr& E, const Json& j,
                                     const std::string& where = "exterior module") {
  int t = E->degreeRank();
  if (j.contains("dims")) {
    EModuleGraded N;
    N.alg = E;
    const Json& jd = j["dims"];
    if (!jd.is_array())
      throw IoError(where + ".dims: expected an array");
    for (size_t k = 0; k < jd.size(); k++) {
      std::string dw = where + ".dims[" + std::to_string(k) + "]";
      Multidegree d = degreeFromJson(getField(jd[k], "degree", dw), t, dw + ".degree");
      int n = getInt(getField(jd[k], "dim", dw), dw + ".dim");
      if (n <= 0) throw IoError(dw + ".dim: dimensions must be positive");
      if (N.dims.count(d)) throw IoError(dw + ".degree: duplicate degree");
      N.dims.emplace(std::move(d), n);
    }
    if (j.contains("actions")) {
      const Json& ja = j["actions"];
      if (!ja.is_array())
        throw IoError(where + ".actions: expected an array");
      const FieldSpec& f = E->field();
      for (size_t k = 0; k < ja.size(); k++) {
        std::string aw = where + ".actions[" + std::to_string(k) + "]";
        int var = getInt(getField(ja[k], "var", aw), aw + ".var");
        if (var < 0 || var >= E->nvars())
          throw IoError(aw + ".var: variable index out of range");
        Multidegree d = degreeFromJson(getField(ja[k], "degree", aw), t, aw + ".degree");
        const Json& je = getField(ja[k], "entries", aw);
        if (!je.is_array())
          throw IoError(aw + ".entries: expected an array of rows");
        int rows = static_cast<int>(je.size());
        int cols = rows > 0 && je[0].is_array() ? static_cast<int>(je[0].size()) : 0;
        DenseMat A(rows, cols);
        for (int r = 0; r < rows; r++) {
          std::string rw = aw + ".entries[" + std::to_string(r) + "]";
          if (!je[r].is_array() || static_cast<int>(je[r].size()) != cols)
            throw IoError(rw + ": ragged matrix rows");
          for (int c = 0; c < cols; c++)
            A.at(r, c) = scalarFromString(
                f, getString(je[r][c], rw + "[" + std::to_string(c) + "]"),
                rw + "[" + std::to_string(c) + "]");
        }
        N.act[{var, std::move(d)}] = std::move(A);
      }
    }
    N.validate();
    return N;
  }
  if (j.contains("gens")) {
    EFreeModule gens{E, twistsFromJson(getField(j, "gens", where), t, where + ".gens")};
    EFreeModule src{E, {}};
    Multidegree z = Multidegree::zero(t);
    EMatrix rel = EMatrix::zero(gens, src, z);
    if (j.contains("relations") && !j["relations"].is_null()) {
      const Json& jr = j["relations"];
      src.twists = twistsFromJson(getField(jr, "source", where + ".relations"), t,
                                  where + ".relations.source");
      const Json& jc = getField(jr, "cols", where + ".relations");
      if (!jc.is_array() || static_cast<int>(jc.size()) != src.rank())
        throw IoError(where + ".relations.cols: expected " + std::to_string(src.rank()) +
                      " columns");
      rel = EMatrix::zero(gens, src, z);
      for (int c = 0; c < src.rank(); c++) {
        std::string cw = where + ".relations.cols[" + std::to_string(c) + "]";
        if (!jc[c].is_array() || static_cast<int>(jc[c].size()) != gens.rank())
          throw IoError(cw + ": expected " + std::to_string(gens.rank()) + " row entries");
        for (int r = 0; r < gens.rank(); r++) {
          std::string rw = cw + "[" + std::to_string(r) + "]";
          rel.cols[c][r] = parseExtElement(E, getString(jc[c][r], rw), rw);
        }
      }
    }
    return gradedPiecesOfEModule(gens, rel);
  }
  throw IoError(where + ": expected \"dims\"/\"actions\" or \"gens\"/\"relations\"");
}

inline Json strandToJson(const StrandResult& R) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["sourceDegree"] = degreeToJson(R.sourceDegree);
  Json kd = Json::array();
  for (const auto& [d, n] : R.kernelDims) {
    Json e;
    e["degree"] = degreeToJson(d);
    e["dim"] = n;
    kd.push_back(std::move(e));
  }
  j["kernelDims"] = std::move(kd);
  j["strand"] = complexToJson(R.strand);
  return j;
}

// ---------------------------------------------------------------------------
// Text rendering.  Matrices print one row per line: the target twist of the
// row in braces, then the entries, pipe-delimited and column-aligned:
//
//   {1, 0}  | x_0  0   |
//   {0, 1}  | x_1  x_0 |
// ---------------------------------------------------------------------------

inline std::string braceDegree(const Multidegree& d) {
  std::string s = "{";
  for (int i = 0; i < d.rank(); i++) {
    if (i) s += ", ";
    s += std::to_string(d[i]);
  }
  s += "}";
  return s;
}

namespace iodetail {

inline std::string renderTable(const std::vector<std::string>& rowLabels,
                               const std::vector<std::vector<std::string>>& entries) {
  size_t rows = rowLabels.size();
  size_t cols = rows == 0 ? 0 : entries[0].size();
  if (rows == 0) return "  (matrix with no rows)\n";

  size_t labelWidth = 0;
  for (const std::string& l : rowLabels) labelWidth = std::max(labelWidth, l.size());
  std::vector<size_t> width(cols, 0);
  for (size_t r = 0; r < rows; r++)
    for (size_t c = 0; c < cols; c++)
      width[c] = std::max(width[c], entries[r][c].size());

  std::ostringstream out;
  for (size_t r = 0; r < rows; r++) {
    out << "  " << rowLabels[r] << std::string(labelWidth - rowLabels[r].size(), ' ')
        << " |";
    if (cols == 0) {
      out << " |";
    } else {
      for (size_t c = 0; c < cols; c++) {
        out << ' ' << entries[r][c]
            << std::string(width[c] - entries[r][c].size(), ' ');
      }
      out << " |";
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace iodetail

inline std::string renderMatrixText(const GradedMatrix& m) {
  std::vector<std::string> labels;
  std::vector<std::vector<std::string>> entries;
  for (int r = 0; r < m.rows(); r++) {
    labels.push_back(braceDegree(m.target.twists[r]));
    std::vector<std::string> row;
    for (int c = 0; c < m.ncols(); c++) row.push_back(m.entry(r, c).str());
    entries.push_back(std::move(row));
  }
  return iodetail::renderTable(labels, entries);
}

inline std::string renderEMatrixText(const EMatrix& m) {
  std::vector<std::string> labels;
  std::vector<std::vector<std::string>> entries;
  for (int r = 0; r < m.rows(); r++) {
    labels.push_back(braceDegree(m.target.twists[r]));
    std::vector<std::string> row;
    for (int c = 0; c < m.ncols(); c++) row.push_back(m.entry(r, c).str());
    entries.push_back(std::move(row));
  }
  return iodetail::renderTable(labels, entries);
}

inline std::string renderTwistList(const std::vector<Multidegree>& ts) {
  std::string s;
  for (size_t i = 0; i < ts.size(); i++) {
    if (i) s += ' ';
    s += braceDegree(ts[i]);
  }
  return s;
}

inline std::string renderModuleText(const PresentedModule& M) {
  std::ostringstream out;
  out << "generators (" << M.gens.rank() << "): " << renderTwistList(M.gens.twists)
      << '\n';
  if (M.relations.ncols() == 0) {
    out << "relations: none (free)\n";
  } else {
    out << "relations (" << M.relations.ncols() << "):\n"
        << renderMatrixText(M.relations);
  }
  return out.str();
}

inline std::string renderComplexText(const FComplex& C) {
  std::ostringstream out;
  if (C.terms.empty()) return "empty complex\n";
  out << "complex with terms in [" << C.lo() << ", " << C.hi() << "]\n";
  for (const auto& [i, F] : C.terms)
    out << "term " << i << ": rank " << F.rank() << "  " << renderTwistList(F.twists)
        << '\n';
  for (const auto& [i, d] : C.diffs) {
    if (d.rows() == 0 || d.ncols() == 0) continue;
    out << "map " << i << " -> " << (i - 1) << ":\n" << renderMatrixText(d);
  }
  return out.str();
}

inline std::string renderDMText(const DifferentialModule& D) {
  std::ostringstream out;
  out << "differential module of rank " << D.rank() << ", degree "
      << braceDegree(D.degree) << '\n';
  out << "generators: " << renderTwistList(D.underlying.gens.twists) << '\n';
  if (!D.isFreeUnderlying())
    out << "relations (" << D.underlying.relations.ncols() << "):\n"
        << renderMatrixText(D.underlying.relations);
  out << "differential:\n" << renderMatrixText(D.del);
  return out.str();
}

inline std::string renderFlagText(const FlagDM& F) {
  std::ostringstream out;
  out << "flag differential module, blocks [";
  for (size_t i = 0; i < F.blockSizes.size(); i++) {
    if (i) out << ", ";
    out << F.blockSizes[i];
  }
  out << "], rank " << F.dm.rank() << ", degree " << braceDegree(F.dm.degree) << '\n';
  out << "generators: " << renderTwistList(F.dm.underlying.gens.twists) << '\n';
  out << "differential:\n" << renderMatrixText(F.dm.del);
  return out.str();
}

inline std::string renderEDMText(const DifferentialEModule& D) {
  std::ostringstream out;
  out << "differential module of rank " << D.rank()
      << " over the dual exterior algebra\n";
  out << "generators: " << renderTwistList(D.gens.twists) << '\n';
  out << "differential:\n" << renderEMatrixText(D.del);
  return out.str();
}

inline std::string renderStrandText(const StrandResult& R) {
  std::ostringstream out;
  out << "strongly linear strand from degree " << braceDegree(R.sourceDegree) << '\n';
  out << "kernel dimensions:";
  if (R.kernelDims.empty()) out << " none";
  for (const auto& [d, n] : R.kernelDims) out << ' ' << braceDegree(d) << ':' << n;
  out << '\n' << renderComplexText(R.strand);
  return out.str();
}

}  // namespace mbgg
