#pragma once

// Multidegrees over ZZ^t, grading data for polynomial rings, and the search
// for a positivity functional theta with theta . deg(x_i) > 0 for all i.

#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "mbgg/field.hpp"

namespace mbgg {

struct Multidegree {
  std::vector<int> c;

  Multidegree() = default;
  explicit Multidegree(std::vector<int> v) : c(std::move(v)) {}
  Multidegree(std::initializer_list<int> v) : c(v) {}
  static Multidegree zero(int rank) { return Multidegree(std::vector<int>(rank, 0)); }

  int rank() const { return static_cast<int>(c.size()); }
  int operator[](int i) const { return c[i]; }
  int& operator[](int i) { return c[i]; }

  Multidegree operator+(const Multidegree& o) const {
    Multidegree r = *this;
    for (int i = 0; i < rank(); i++) r.c[i] += o.c[i];
    return r;
  }
  Multidegree operator-(const Multidegree& o) const {
    Multidegree r = *this;
    for (int i = 0; i < rank(); i++) r.c[i] -= o.c[i];
    return r;
  }
  Multidegree operator-() const {
    Multidegree r = *this;
    for (int& v : r.c) v = -v;
    return r;
  }
  Multidegree operator*(int k) const {
    Multidegree r = *this;
    for (int& v : r.c) v *= k;
    return r;
  }

  bool operator==(const Multidegree& o) const { return c == o.c; }
  bool operator!=(const Multidegree& o) const { return c != o.c; }
  bool operator<(const Multidegree& o) const { return c < o.c; }  // lex

  bool isZero() const {
    for (int v : c)
      if (v != 0) return false;
    return true;
  }

  long dot(const std::vector<int>& w) const {
    long s = 0;
    for (int i = 0; i < rank(); i++) s += static_cast<long>(w[i]) * c[i];
    return s;
  }

  std::string str() const {
    std::string s = "(";
    for (int i = 0; i < rank(); i++) {
      if (i) s += ", ";
      s += std::to_string(c[i]);
    }
    return s + ")";
  }
};

// Lex-smallest theta in the box [-bound, bound]^t with theta . d > 0 for
// every degree d in varDegrees.
inline std::vector<int> findPositivityFunctional(
    const std::vector<Multidegree>& varDegrees, int bound = 10) {
  if (varDegrees.empty())
    throw AlgebraError(AlgebraError::Code::BadInput, "no variable degrees");
  int t = varDegrees[0].rank();
  std::vector<int> theta(t, -bound);
  while (true) {
    bool ok = true;
    for (const Multidegree& d : varDegrees)
      if (d.dot(theta) <= 0) {
        ok = false;
        break;
      }
    if (ok) return theta;
    // advance odometer in ascending lex order (last coordinate fastest)
    int i = t - 1;
    while (i >= 0 && theta[i] == bound) theta[i--] = -bound;
    if (i < 0)
      throw AlgebraError(AlgebraError::Code::NotPositivelyGraded,
                         "no positivity functional in search box");
    theta[i]++;
  }
}

struct GradingSpec {
  int rank = 1;                          // t
  std::vector<Multidegree> varDegrees;   // one per variable
  std::optional<std::vector<int>> theta; // positivity functional, if known

  void validate(int nvars) const {
    if (rank < 1)
      throw AlgebraError(AlgebraError::Code::BadInput, "grading rank must be >= 1");
    if (static_cast<int>(varDegrees.size()) != nvars)
      throw AlgebraError(AlgebraError::Code::BadInput,
                         "variable count does not match degree list");
    for (const Multidegree& d : varDegrees)
      if (d.rank() != rank)
        throw AlgebraError(AlgebraError::Code::BadInput,
                           "degree " + d.str() + " has wrong rank");
    if (theta) {
      if (static_cast<int>(theta->size()) != rank)
        throw AlgebraError(AlgebraError::Code::BadInput, "theta has wrong rank");
      for (const Multidegree& d : varDegrees)
        if (d.dot(*theta) <= 0)
          throw AlgebraError(AlgebraError::Code::NotPositivelyGraded,
                             "theta is not positive on " + d.str());
    }
  }
};

}  // namespace mbgg
