#pragma once

// Shared ring builders and RNG helpers for the test suites.

#include <random>
#include <vector>

#include "mbgg/polynomial.hpp"
#include "mbgg/ring.hpp"

namespace testutil {

using namespace mbgg;

// ZZ^2-graded Cox ring of the Hirzebruch surface F_a:
// deg x_0 = deg x_2 = (1,0), deg x_1 = (-a,1), deg x_3 = (0,1).
inline RingPtr hirzebruch(int a, FieldSpec f = FieldSpec::rationals()) {
  GradingSpec g;
  g.rank = 2;
  g.varDegrees = {Multidegree{1, 0}, Multidegree{-a, 1}, Multidegree{1, 0},
                  Multidegree{0, 1}};
  return makePolyRing(f, {"x_0", "x_1", "x_2", "x_3"}, g);
}

// Standard-graded k[names...].
inline RingPtr standardRing(std::vector<std::string> names,
                            FieldSpec f = FieldSpec::rationals()) {
  GradingSpec g;
  g.rank = 1;
  g.varDegrees.assign(names.size(), Multidegree{1});
  return makePolyRing(f, std::move(names), g);
}

// Weighted projective space coordinate ring with weights w.
inline RingPtr weightedRing(std::vector<int> w,
                            FieldSpec f = FieldSpec::rationals()) {
  GradingSpec g;
  g.rank = 1;
  std::vector<std::string> names;
  for (size_t i = 0; i < w.size(); i++) {
    g.varDegrees.push_back(Multidegree{w[i]});
    names.push_back("x_" + std::to_string(i));
  }
  return makePolyRing(f, std::move(names), g);
}

// Random homogeneous polynomial of multidegree d (possibly zero).
inline Polynomial randomHomogeneous(std::mt19937& rng, const RingPtr& S,
                                    const Multidegree& d) {
  Polynomial p(S);
  std::uniform_int_distribution<int> coeff(-5, 5);
  for (const ExpVec& e : monomialsOfDegree(S, d))
    p.addTerm(e, S->field().fromLong(coeff(rng)));
  return p;
}

}  // namespace testutil
