#pragma once

// Multigraded polynomial rings S = k[x_0..x_n] with grading by ZZ^t, and the
// Koszul-dual exterior algebras E = Lambda(e_0..e_n) graded by ZZ^(t+1) with
// deg e_i = (-deg x_i; -1).

#include <memory>
#include <string>
#include <vector>

#include "mbgg/field.hpp"
#include "mbgg/grading.hpp"

namespace mbgg {

class PolyRing {
 public:
  PolyRing(FieldSpec field, std::vector<std::string> varNames, GradingSpec grading)
      : field_(field), varNames_(std::move(varNames)), grading_(std::move(grading)) {
    if (varNames_.empty())
      throw AlgebraError(AlgebraError::Code::BadInput, "ring needs at least one variable");
    grading_.validate(nvars());
  }

  const FieldSpec& field() const { return field_; }
  int nvars() const { return static_cast<int>(varNames_.size()); }
  const std::vector<std::string>& varNames() const { return varNames_; }
  const GradingSpec& grading() const { return grading_; }
  int degreeRank() const { return grading_.rank; }
  const Multidegree& varDegree(int i) const { return grading_.varDegrees[i]; }

  // Positivity functional; computed on first use if not supplied.
  const std::vector<int>& theta() const {
    if (!thetaCache_)
      thetaCache_ = grading_.theta ? *grading_.theta
                                   : findPositivityFunctional(grading_.varDegrees);
    return *thetaCache_;
  }

  // theta-weight of variable i (positive for positively graded rings).
  long varWeight(int i) const { return varDegree(i).dot(theta()); }

  Multidegree sumVarDegrees() const {
    Multidegree s = Multidegree::zero(degreeRank());
    for (int i = 0; i < nvars(); i++) s = s + varDegree(i);
    return s;
  }

  bool sameAs(const PolyRing& o) const {
    return field_ == o.field_ && varNames_ == o.varNames_ &&
           grading_.rank == o.grading_.rank &&
           grading_.varDegrees == o.grading_.varDegrees;
  }

 private:
  FieldSpec field_;
  std::vector<std::string> varNames_;
  GradingSpec grading_;
  mutable std::optional<std::vector<int>> thetaCache_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

inline RingPtr makePolyRing(FieldSpec field, std::vector<std::string> varNames,
                            GradingSpec grading) {
  return std::make_shared<PolyRing>(field, std::move(varNames), std::move(grading));
}

inline void requireSameRing(const RingPtr& a, const RingPtr& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || !a->sameAs(*b))
    throw AlgebraError(AlgebraError::Code::RingMismatch, "objects over different rings");
}

// Exterior algebra dual to a polynomial ring. Grading has rank t+1; the
// extra coordinate records exterior word length (negatively).
class ExtAlgebra {
 public:
  explicit ExtAlgebra(RingPtr base) : base_(std::move(base)) {
    int t = base_->degreeRank();
    for (int i = 0; i < base_->nvars(); i++) {
      varNames_.push_back("e_" + std::to_string(i));
      Multidegree d = Multidegree::zero(t + 1);
      const Multidegree& dx = base_->varDegree(i);
      for (int j = 0; j < t; j++) d[j] = -dx[j];
      d[t] = -1;
      varDegrees_.push_back(d);
    }
  }

  const RingPtr& base() const { return base_; }
  const FieldSpec& field() const { return base_->field(); }
  int nvars() const { return base_->nvars(); }
  const std::vector<std::string>& varNames() const { return varNames_; }
  int degreeRank() const { return base_->degreeRank() + 1; }
  const Multidegree& varDegree(int i) const { return varDegrees_[i]; }

  Multidegree maskDegree(unsigned mask) const {
    Multidegree d = Multidegree::zero(degreeRank());
    for (int i = 0; i < nvars(); i++)
      if (mask & (1u << i)) d = d + varDegrees_[i];
    return d;
  }

  bool sameAs(const ExtAlgebra& o) const { return base_->sameAs(*o.base_); }

 private:
  RingPtr base_;
  std::vector<std::string> varNames_;
  std::vector<Multidegree> varDegrees_;
};

using ExtPtr = std::shared_ptr<const ExtAlgebra>;

inline ExtPtr dualRingToric(const RingPtr& S) {
  return std::make_shared<ExtAlgebra>(S);
}

inline void requireSameAlgebra(const ExtPtr& a, const ExtPtr& b) {
  if (a.get() == b.get()) return;
  if (!a || !b || !a->sameAs(*b))
    throw AlgebraError(AlgebraError::Code::RingMismatch,
                       "objects over different exterior algebras");
}

// Generator degree of omega_E(-a; 0) where omega_E = E(-sum deg x_i; -n-1):
// (a + sum_i deg x_i; n+1).
inline Multidegree omegaTwistDegree(const ExtAlgebra& E, const Multidegree& a) {
  const PolyRing& S = *E.base();
  if (a.rank() != S.degreeRank())
    throw AlgebraError(AlgebraError::Code::BadInput, "omega twist has wrong rank");
  Multidegree sum = S.sumVarDegrees();
  Multidegree r = Multidegree::zero(E.degreeRank());
  for (int j = 0; j < S.degreeRank(); j++) r[j] = a[j] + sum[j];
  r[S.degreeRank()] = S.nvars();
  return r;
}

}  // namespace mbgg
