#pragma once

// Small dense exact linear algebra over a FieldSpec: RREF, kernels, and an
// incremental reduced column-echelon space used for graded-piece quotients.

#include <vector>

#include "mbgg/field.hpp"

namespace mbgg {

struct DenseMat {
  int rows = 0, cols = 0;
  std::vector<Scalar> a;

  DenseMat() = default;
  DenseMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Scalar(0)) {}

  Scalar& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Scalar& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static DenseMat identity(int n) {
    DenseMat m(n, n);
    for (int i = 0; i < n; i++) m.at(i, i) = Scalar(1);
    return m;
  }

  bool operator==(const DenseMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }
};

inline DenseMat matMul(const DenseMat& A, const DenseMat& B, const FieldSpec& f) {
  DenseMat C(A.rows, B.cols);
  for (int i = 0; i < A.rows; i++)
    for (int k = 0; k < A.cols; k++) {
      if (f.isZero(A.at(i, k))) continue;
      for (int j = 0; j < B.cols; j++)
        C.at(i, j) = f.add(C.at(i, j), f.mul(A.at(i, k), B.at(k, j)));
    }
  return C;
}

inline std::vector<Scalar> matVec(const DenseMat& A, const std::vector<Scalar>& v,
                                  const FieldSpec& f) {
  std::vector<Scalar> r(A.rows, Scalar(0));
  for (int i = 0; i < A.rows; i++)
    for (int j = 0; j < A.cols; j++)
      if (!f.isZero(A.at(i, j))) r[i] = f.add(r[i], f.mul(A.at(i, j), v[j]));
  return r;
}

// Row-reduce in place; returns pivot columns (deterministic: leftmost
// column, topmost available row).
inline std::vector<int> rrefInPlace(DenseMat& M, const FieldSpec& f) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < M.cols && r < M.rows; c++) {
    int pr = -1;
    for (int i = r; i < M.rows; i++)
      if (!f.isZero(M.at(i, c))) {
        pr = i;
        break;
      }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < M.cols; j++) std::swap(M.at(pr, j), M.at(r, j));
    Scalar inv = f.inv(M.at(r, c));
    for (int j = 0; j < M.cols; j++) M.at(r, j) = f.mul(M.at(r, j), inv);
    for (int i = 0; i < M.rows; i++) {
      if (i == r || f.isZero(M.at(i, c))) continue;
      Scalar k = M.at(i, c);
      for (int j = 0; j < M.cols; j++)
        M.at(i, j) = f.sub(M.at(i, j), f.mul(k, M.at(r, j)));
    }
    pivots.push_back(c);
    r++;
  }
  return pivots;
}

inline int matRank(DenseMat M, const FieldSpec& f) {
  return static_cast<int>(rrefInPlace(M, f).size());
}

struct KernelBasis {
  DenseMat vecs;              // columns form a basis of ker
  std::vector<int> freeCols;  // vecs column k has a 1 at row freeCols[k];
                              // coordinates of any kernel vector can be read
                              // off at these rows
};

inline KernelBasis kernelBasis(DenseMat M, const FieldSpec& f) {
  int n = M.cols;
  std::vector<int> pivots = rrefInPlace(M, f);
  std::vector<bool> isPivot(n, false);
  for (int c : pivots) isPivot[c] = true;
  KernelBasis K;
  for (int c = 0; c < n; c++)
    if (!isPivot[c]) K.freeCols.push_back(c);
  K.vecs = DenseMat(n, static_cast<int>(K.freeCols.size()));
  for (size_t k = 0; k < K.freeCols.size(); k++) {
    int fc = K.freeCols[k];
    K.vecs.at(fc, static_cast<int>(k)) = Scalar(1);
    for (size_t pi = 0; pi < pivots.size(); pi++)
      K.vecs.at(pivots[pi], static_cast<int>(k)) =
          f.neg(M.at(static_cast<int>(pi), fc));
  }
  return K;
}

// Incrementally maintained reduced column echelon of a subspace of k^dim.
// Pivot of a column is its first nonzero row; pivot entries are 1 and are
// cleared from every other stored column, so reduce() leaves residuals
// supported away from all pivot rows.
class EchelonSpace {
 public:
  EchelonSpace(const FieldSpec& f, int dim) : f_(f), dim_(dim) {}

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(cols_.size()); }
  const std::vector<int>& pivots() const { return pivots_; }

  // Reduce v modulo the span; returns the row of its first nonzero entry, or
  // -1 if v lies in the span.
  int reduceInPlace(std::vector<Scalar>& v) const {
    for (size_t k = 0; k < cols_.size(); k++) {
      const Scalar& c = v[pivots_[k]];
      if (f_.isZero(c)) continue;
      Scalar coef = f_.normalize(c);
      for (int i = 0; i < dim_; i++)
        if (!f_.isZero(cols_[k][i])) v[i] = f_.sub(v[i], f_.mul(coef, cols_[k][i]));
    }
    for (int i = 0; i < dim_; i++)
      if (!f_.isZero(v[i])) return i;
    return -1;
  }

  bool contains(std::vector<Scalar> v) const { return reduceInPlace(v) < 0; }

  // Returns true if v enlarged the space.
  bool insert(std::vector<Scalar> v) {
    int p = reduceInPlace(v);
    if (p < 0) return false;
    Scalar inv = f_.inv(v[p]);
    for (int i = 0; i < dim_; i++) v[i] = f_.mul(v[i], inv);
    // clear row p in existing columns to keep the echelon reduced
    for (size_t k = 0; k < cols_.size(); k++) {
      Scalar c = cols_[k][p];
      if (f_.isZero(c)) continue;
      for (int i = 0; i < dim_; i++)
        cols_[k][i] = f_.sub(cols_[k][i], f_.mul(c, v[i]));
    }
    cols_.push_back(std::move(v));
    pivots_.push_back(p);
    return true;
  }

 private:
  FieldSpec f_;
  int dim_;
  std::vector<std::vector<Scalar>> cols_;
  std::vector<int> pivots_;
};

}  // namespace mbgg
