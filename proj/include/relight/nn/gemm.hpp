#pragma once
// Thin Eigen wrappers for the few matmul shapes the layers need, plus shared
// scratch buffers for im2col. Row-major float32 throughout; single-threaded.

#include <vector>

#include <Eigen/Core>

namespace relight::nn {

using MatRM =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapM = Eigen::Map<MatRM>;
using MapC = Eigen::Map<const MatRM>;

// C[m,n] = A[m,k] B[k,n]
inline void matmul(const float* a, const float* b, float* c, int m, int k,
                   int n) {
  MapM(c, m, n).noalias() = MapC(a, m, k) * MapC(b, k, n);
}

// C[m,n] += A[m,k] B[k,n]
inline void matmul_acc(const float* a, const float* b, float* c, int m, int k,
                       int n) {
  MapM(c, m, n).noalias() += MapC(a, m, k) * MapC(b, k, n);
}

// C[m,n] = A[k,m]^T B[k,n]
inline void matmul_tn(const float* a, const float* b, float* c, int m, int k,
                      int n) {
  MapM(c, m, n).noalias() = MapC(a, k, m).transpose() * MapC(b, k, n);
}

// C[m,n] += A[k,m]^T B[k,n]
inline void matmul_tn_acc(const float* a, const float* b, float* c, int m,
                          int k, int n) {
  MapM(c, m, n).noalias() += MapC(a, k, m).transpose() * MapC(b, k, n);
}

// C[m,n] = A[m,k] B[n,k]^T
inline void matmul_nt(const float* a, const float* b, float* c, int m, int k,
                      int n) {
  MapM(c, m, n).noalias() = MapC(a, m, k) * MapC(b, n, k).transpose();
}

// C[m,n] += A[m,k] B[n,k]^T
inline void matmul_nt_acc(const float* a, const float* b, float* c, int m,
                          int k, int n) {
  MapM(c, m, n).noalias() += MapC(a, m, k) * MapC(b, n, k).transpose();
}

// Reusable scratch (0: im2col columns, 1: column gradients). All conv layers
// share these; safe because the update stream is single-threaded and each
// use completes before the next layer runs.
inline std::vector<float>& scratch(int which) {
  thread_local std::vector<float> bufs[2];
  return bufs[which];
}

}  // namespace relight::nn
