// Copyright 2026 The qemtk authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QEMTK_LINALG_HPP
#define QEMTK_LINALG_HPP

#include <algorithm>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "qemtk/matrix.hpp"

// Dense decompositions on top of Eigen. Everything here works on copies;
// matrices stay at desk scale (operator-space dimension <= 16).

namespace qemtk {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix &m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd &m) {
  ComplexMatrix out(static_cast<std::size_t>(m.rows()),
                    static_cast<std::size_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = m(i, j);
  return out;
}

//-------------------------------------------------------------------------
// Eigen-decompositions
//-------------------------------------------------------------------------

inline std::vector<complex_t> eigenvalues(const ComplexMatrix &m) {
  if (!m.is_square()) throw ShapeMismatch("eigenvalues of non-square matrix");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(to_eigen(m), false);
  if (es.info() != Eigen::Success)
    throw NumericalError("eigenvalue computation failed");
  std::vector<complex_t> vals(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) vals[i] = es.eigenvalues()(i);
  return vals;
}

struct HermitianEig {
  std::vector<double> values; // ascending
  ComplexMatrix vectors;      // columns
};

// Eigen-decomposition of the Hermitian part of m. Callers are expected to
// have checked Hermiticity to their own tolerance first.
inline HermitianEig eigh(const ComplexMatrix &m) {
  if (!m.is_square()) throw ShapeMismatch("eigh of non-square matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m));
  if (es.info() != Eigen::Success)
    throw NumericalError("hermitian eigensolver failed");
  HermitianEig out;
  out.values.assign(es.eigenvalues().data(),
                    es.eigenvalues().data() + m.rows());
  out.vectors = from_eigen(es.eigenvectors());
  return out;
}

struct Svd {
  ComplexMatrix u;
  std::vector<double> singular_values; // descending
  ComplexMatrix v;                     // A = U * diag(s) * V^dag
};

inline Svd svd(const ComplexMatrix &m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> dec(
      to_eigen(m), Eigen::ComputeThinU | Eigen::ComputeThinV);
  Svd out;
  out.u = from_eigen(dec.matrixU());
  out.v = from_eigen(dec.matrixV());
  out.singular_values.assign(dec.singularValues().data(),
                             dec.singularValues().data() +
                                 dec.singularValues().size());
  return out;
}

inline std::vector<double> singular_values(const ComplexMatrix &m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> dec(to_eigen(m));
  std::vector<double> s(dec.singularValues().data(),
                        dec.singularValues().data() +
                            dec.singularValues().size());
  return s;
}

inline double spectral_norm(const ComplexMatrix &m) {
  auto s = singular_values(m);
  return s.empty() ? 0.0 : s.front();
}

// Smallest singular value: the lower Lipschitz constant inf_{|x|=1} |Mx|.
inline double sigma_min(const ComplexMatrix &m) {
  auto s = singular_values(m);
  return s.empty() ? 0.0 : s.back();
}

inline double trace_norm(const ComplexMatrix &m) {
  double t = 0.0;
  for (double s : singular_values(m)) t += s;
  return t;
}

// Numerical rank with threshold relative to the largest singular value.
inline std::size_t numerical_rank(const ComplexMatrix &m, double rel_tol) {
  auto s = singular_values(m);
  if (s.empty() || s.front() == 0.0) return 0;
  const double cut = rel_tol * s.front();
  std::size_t r = 0;
  for (double x : s)
    if (x > cut) ++r;
  return r;
}

inline double condition_number(const ComplexMatrix &m) {
  auto s = singular_values(m);
  if (s.empty()) return 0.0;
  if (s.back() == 0.0) return std::numeric_limits<double>::infinity();
  return s.front() / s.back();
}

//-------------------------------------------------------------------------
// Linear solves
//-------------------------------------------------------------------------

inline ComplexMatrix solve(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (!a.is_square() || a.rows() != b.rows())
    throw ShapeMismatch("solve shape mismatch");
  Eigen::MatrixXcd x = to_eigen(a).partialPivLu().solve(to_eigen(b));
  return from_eigen(x);
}

inline ComplexMatrix inverse(const ComplexMatrix &a) {
  return solve(a, ComplexMatrix::identity(a.rows()));
}

// Least squares solve min |a x - b|_2 (a may be rectangular).
inline ComplexMatrix lstsq(const ComplexMatrix &a, const ComplexMatrix &b) {
  Eigen::MatrixXcd x = to_eigen(a)
                           .jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
                           .solve(to_eigen(b));
  return from_eigen(x);
}

// SVD pseudoinverse; singular values <= rel_tol * s_max (or <= abs_tol)
// are treated as zero.
inline ComplexMatrix pseudo_inverse(const ComplexMatrix &m, double abs_tol) {
  Svd dec = svd(m);
  const std::size_t k = dec.singular_values.size();
  ComplexMatrix sinv(k, k);
  for (std::size_t i = 0; i < k; ++i)
    if (dec.singular_values[i] > abs_tol)
      sinv(i, i) = 1.0 / dec.singular_values[i];
  return dec.v * sinv * dec.u.adjoint();
}

//-------------------------------------------------------------------------
// Hermitian functional calculus
//-------------------------------------------------------------------------

// Principal square root of a Hermitian matrix with eigenvalues clipped at
// zero. Returns the sqrt and the minimum (unclipped) eigenvalue.
struct ClippedSqrt {
  ComplexMatrix sqrt;
  double min_eigenvalue;
};

inline ClippedSqrt hermitian_sqrt_clipped(const ComplexMatrix &m) {
  HermitianEig es = eigh(m);
  const std::size_t n = m.rows();
  ComplexMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    d(i, i) = std::sqrt(std::max(es.values[i], 0.0));
  ClippedSqrt out;
  out.sqrt = es.vectors * d * es.vectors.adjoint();
  out.min_eigenvalue = es.values.empty() ? 0.0 : es.values.front();
  return out;
}

inline ComplexMatrix matrix_power(const ComplexMatrix &m, std::size_t p) {
  if (!m.is_square()) throw ShapeMismatch("power of non-square matrix");
  ComplexMatrix acc = ComplexMatrix::identity(m.rows());
  for (std::size_t i = 0; i < p; ++i) acc = acc * m;
  return acc;
}

//-------------------------------------------------------------------------
// Schur decomposition and eigenvalue reordering
//-------------------------------------------------------------------------

struct Schur {
  ComplexMatrix u; // unitary
  ComplexMatrix t; // upper triangular, m = u * t * u^dag
};

inline Schur schur(const ComplexMatrix &m) {
  if (!m.is_square()) throw ShapeMismatch("schur of non-square matrix");
  Eigen::ComplexSchur<Eigen::MatrixXcd> dec(to_eigen(m), true);
  if (dec.info() != Eigen::Success)
    throw NumericalError("Schur decomposition failed");
  return Schur{from_eigen(dec.matrixU()), from_eigen(dec.matrixT())};
}

// Swap the diagonal entries t(k,k) and t(k+1,k+1) of an upper triangular t
// by a unitary similarity, updating u accordingly. Requires the two
// eigenvalues to be distinct.
inline void schur_swap_adjacent(ComplexMatrix &t, ComplexMatrix &u,
                                std::size_t k) {
  const std::size_t n = t.rows();
  const complex_t t11 = t(k, k);
  const complex_t t12 = t(k, k + 1);
  const complex_t t22 = t(k + 1, k + 1);
  // Eigenvector of [[t11, t12], [0, t22]] for eigenvalue t22 is
  // (t12, t22 - t11); rotate it onto e1.
  const complex_t a = t12;
  const complex_t b = t22 - t11;
  const double r = std::sqrt(std::norm(a) + std::norm(b));
  if (r == 0.0) return; // identical eigenvalues and zero coupling
  const complex_t c1 = a / r;
  const complex_t c2 = b / r;
  // G = [[c1, -conj(c2)], [c2, conj(c1)]] is unitary with first column
  // equal to the normalized eigenvector.
  for (std::size_t i = 0; i < n; ++i) { // columns: T <- T G, U <- U G
    const complex_t x = t(i, k), y = t(i, k + 1);
    t(i, k) = x * c1 + y * c2;
    t(i, k + 1) = -x * std::conj(c2) + y * std::conj(c1);
    const complex_t ux = u(i, k), uy = u(i, k + 1);
    u(i, k) = ux * c1 + uy * c2;
    u(i, k + 1) = -ux * std::conj(c2) + uy * std::conj(c1);
  }
  for (std::size_t j = 0; j < n; ++j) { // rows: T <- G^dag T
    const complex_t x = t(k, j), y = t(k + 1, j);
    t(k, j) = std::conj(c1) * x + std::conj(c2) * y;
    t(k + 1, j) = -c2 * x + c1 * y;
  }
  t(k + 1, k) = 0.0;
}

// Reorder a Schur form so that the flagged eigenvalues end up in the
// trailing diagonal positions (order within the groups is preserved).
inline void schur_move_flagged_to_trailing(Schur &dec,
                                           std::vector<bool> flags) {
  const std::size_t n = dec.t.rows();
  if (flags.size() != n)
    throw ShapeMismatch("flag count does not match Schur dimension");
  // Bubble every flagged entry downward past unflagged ones.
  for (std::size_t pass = 0; pass + 1 < n; ++pass) {
    bool moved = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (flags[k] && !flags[k + 1]) {
        schur_swap_adjacent(dec.t, dec.u, k);
        std::swap(flags[k], flags[k + 1]);
        moved = true;
      }
    }
    if (!moved) break;
  }
}

} // namespace qemtk

#endif // QEMTK_LINALG_HPP
