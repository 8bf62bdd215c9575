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

#ifndef QEMTK_MATREP_HPP
#define QEMTK_MATREP_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qemtk/linalg.hpp"
#include "qemtk/matrix.hpp"

// Representations of quantum states and channels.
//
// Index conventions, fixed once for the whole library:
//  * vectorization is column-stacking: entry (i, j) of a d_out x d_in
//    matrix lands at flat index j*d_out + i, so v(E_{a,b}) = e_b (x) e_a;
//  * a composite index (x, y) of an m (x) n space means x*n + y;
//  * the natural representation N of a channel satisfies
//    N * v(A) = v(channel(A)) and equals sum_k conj(K_k) (x) K_k;
//  * the Choi matrix is C = sum_{a,b} E_{a,b} (x) channel(E_{a,b}), which
//    pins the reshuffle C[(a,i),(b,j)] = N[(j,i),(b,a)].

namespace qemtk {

//=========================================================================
// Tolerances
//=========================================================================

struct Tolerances {
  double herm = 1e-9;    // Hermiticity
  double tp = 1e-9;      // trace preservation
  double cp = 1e-9;      // Choi positivity
  double psd = 1e-9;     // state positivity
  double trace = 1e-9;   // unit trace
  double unitary = 1e-9; // unitarity of gate matrices
};

//=========================================================================
// Vectorization
//=========================================================================

// Column-stacking vec map; see the header comment for the convention.
inline std::vector<complex_t> vectorize(const ComplexMatrix &a) {
  std::vector<complex_t> v(a.rows() * a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) v[j * a.rows() + i] = a(i, j);
  return v;
}

inline ComplexMatrix unvectorize(const std::vector<complex_t> &v,
                                 std::size_t rows, std::size_t cols) {
  if (v.size() != rows * cols)
    throw LengthMismatch("vector length does not match target shape");
  ComplexMatrix a(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) a(i, j) = v[j * rows + i];
  return a;
}

// Trace functional in the vector representation: str(v(A)) = Tr(A).
inline complex_t vec_trace(const std::vector<complex_t> &v, std::size_t d) {
  if (v.size() != d * d)
    throw LengthMismatch("vec_trace input length must be d^2");
  complex_t t = 0.0;
  for (std::size_t i = 0; i < d; ++i) t += v[i * d + i];
  return t;
}

// Row vector of the trace functional: t^T v(A) = Tr(A). A map M is TP iff
// t_out^T M = t_in^T.
inline std::vector<complex_t> trace_functional(std::size_t d) {
  std::vector<complex_t> t(d * d, complex_t(0.0, 0.0));
  for (std::size_t i = 0; i < d; ++i) t[i * d + i] = 1.0;
  return t;
}

//=========================================================================
// ChannelRep
//=========================================================================

enum class RepKind { Kraus, Choi, Natural };

inline std::string to_string(RepKind k) {
  switch (k) {
    case RepKind::Kraus: return "kraus";
    case RepKind::Choi: return "choi";
    case RepKind::Natural: return "natural";
  }
  return "?";
}

// A linear map between operator spaces in one of three interconvertible
// forms, with declared input/output dimensions.
class ChannelRep {
public:
  static ChannelRep from_kraus(std::vector<ComplexMatrix> ops) {
    if (ops.empty()) throw ShapeMismatch("empty Kraus list");
    const std::size_t d_out = ops.front().rows();
    const std::size_t d_in = ops.front().cols();
    for (const auto &k : ops)
      if (k.rows() != d_out || k.cols() != d_in)
        throw ShapeMismatch("Kraus operators must share one shape");
    ChannelRep ch;
    ch.dim_in_ = d_in;
    ch.dim_out_ = d_out;
    ch.kind_ = RepKind::Kraus;
    ch.kraus_ = std::move(ops);
    return ch;
  }

  static ChannelRep from_choi(std::size_t dim_in, std::size_t dim_out,
                              ComplexMatrix choi) {
    if (choi.rows() != dim_in * dim_out || choi.cols() != dim_in * dim_out)
      throw ShapeMismatch("Choi matrix must be (dim_in*dim_out)^2");
    ChannelRep ch;
    ch.dim_in_ = dim_in;
    ch.dim_out_ = dim_out;
    ch.kind_ = RepKind::Choi;
    ch.mat_ = std::move(choi);
    return ch;
  }

  static ChannelRep from_natural(std::size_t dim_in, std::size_t dim_out,
                                 ComplexMatrix natural) {
    if (natural.rows() != dim_out * dim_out ||
        natural.cols() != dim_in * dim_in)
      throw ShapeMismatch("natural form must be dim_out^2 x dim_in^2");
    ChannelRep ch;
    ch.dim_in_ = dim_in;
    ch.dim_out_ = dim_out;
    ch.kind_ = RepKind::Natural;
    ch.mat_ = std::move(natural);
    return ch;
  }

  std::size_t dim_in() const { return dim_in_; }
  std::size_t dim_out() const { return dim_out_; }
  bool square() const { return dim_in_ == dim_out_; }
  RepKind kind() const { return kind_; }

  const std::vector<ComplexMatrix> &kraus_ops() const {
    if (kind_ != RepKind::Kraus)
      throw ShapeMismatch("channel does not carry a Kraus payload");
    return kraus_;
  }
  const ComplexMatrix &payload() const {
    if (kind_ == RepKind::Kraus)
      throw ShapeMismatch("Kraus channel has no single-matrix payload");
    return mat_;
  }

  ComplexMatrix natural_matrix() const;
  ComplexMatrix choi_matrix() const;

  // Action on a d_in x d_in operator through the natural form.
  ComplexMatrix apply(const ComplexMatrix &a) const {
    if (a.rows() != dim_in_ || a.cols() != dim_in_)
      throw ShapeMismatch("operator dimension does not match channel input");
    return unvectorize(natural_matrix().apply(vectorize(a)), dim_out_,
                       dim_out_);
  }

private:
  std::size_t dim_in_ = 0;
  std::size_t dim_out_ = 0;
  RepKind kind_ = RepKind::Natural;
  ComplexMatrix mat_;
  std::vector<ComplexMatrix> kraus_;
};

//=========================================================================
// Conversions
//=========================================================================

// Natural form by the defining relation: the unique M with
// M v(A) = v(sum_k K_k A K_k^dag). The Kronecker formula is used for
// construction and then verified on the full matrix-unit basis.
inline ChannelRep natural_from_kraus(const std::vector<ComplexMatrix> &ops) {
  if (ops.empty()) throw ShapeMismatch("empty Kraus list");
  const std::size_t d_out = ops.front().rows();
  const std::size_t d_in = ops.front().cols();
  ComplexMatrix m(d_out * d_out, d_in * d_in);
  for (const auto &k : ops) {
    if (k.rows() != d_out || k.cols() != d_in)
      throw ShapeMismatch("Kraus operators must share one shape");
    m += kron(k.conjugate(), k);
  }
  // Verify M v(E_{a,b}) = v(sum K E K^dag) entry-exactly on the basis.
  for (std::size_t a = 0; a < d_in; ++a)
    for (std::size_t b = 0; b < d_in; ++b) {
      ComplexMatrix e(d_in, d_in);
      e(a, b) = 1.0;
      ComplexMatrix image(d_out, d_out);
      for (const auto &k : ops) image += k * e * k.adjoint();
      const auto lhs = m.apply(vectorize(e));
      const auto rhs = vectorize(image);
      double err = 0.0;
      for (std::size_t i = 0; i < lhs.size(); ++i)
        err = std::max(err, std::abs(lhs[i] - rhs[i]));
      if (err > 1e-12)
        throw NumericalError(
            "natural form fails the defining relation on the basis");
    }
  return ChannelRep::from_natural(d_in, d_out, std::move(m));
}

// Index reshuffle C[(a,i),(b,j)] = M[(j,i),(b,a)], exact by construction.
inline ChannelRep choi_from_natural(const ChannelRep &ch) {
  const ComplexMatrix m = ch.natural_matrix();
  const std::size_t din = ch.dim_in(), dout = ch.dim_out();
  ComplexMatrix c(din * dout, din * dout);
  for (std::size_t a = 0; a < din; ++a)
    for (std::size_t b = 0; b < din; ++b)
      for (std::size_t i = 0; i < dout; ++i)
        for (std::size_t j = 0; j < dout; ++j)
          c(a * dout + i, b * dout + j) = m(j * dout + i, b * din + a);
  return ChannelRep::from_choi(din, dout, std::move(c));
}

inline ChannelRep natural_from_choi(const ChannelRep &ch) {
  const ComplexMatrix c = ch.choi_matrix();
  const std::size_t din = ch.dim_in(), dout = ch.dim_out();
  ComplexMatrix m(dout * dout, din * din);
  for (std::size_t a = 0; a < din; ++a)
    for (std::size_t b = 0; b < din; ++b)
      for (std::size_t i = 0; i < dout; ++i)
        for (std::size_t j = 0; j < dout; ++j)
          m(j * dout + i, b * din + a) = c(a * dout + i, b * dout + j);
  return ChannelRep::from_natural(din, dout, std::move(m));
}

// Kraus operators from the eigen-decomposition of the Choi matrix.
// Requires the Choi to be PSD within tol: non-CP maps have no Kraus form.
inline std::vector<ComplexMatrix> kraus_from_choi(const ChannelRep &ch,
                                                  double tol_cp = 1e-9) {
  const ComplexMatrix c = ch.choi_matrix();
  if (hermiticity_residual(c) > 1e-8)
    throw NonHermitianInput("Choi matrix is not Hermitian");
  const std::size_t din = ch.dim_in(), dout = ch.dim_out();
  HermitianEig es = eigh(c);
  if (!es.values.empty() && es.values.front() < -tol_cp)
    throw NumericalError("Choi matrix is not PSD; no Kraus form exists");
  std::vector<ComplexMatrix> ops;
  const std::size_t n = es.values.size();
  for (std::size_t idx = 0; idx < n; ++idx) {
    const double ev = es.values[n - 1 - idx]; // largest first
    if (ev <= tol_cp) continue;
    const double coeff = std::sqrt(ev);
    // Choi column index (a, i): a = input index, i = output row.
    ComplexMatrix k(dout, din);
    for (std::size_t a = 0; a < din; ++a)
      for (std::size_t i = 0; i < dout; ++i)
        k(i, a) = coeff * es.vectors(a * dout + i, n - 1 - idx);
    ops.push_back(std::move(k));
  }
  if (ops.empty()) ops.push_back(ComplexMatrix(dout, din));
  return ops;
}

inline ComplexMatrix ChannelRep::natural_matrix() const {
  switch (kind_) {
    case RepKind::Natural: return mat_;
    case RepKind::Kraus: return natural_from_kraus(kraus_).payload();
    case RepKind::Choi: return natural_from_choi(*this).payload();
  }
  throw Error("unreachable");
}

inline ComplexMatrix ChannelRep::choi_matrix() const {
  switch (kind_) {
    case RepKind::Choi: return mat_;
    case RepKind::Natural: return choi_from_natural(*this).payload();
    case RepKind::Kraus: {
      ChannelRep nat = natural_from_kraus(kraus_);
      return choi_from_natural(nat).payload();
    }
  }
  throw Error("unreachable");
}

//=========================================================================
// Property checks
//=========================================================================

// Partial trace of a Choi matrix over the second tensor factor (the one
// holding channel(E_{a,b})); equals the identity iff the map is TP.
inline ComplexMatrix choi_partial_trace_output(const ComplexMatrix &choi,
                                               std::size_t din,
                                               std::size_t dout) {
  ComplexMatrix t(din, din);
  for (std::size_t a = 0; a < din; ++a)
    for (std::size_t b = 0; b < din; ++b)
      for (std::size_t i = 0; i < dout; ++i)
        t(a, b) += choi(a * dout + i, b * dout + i);
  return t;
}

struct PropertyVerdict {
  bool is_cp = false;
  bool is_tp = false;
  bool is_hp = false;
  double min_choi_eigenvalue = 0.0;
  double tp_residual = 0.0; // operator-norm distance of Tr_out(Choi) from I
  double spectral_radius =
      std::numeric_limits<double>::quiet_NaN(); // square channels only
};

inline PropertyVerdict check_properties(const ChannelRep &ch,
                                        const Tolerances &tol = {}) {
  PropertyVerdict v;
  const ComplexMatrix c = ch.choi_matrix();
  v.is_hp = hermiticity_residual(c) <= tol.herm;
  v.min_choi_eigenvalue = eigh(hermitian_part(c)).values.front();
  v.is_cp = v.min_choi_eigenvalue >= -tol.cp;
  ComplexMatrix pt = choi_partial_trace_output(c, ch.dim_in(), ch.dim_out());
  pt -= ComplexMatrix::identity(ch.dim_in());
  v.tp_residual = spectral_norm(pt);
  v.is_tp = v.tp_residual <= tol.tp;
  if (ch.square()) {
    double r = 0.0;
    for (const auto &lam : eigenvalues(ch.natural_matrix()))
      r = std::max(r, std::abs(lam));
    v.spectral_radius = r;
  }
  return v;
}

//=========================================================================
// States and observables
//=========================================================================

class DensityMatrix {
public:
  // Validates Hermiticity, unit trace and positivity within tolerances.
  static DensityMatrix from_matrix(const ComplexMatrix &m,
                                   const Tolerances &tol = {}) {
    if (!m.is_square()) throw ShapeMismatch("density matrix must be square");
    if (hermiticity_residual(m) > tol.herm)
      throw NonHermitianInput("density matrix is not Hermitian");
    if (std::abs(m.trace() - complex_t(1.0, 0.0)) > tol.trace)
      throw InvalidMatrix("density matrix trace differs from one");
    const double min_ev = eigh(hermitian_part(m)).values.front();
    if (min_ev < -tol.psd)
      throw InvalidMatrix("density matrix has negative eigenvalue " +
                          std::to_string(min_ev));
    DensityMatrix rho;
    rho.mat_ = hermitian_part(m);
    return rho;
  }

  static DensityMatrix pure(const std::vector<complex_t> &amplitudes) {
    const std::size_t d = amplitudes.size();
    double n2 = 0.0;
    for (const auto &a : amplitudes) n2 += std::norm(a);
    if (n2 <= 0.0) throw InvalidMatrix("zero state vector");
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        m(i, j) = amplitudes[i] * std::conj(amplitudes[j]) / n2;
    DensityMatrix rho;
    rho.mat_ = std::move(m);
    return rho;
  }

  static DensityMatrix maximally_mixed(std::size_t d) {
    DensityMatrix rho;
    rho.mat_ = ComplexMatrix::identity(d);
    rho.mat_ *= complex_t(1.0 / static_cast<double>(d), 0.0);
    return rho;
  }

  std::size_t dim() const { return mat_.rows(); }
  const ComplexMatrix &matrix() const { return mat_; }

private:
  ComplexMatrix mat_;
};

class Observable {
public:
  static Observable from_matrix(const ComplexMatrix &m,
                                const Tolerances &tol = {}) {
    if (!m.is_square()) throw ShapeMismatch("observable must be square");
    if (hermiticity_residual(m) > tol.herm)
      throw NonHermitianInput("observable is not Hermitian");
    Observable o;
    o.mat_ = hermitian_part(m);
    return o;
  }

  std::size_t dim() const { return mat_.rows(); }
  const ComplexMatrix &matrix() const { return mat_; }

  double expectation(const ComplexMatrix &rho) const {
    if (rho.rows() != mat_.rows() || rho.cols() != mat_.cols())
      throw ShapeMismatch("observable/state dimension mismatch");
    return (mat_ * rho).trace().real();
  }

private:
  ComplexMatrix mat_;
};

// Pauli matrices.
inline ComplexMatrix pauli_i() { return ComplexMatrix::identity(2); }
inline ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix pauli_y() {
  return {{0.0, complex_t(0.0, -1.0)}, {complex_t(0.0, 1.0), 0.0}};
}
inline ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

//=========================================================================
// Metrics
//=========================================================================

struct FidelityResult {
  double value = 0.0;
  // False when either input had an eigenvalue below -tol_psd; the value is
  // then computed with negative eigenvalues clipped at zero and fidelity
  // stops being a valid metric (it may exceed one).
  bool valid = true;
};

inline FidelityResult fidelity(const ComplexMatrix &rho1,
                               const ComplexMatrix &rho2,
                               const Tolerances &tol = {}) {
  if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols() ||
      !rho1.is_square())
    throw ShapeMismatch("fidelity inputs must be square and equal-sized");
  if (hermiticity_residual(rho1) > tol.herm ||
      hermiticity_residual(rho2) > tol.herm)
    throw NonHermitianInput("fidelity inputs must be Hermitian");
  FidelityResult out;
  const ClippedSqrt s1 = hermitian_sqrt_clipped(hermitian_part(rho1));
  const double min2 = eigh(hermitian_part(rho2)).values.front();
  out.valid = s1.min_eigenvalue >= -tol.psd && min2 >= -tol.psd;
  const ComplexMatrix inner =
      hermitian_part(s1.sqrt * hermitian_part(rho2) * s1.sqrt);
  double f = 0.0;
  for (double ev : eigh(inner).values) f += std::sqrt(std::max(ev, 0.0));
  out.value = f;
  return out;
}

inline FidelityResult fidelity(const DensityMatrix &rho1,
                               const DensityMatrix &rho2,
                               const Tolerances &tol = {}) {
  return fidelity(rho1.matrix(), rho2.matrix(), tol);
}

inline double trace_distance(const ComplexMatrix &rho1,
                             const ComplexMatrix &rho2) {
  return 0.5 * trace_norm(rho1 - rho2);
}

inline double trace_distance(const DensityMatrix &rho1,
                             const DensityMatrix &rho2) {
  return trace_distance(rho1.matrix(), rho2.matrix());
}

//=========================================================================
// Unitary-conjugation channels
//=========================================================================

inline bool is_unitary(const ComplexMatrix &u, double tol = 1e-9) {
  if (!u.is_square()) return false;
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.rows())) <=
         tol;
}

// Channel rho -> U rho U^dag; natural form conj(U) (x) U.
inline ChannelRep unitary_channel(const ComplexMatrix &u,
                                  double tol_unitary = 1e-9) {
  if (!is_unitary(u, tol_unitary))
    throw NonUnitaryInput("matrix is not unitary within tolerance");
  return natural_from_kraus({u});
}

} // namespace qemtk

#endif // QEMTK_MATREP_HPP
