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

#ifndef QEMTK_INVERSES_HPP
#define QEMTK_INVERSES_HPP

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "qemtk/linalg.hpp"
#include "qemtk/matrep.hpp"

// Invertibility classification and quasi-inverse constructions for
// channels: exact inverse, Drazin inverse (inverts every nonzero-eigenvalue
// Jordan block, annihilates the nilpotent part) and the Moore-Penrose
// pseudoinverse.
//
// Numerical Jordan structure is ill-posed, so two interchangeable Drazin
// backends ship: a Schur-reordering construction (default; never forms a
// generalized eigenvector basis) and an explicit Q J' Q^-1 construction
// used as a cross-check. The nilpotent part is always replaced by the zero
// block.

namespace qemtk {

struct SpectralOptions {
  double eps_cluster = 1e-7; // eigenvalue clustering radius
  double tol_rank = 1e-9;    // relative SVD rank threshold
  double tol_zero = 1e-9;    // singular-value invertibility threshold
  double cond_max = 1e8;     // reject bases with larger condition number
  double tol_jordan = 1e-6;  // relative reconstruction residual bound
};

//=========================================================================
// Zero-eigenvalue structure from ranks of matrix powers
//=========================================================================

// Rank of M^j is robust where individual near-zero eigenvalues of a
// defective block are not (they scatter at radius eps^(1/k)); the algebraic
// multiplicity of the zero eigenvalue and the nilpotency index are read off
// the defect sequence.
struct ZeroStructure {
  std::size_t multiplicity = 0;      // algebraic multiplicity of lambda = 0
  std::size_t index = 0;             // nilpotency index (0 if invertible)
  std::vector<std::size_t> defects;  // defects[j] = dim null(M^j)
};

inline ZeroStructure zero_structure(const ComplexMatrix &m,
                                    const SpectralOptions &opts = {}) {
  const std::size_t n = m.rows();
  ZeroStructure zs;
  zs.defects.push_back(0);
  ComplexMatrix power = ComplexMatrix::identity(n);
  for (std::size_t j = 1; j <= n; ++j) {
    power = power * m;
    const std::size_t defect = n - numerical_rank(power, opts.tol_rank);
    if (defect == zs.defects.back()) {
      zs.index = j - 1;
      zs.multiplicity = defect;
      return zs;
    }
    zs.defects.push_back(defect);
  }
  zs.index = n;
  zs.multiplicity = zs.defects.back();
  return zs;
}

//=========================================================================
// Spectral (Jordan) decomposition
//=========================================================================

struct JordanBlock {
  complex_t eigenvalue;
  std::size_t size;
};

struct SpectralDecomposition {
  ComplexMatrix basis;            // Q, columns are (generalized) eigenvectors
  std::vector<JordanBlock> blocks;
  std::size_t zero_index = 0;     // nilpotency index of the zero part
  double basis_condition = 0.0;
  double reconstruction_residual = 0.0; // |Q J Q^-1 - M|_F / |M|_F

  ComplexMatrix jordan() const {
    std::size_t n = 0;
    for (const auto &b : blocks) n += b.size;
    ComplexMatrix j(n, n);
    std::size_t off = 0;
    for (const auto &b : blocks) {
      for (std::size_t k = 0; k < b.size; ++k) {
        j(off + k, off + k) = b.eigenvalue;
        if (k + 1 < b.size) j(off + k, off + k + 1) = 1.0;
      }
      off += b.size;
    }
    return j;
  }
};

namespace detail {

// Orthonormal basis of null(A) via SVD, relative threshold.
inline ComplexMatrix null_space(const ComplexMatrix &a, double tol_rank) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> dec(to_eigen(a), Eigen::ComputeFullV);
  const auto &sv = dec.singularValues();
  const double cut = sv.size() > 0 ? tol_rank * sv(0) : 0.0;
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++rank;
  const Eigen::Index n = dec.matrixV().rows();
  const Eigen::Index k = n - static_cast<Eigen::Index>(rank);
  return from_eigen(dec.matrixV().rightCols(k));
}

// Columns of m projected onto the orthogonal complement of span(basis);
// basis need not be orthonormal.
inline ComplexMatrix project_out(const ComplexMatrix &m,
                                 const ComplexMatrix &basis) {
  if (basis.cols() == 0) return m;
  // Orthonormalize via thin SVD, then subtract.
  Svd dec = svd(basis);
  std::size_t r = 0;
  for (double s : dec.singular_values)
    if (s > 1e-12 * dec.singular_values.front()) ++r;
  ComplexMatrix q(basis.rows(), r);
  for (std::size_t i = 0; i < basis.rows(); ++i)
    for (std::size_t j = 0; j < r; ++j) q(i, j) = dec.u(i, j);
  return m - q * (q.adjoint() * m);
}

struct Chain {
  std::vector<std::vector<complex_t>> vectors; // height 1 (eigenvector) first
};

// Jordan chains of A = M - lambda*I restricted to its generalized null
// space of dimension `mult`. Heights are processed top-down; each new head
// is chosen orthogonal to the lower kernel and to vectors contributed by
// longer chains at the same height.
inline std::vector<Chain> jordan_chains(const ComplexMatrix &a,
                                        std::size_t mult,
                                        const SpectralOptions &opts) {
  const std::size_t n = a.rows();
  std::vector<ComplexMatrix> kernels; // kernels[j] = basis of null(A^(j+1))
  ComplexMatrix power = a;
  std::vector<std::size_t> dims;
  while (true) {
    ComplexMatrix k = null_space(power, opts.tol_rank);
    kernels.push_back(k);
    dims.push_back(k.cols());
    if (k.cols() >= mult || kernels.size() >= n) break;
    power = power * a;
  }
  if (dims.back() != mult)
    throw NumericalError(
        "generalized null space does not reach the algebraic multiplicity");
  const std::size_t kmax = kernels.size();
  // blocks_ge[j] = number of blocks of size >= j+1.
  std::vector<std::size_t> blocks_ge(kmax);
  for (std::size_t j = 0; j < kmax; ++j)
    blocks_ge[j] = dims[j] - (j == 0 ? 0 : dims[j - 1]);

  std::vector<Chain> chains;
  for (std::size_t h = kmax; h >= 1; --h) {
    const std::size_t exact =
        blocks_ge[h - 1] - (h == kmax ? 0 : blocks_ge[h]);
    if (exact == 0) {
      if (h == 1) break;
      continue;
    }
    // Forbidden directions at height h: null(A^(h-1)) plus the height-h
    // vectors of chains longer than h.
    std::size_t extra = 0;
    for (const auto &c : chains)
      if (c.vectors.size() > h) ++extra;
    ComplexMatrix forbidden(n, (h > 1 ? kernels[h - 2].cols() : 0) + extra);
    std::size_t col = 0;
    if (h > 1)
      for (std::size_t j = 0; j < kernels[h - 2].cols(); ++j, ++col)
        for (std::size_t i = 0; i < n; ++i)
          forbidden(i, col) = kernels[h - 2](i, j);
    for (const auto &c : chains)
      if (c.vectors.size() > h) {
        for (std::size_t i = 0; i < n; ++i)
          forbidden(i, col) = c.vectors[h - 1][i];
        ++col;
      }
    ComplexMatrix fresh = project_out(kernels[h - 1], forbidden);
    Svd dec = svd(fresh);
    if (dec.singular_values.size() < exact ||
        dec.singular_values[exact - 1] < 1e-8)
      throw IllConditionedBasis(
          "could not extract well-conditioned Jordan chain heads");
    for (std::size_t c = 0; c < exact; ++c) {
      std::vector<complex_t> head(n);
      for (std::size_t i = 0; i < n; ++i) head[i] = dec.u(i, c);
      Chain chain;
      chain.vectors.resize(h);
      chain.vectors[h - 1] = head;
      for (std::size_t t = h - 1; t >= 1; --t)
        chain.vectors[t - 1] = a.apply(chain.vectors[t]);
      chains.push_back(std::move(chain));
    }
    if (h == 1) break;
  }
  return chains;
}

} // namespace detail

// Jordan decomposition M = Q J Q^-1 with eigenvalue clustering.
// Eigenvalues are computed by a unitary Schur reduction; the zero cluster
// is sized by the rank sequence of powers of M; within every cluster the
// block structure comes from rank decisions on (M - mean*I)^j.
inline SpectralDecomposition spectral_decompose(
    const ComplexMatrix &m, const SpectralOptions &opts = {}) {
  if (!m.is_square())
    throw ShapeMismatch("spectral decomposition needs a square matrix");
  const std::size_t n = m.rows();
  Schur dec = schur(m);
  std::vector<complex_t> eig(n);
  for (std::size_t i = 0; i < n; ++i) eig[i] = dec.t(i, i);

  const ZeroStructure zs = zero_structure(m, opts);
  // The zero cluster takes the `multiplicity` eigenvalues of smallest
  // modulus; any eigenvalue below tol_zero must land in it.
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(eig[a]) < std::abs(eig[b]);
  });
  std::vector<bool> in_zero(n, false);
  for (std::size_t i = 0; i < zs.multiplicity; ++i) in_zero[order[i]] = true;
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(eig[i]) <= opts.tol_zero && !in_zero[i])
      throw ClusterAmbiguity(
          "near-zero eigenvalue outside the rank-determined zero cluster");

  // Union-find clustering of the nonzero eigenvalues.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find =
      [&](std::size_t x) -> std::size_t {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (in_zero[i] != in_zero[j]) continue;
      if (in_zero[i] || std::abs(eig[i] - eig[j]) <= opts.eps_cluster)
        parent[find(i)] = find(j);
    }
  struct Cluster {
    complex_t mean;
    std::size_t mult = 0;
    bool zero = false;
  };
  std::vector<Cluster> clusters;
  std::vector<long> cluster_of(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = find(i);
    long idx = cluster_of[root];
    if (idx < 0) {
      idx = static_cast<long>(clusters.size());
      clusters.push_back({});
      cluster_of[root] = idx;
    }
    clusters[idx].mean += eig[i];
    clusters[idx].mult += 1;
    clusters[idx].zero = clusters[idx].zero || in_zero[i];
  }
  for (auto &c : clusters) {
    c.mean /= static_cast<double>(c.mult);
    if (c.zero) c.mean = 0.0;
  }
  for (std::size_t i = 0; i < clusters.size(); ++i)
    for (std::size_t j = i + 1; j < clusters.size(); ++j)
      if (std::abs(clusters[i].mean - clusters[j].mean) <
          2.0 * opts.eps_cluster)
        throw ClusterAmbiguity("two eigenvalue clusters closer than twice "
                               "the clustering radius");

  // Deterministic ordering: descending modulus, the zero cluster last.
  std::sort(clusters.begin(), clusters.end(),
            [](const Cluster &a, const Cluster &b) {
              if (a.zero != b.zero) return b.zero;
              const double ma = std::abs(a.mean), mb = std::abs(b.mean);
              if (ma != mb) return ma > mb;
              if (a.mean.real() != b.mean.real())
                return a.mean.real() > b.mean.real();
              return a.mean.imag() > b.mean.imag();
            });

  SpectralDecomposition out;
  out.basis = ComplexMatrix(n, n);
  out.zero_index = zs.index;
  std::size_t col = 0;
  for (const auto &c : clusters) {
    std::vector<detail::Chain> chains;
    if (c.mult == 1 && !c.zero) {
      // Simple eigenvalue: null vector of (M - lambda I) via SVD.
      ComplexMatrix a = m;
      a -= c.mean * ComplexMatrix::identity(n);
      ComplexMatrix ns = detail::null_space(a, opts.tol_rank);
      if (ns.cols() == 0) {
        // The rank gate did not open; take the right singular vector of
        // the smallest singular value directly.
        Svd sv = svd(a);
        ns = ComplexMatrix(n, 1);
        for (std::size_t i = 0; i < n; ++i) ns(i, 0) = sv.v(i, n - 1);
      }
      detail::Chain chain;
      chain.vectors.push_back(std::vector<complex_t>(n));
      for (std::size_t i = 0; i < n; ++i) chain.vectors[0][i] = ns(i, 0);
      chains.push_back(std::move(chain));
    } else {
      ComplexMatrix a = m;
      if (!c.zero) a -= c.mean * ComplexMatrix::identity(n);
      chains = detail::jordan_chains(a, c.mult, opts);
    }
    // Longer chains first, scaled so the largest vector has unit norm.
    std::sort(chains.begin(), chains.end(),
              [](const detail::Chain &a, const detail::Chain &b) {
                return a.vectors.size() > b.vectors.size();
              });
    for (auto &chain : chains) {
      double scale = 0.0;
      for (const auto &v : chain.vectors)
        scale = std::max(scale, vector_norm2(v));
      if (scale == 0.0)
        throw NumericalError("zero Jordan chain vector");
      for (const auto &v : chain.vectors) {
        for (std::size_t i = 0; i < n; ++i)
          out.basis(i, col) = v[i] / scale;
        ++col;
      }
      out.blocks.push_back({c.mean, chain.vectors.size()});
    }
  }
  if (col != n)
    throw NumericalError("Jordan chains do not fill the space");

  out.basis_condition = condition_number(out.basis);
  if (!(out.basis_condition <= opts.cond_max))
    throw IllConditionedBasis("generalized eigenvector basis condition " +
                              std::to_string(out.basis_condition) +
                              " exceeds the allowed maximum");
  const ComplexMatrix recon =
      out.basis * out.jordan() * inverse(out.basis);
  const double scale = std::max(frobenius_norm(m), 1e-300);
  out.reconstruction_residual = frobenius_norm(recon - m) / scale;
  if (out.reconstruction_residual > opts.tol_jordan)
    throw NumericalError("Jordan reconstruction residual " +
                         std::to_string(out.reconstruction_residual) +
                         " too large");
  return out;
}

//=========================================================================
// Drazin inverse
//=========================================================================

enum class DrazinBackend { Schur, Spectral };

struct DrazinOptions {
  SpectralOptions spectral;
  DrazinBackend backend = DrazinBackend::Schur;
  bool cross_check = true;   // also run the other backend and compare
  double tol_backend = 1e-6; // allowed disagreement between backends
  double tol_check = 1e-8;   // defining-property residuals
};

namespace detail {

inline ComplexMatrix drazin_schur(const ComplexMatrix &m,
                                  const SpectralOptions &opts) {
  const std::size_t n = m.rows();
  const ZeroStructure zs = zero_structure(m, opts);
  const std::size_t q = zs.multiplicity;
  if (q == 0) return inverse(m);
  if (q == n) return ComplexMatrix(n, n); // nilpotent: Drazin is zero

  Schur dec = schur(m);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(dec.t(a, a)) < std::abs(dec.t(b, b));
  });
  std::vector<bool> flags(n, false);
  for (std::size_t i = 0; i < q; ++i) flags[order[i]] = true;
  schur_move_flagged_to_trailing(dec, flags);

  const std::size_t p = n - q;
  ComplexMatrix t11(p, p), t12(p, q), t22(q, q);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) t11(i, j) = dec.t(i, j);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) t12(i, j) = dec.t(i, p + j);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) t22(i, j) = dec.t(p + i, p + j);
  // The trailing block is nilpotent up to roundoff; drop its diagonal so
  // powers terminate exactly.
  for (std::size_t i = 0; i < q; ++i) t22(i, i) = 0.0;

  const ComplexMatrix t11_inv = inverse(t11);
  // Coupling block S = sum_{i=0}^{k-1} T11^-(i+2) T12 T22^i. The formula
  // is plumbing; the Drazin defining properties are verified downstream.
  ComplexMatrix s(p, q);
  ComplexMatrix left = t11_inv * t11_inv;
  ComplexMatrix right = ComplexMatrix::identity(q);
  const std::size_t k = std::max<std::size_t>(zs.index, 1);
  for (std::size_t i = 0; i < k; ++i) {
    s += left * t12 * right;
    if (i + 1 < k) {
      left = left * t11_inv;
      right = right * t22;
    }
  }
  ComplexMatrix d(n, n);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < p; ++j) d(i, j) = t11_inv(i, j);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = 0; j < q; ++j) d(i, p + j) = s(i, j);
  return dec.u * d * dec.u.adjoint();
}

inline ComplexMatrix drazin_spectral(const ComplexMatrix &m,
                                     const SpectralOptions &opts) {
  const SpectralDecomposition sd = spectral_decompose(m, opts);
  const std::size_t n = m.rows();
  ComplexMatrix jprime(n, n);
  std::size_t off = 0;
  for (const auto &b : sd.blocks) {
    if (std::abs(b.eigenvalue) > 0.0) {
      // Inverse of the k x k Jordan block: entries (-1)^i / lambda^(i+1)
      // on the i-th superdiagonal.
      for (std::size_t r = 0; r < b.size; ++r) {
        complex_t coeff = 1.0 / b.eigenvalue;
        for (std::size_t cidx = r; cidx < b.size; ++cidx) {
          jprime(off + r, off + cidx) = coeff;
          coeff *= -1.0 / b.eigenvalue;
        }
      }
    }
    // Zero-eigenvalue blocks stay zero: the Drazin choice of the free
    // nilpotent block.
    off += b.size;
  }
  const ComplexMatrix x = sd.basis * jprime;
  // M+ = X Q^-1, solved as Q^T (M+)^T = X^T.
  return solve(sd.basis.transpose(), x.transpose()).transpose();
}

inline void verify_drazin(const ComplexMatrix &m, const ComplexMatrix &d,
                          std::size_t index, double tol) {
  const double scale = std::max({1.0, m.max_abs(), d.max_abs()});
  const ComplexMatrix md = m * d;
  const ComplexMatrix dm = d * m;
  if (max_abs_diff(md, dm) > tol * scale)
    throw NumericalError("Drazin candidate does not commute with the input");
  if (max_abs_diff(d * md, d) > tol * scale * scale)
    throw NumericalError("Drazin candidate fails M+ M M+ = M+");
  ComplexMatrix mk = matrix_power(m, index);
  if (max_abs_diff(mk * md, mk) > tol * scale * scale)
    throw NumericalError("Drazin candidate fails M^(k+1) M+ = M^k");
  // M M+ is idempotent with spectrum in {0, 1}.
  if (max_abs_diff(md * md, md) > tol * scale * scale)
    throw NumericalError("M M+ is not idempotent");
}

} // namespace detail

// Drazin inverse of a square matrix.
inline ComplexMatrix drazin_inverse_matrix(const ComplexMatrix &m,
                                           const DrazinOptions &opts = {}) {
  if (!m.is_square())
    throw ShapeMismatch("Drazin inverse needs a square matrix");
  const ComplexMatrix primary = opts.backend == DrazinBackend::Schur
                                    ? detail::drazin_schur(m, opts.spectral)
                                    : detail::drazin_spectral(m, opts.spectral);
  if (opts.cross_check) {
    const ComplexMatrix other = opts.backend == DrazinBackend::Schur
                                    ? detail::drazin_spectral(m, opts.spectral)
                                    : detail::drazin_schur(m, opts.spectral);
    const double scale = std::max(1.0, primary.max_abs());
    if (max_abs_diff(primary, other) > opts.tol_backend * scale)
      throw BackendDisagreement(
          "Schur and spectral Drazin constructions disagree");
  }
  detail::verify_drazin(m, primary, zero_structure(m, opts.spectral).index,
                        opts.tol_check);
  return primary;
}

//=========================================================================
// Channel-level operations
//=========================================================================

enum class Invertibility {
  InvertibleCPTPInverse,
  InvertibleNonCPInverse,
  NonInvertible,
};

inline std::string to_string(Invertibility k) {
  switch (k) {
    case Invertibility::InvertibleCPTPInverse: return "invertible-cptp-inverse";
    case Invertibility::InvertibleNonCPInverse:
      return "invertible-non-cp-inverse";
    case Invertibility::NonInvertible: return "non-invertible";
  }
  return "?";
}

struct InvertibilityClass {
  Invertibility kind = Invertibility::NonInvertible;
  // Smallest singular value of the natural form; the operational witness
  // of (non-)invertibility. NonInvertible iff witness <= tol_zero.
  double witness = 0.0;
  std::optional<PropertyVerdict> inverse_verdict;
};

// Exact inverse through the natural form. The TP/HP postcondition is
// verified with a condition-number-aware tolerance.
inline ChannelRep exact_inverse(const ChannelRep &ch,
                                const SpectralOptions &opts = {},
                                const Tolerances &tol = {}) {
  if (!ch.square())
    throw DimensionMismatch("exact inverse needs dim_in == dim_out");
  const ComplexMatrix m = ch.natural_matrix();
  const auto sv = singular_values(m);
  if (sv.empty() || sv.back() <= opts.tol_zero)
    throw NonInvertibleChannel("channel natural form is singular");
  const ComplexMatrix minv = inverse(m);
  const double cond = sv.front() / sv.back();
  const double slack = std::max(1.0, 1e-6 * cond);
  if (max_abs_diff(m * minv, ComplexMatrix::identity(m.rows())) >
      1e-10 * slack)
    throw NumericalError("inverse composition residual too large");
  ChannelRep out = ChannelRep::from_natural(ch.dim_out(), ch.dim_in(), minv);
  const PropertyVerdict in_verdict = check_properties(ch, tol);
  if (in_verdict.is_tp || in_verdict.is_hp) {
    Tolerances relaxed = tol;
    relaxed.tp = std::max(tol.tp, tol.tp * slack);
    relaxed.herm = std::max(tol.herm, tol.herm * slack);
    const PropertyVerdict out_verdict = check_properties(out, relaxed);
    if (in_verdict.is_tp && !out_verdict.is_tp)
      throw NumericalError("inverse of a TP channel failed the TP check");
    if (in_verdict.is_hp && !out_verdict.is_hp)
      throw NumericalError("inverse of an HP channel failed the HP check");
  }
  return out;
}

inline InvertibilityClass classify(const ChannelRep &ch,
                                   const SpectralOptions &opts = {},
                                   const Tolerances &tol = {}) {
  if (!ch.square())
    throw DimensionMismatch("classification needs dim_in == dim_out");
  InvertibilityClass out;
  const auto sv = singular_values(ch.natural_matrix());
  out.witness = sv.empty() ? 0.0 : sv.back();
  if (out.witness <= opts.tol_zero) {
    out.kind = Invertibility::NonInvertible;
    return out;
  }
  const ChannelRep inv = exact_inverse(ch, opts, tol);
  out.inverse_verdict = check_properties(inv, tol);
  out.kind = (out.inverse_verdict->is_cp && out.inverse_verdict->is_tp)
                 ? Invertibility::InvertibleCPTPInverse
                 : Invertibility::InvertibleNonCPInverse;
  return out;
}

// Drazin inverse of a channel; TP inputs must give TP outputs (Theorem-2
// behaviour, enforced as a checked postcondition).
inline ChannelRep drazin_inverse(const ChannelRep &ch,
                                 const DrazinOptions &opts = {},
                                 const Tolerances &tol = {}) {
  if (!ch.square())
    throw DimensionMismatch("Drazin inverse needs dim_in == dim_out");
  const ComplexMatrix m = ch.natural_matrix();
  ChannelRep out = ChannelRep::from_natural(
      ch.dim_in(), ch.dim_out(), drazin_inverse_matrix(m, opts));
  const PropertyVerdict in_verdict = check_properties(ch, tol);
  if (in_verdict.is_tp) {
    Tolerances relaxed = tol;
    relaxed.tp = std::max(tol.tp, opts.tol_check);
    if (!check_properties(out, relaxed).is_tp)
      throw NumericalError("Drazin inverse of a TP channel failed the TP "
                           "postcondition");
  }
  return out;
}

// SVD pseudoinverse with singular values <= tol_zero zeroed; the four
// Penrose conditions are verified.
inline ChannelRep moore_penrose(const ChannelRep &ch,
                                const SpectralOptions &opts = {}) {
  const ComplexMatrix m = ch.natural_matrix();
  const ComplexMatrix p = pseudo_inverse(m, opts.tol_zero);
  const double scale = std::max({1.0, m.max_abs(), p.max_abs()});
  const ComplexMatrix mp = m * p, pm = p * m;
  if (max_abs_diff(mp * m, m) > 1e-10 * scale * scale ||
      max_abs_diff(pm * p, p) > 1e-10 * scale * scale ||
      hermiticity_residual(mp) > 1e-10 * scale ||
      hermiticity_residual(pm) > 1e-10 * scale)
    throw NumericalError("Penrose condition residual too large");
  return ChannelRep::from_natural(ch.dim_out(), ch.dim_in(), p);
}

// A nonzero eigenvalue of the natural form with modulus strictly inside
// (tol_zero, 1 - tol_zero), if one exists. For CPTP inputs the presence of
// such an eigenvalue forces a non-CP (Drazin-)inverse, which is asserted.
inline std::optional<complex_t> non_cp_witness(const ChannelRep &ch,
                                               const DrazinOptions &opts = {},
                                               const Tolerances &tol = {}) {
  if (!ch.square())
    throw DimensionMismatch("witness search needs dim_in == dim_out");
  std::optional<complex_t> witness;
  for (const auto &lam : eigenvalues(ch.natural_matrix())) {
    const double mod = std::abs(lam);
    if (mod > opts.spectral.tol_zero && mod < 1.0 - opts.spectral.tol_zero)
      if (!witness || mod > std::abs(*witness)) witness = lam;
  }
  if (witness) {
    const PropertyVerdict v = check_properties(ch, tol);
    if (v.is_cp && v.is_tp) {
      const ChannelRep dr = drazin_inverse(ch, opts, tol);
      if (check_properties(dr, tol).min_choi_eigenvalue >= -tol.cp)
        throw NumericalError(
            "contractive eigenvalue present but the quasi-inverse looks CP");
    }
  }
  return witness;
}

} // namespace qemtk

#endif // QEMTK_INVERSES_HPP
