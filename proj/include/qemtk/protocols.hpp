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

#ifndef QEMTK_PROTOCOLS_HPP
#define QEMTK_PROTOCOLS_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "qemtk/classical.hpp"
#include "qemtk/matrep.hpp"
#include "qemtk/rng.hpp"

// Desk-scale reference implementations of the standard error-mitigation
// protocols: Richardson (and two-point linear/exponential) extrapolation,
// quasiprobability decomposition and sampling, readout-matrix inversion,
// and virtual distillation.

namespace qemtk {

//=========================================================================
// Extrapolation
//=========================================================================

struct ExtrapolationInput {
  std::vector<double> scales; // noise scale factors lambda_i > 0, distinct
  std::vector<double> values; // measured <A>(lambda_i eps)
};

struct RichardsonResult {
  double value = 0.0;
  std::vector<double> coefficients; // r_i with sum r_i = 1
};

// Richardson weights r_i = prod_{j != i} lambda_j / (lambda_j - lambda_i):
// the Lagrange interpolant evaluated at zero noise. A single point means
// no mitigation (r_1 = 1).
inline RichardsonResult richardson_extrapolate(const ExtrapolationInput &in) {
  const std::size_t n = in.scales.size();
  if (n == 0 || in.values.size() != n)
    throw ShapeMismatch("scales and values must be non-empty and equal-sized");
  for (std::size_t i = 0; i < n; ++i) {
    if (in.scales[i] <= 0.0)
      throw ParamOutOfRange("scale factors must be positive");
    for (std::size_t j = i + 1; j < n; ++j)
      if (std::abs(in.scales[i] - in.scales[j]) <=
          1e-12 * std::max(in.scales[i], in.scales[j]))
        throw DegenerateScales("scale factors must be pairwise distinct");
  }
  RichardsonResult out;
  out.coefficients.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = 1.0;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) r *= in.scales[j] / (in.scales[j] - in.scales[i]);
    out.coefficients[i] = r;
    out.value += r * in.values[i];
  }
  return out;
}

enum class ExtrapolationFit { Richardson, Linear, Exponential };

// Two-point linear or exponential extrapolation to zero noise; Richardson
// accepts any number of points.
inline double extrapolate(const ExtrapolationInput &in, ExtrapolationFit fit) {
  if (fit == ExtrapolationFit::Richardson)
    return richardson_extrapolate(in).value;
  if (in.scales.size() != 2 || in.values.size() != 2)
    throw ShapeMismatch("linear/exponential extrapolation needs two points");
  const double l1 = in.scales[0], l2 = in.scales[1];
  const double v1 = in.values[0], v2 = in.values[1];
  if (std::abs(l1 - l2) <= 1e-12 * std::max(l1, l2))
    throw DegenerateScales("scale factors must be distinct");
  if (fit == ExtrapolationFit::Linear)
    return v1 + (v2 - v1) * (0.0 - l1) / (l2 - l1);
  if (v1 == 0.0 || v2 == 0.0 || (v1 > 0.0) != (v2 > 0.0))
    throw ParamOutOfRange(
        "exponential fit needs same-sign nonzero measurements");
  // v(l) = A exp(-B l); solve for A = v(0).
  const double b = std::log(v1 / v2) / (l2 - l1);
  return v1 * std::exp(b * l1);
}

//=========================================================================
// Quasiprobability decomposition
//=========================================================================

struct QuasiprobDecomposition {
  std::vector<double> coefficients; // a_i, real
  double tau = 0.0;                 // sum |a_i|, the sampling cost
  double residual = 0.0;            // reconstruction residual

  std::vector<double> sampling_probabilities() const {
    std::vector<double> p(coefficients.size());
    for (std::size_t i = 0; i < p.size(); ++i)
      p[i] = std::abs(coefficients[i]) / tau;
    return p;
  }
};

// Real least-squares expansion of the target natural form over the basis
// channels' natural forms; the residual gate rejects targets outside the
// basis span.
inline QuasiprobDecomposition quasiprob_decompose(
    const ChannelRep &target, const std::vector<ChannelRep> &basis,
    double tol_span = 1e-9) {
  if (basis.empty()) throw ShapeMismatch("empty decomposition basis");
  const ComplexMatrix t = target.natural_matrix();
  const std::size_t m = t.rows() * t.cols();
  Eigen::MatrixXd g(2 * m, basis.size());
  Eigen::VectorXd b(2 * m);
  const auto tv = t.data();
  for (std::size_t r = 0; r < m; ++r) {
    b(r) = tv[r].real();
    b(m + r) = tv[r].imag();
  }
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const ComplexMatrix gk = basis[k].natural_matrix();
    if (gk.rows() != t.rows() || gk.cols() != t.cols())
      throw ShapeMismatch("basis channel dimension mismatch");
    for (std::size_t r = 0; r < m; ++r) {
      g(r, k) = gk.data()[r].real();
      g(m + r, k) = gk.data()[r].imag();
    }
  }
  Eigen::VectorXd a =
      g.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
  QuasiprobDecomposition out;
  out.residual = (g * a - b).norm();
  if (out.residual > tol_span)
    throw TargetOutsideSpan("target is not in the span of the basis "
                            "(residual " +
                            std::to_string(out.residual) + ")");
  out.coefficients.assign(a.data(), a.data() + a.size());
  for (double c : out.coefficients) out.tau += std::abs(c);
  return out;
}

struct QuasiprobEstimate {
  double estimate = 0.0;
  double stderr_mean = 0.0;
};

// Monte-Carlo estimator tau * sgn(a_i) * shot, with the basis index drawn
// from p_i = |a_i| / tau and one +-1 shot drawn from each selected basis
// expectation value. Unbiased for sum_i a_i <A>_i; the variance carries
// the tau^2 sampling-cost amplification.
inline QuasiprobEstimate quasiprob_estimate(
    const QuasiprobDecomposition &dec,
    const std::vector<double> &noisy_exp_values, std::size_t n_samples,
    std::uint64_t seed) {
  if (noisy_exp_values.size() != dec.coefficients.size())
    throw LengthMismatch("one expectation value per basis element required");
  for (double v : noisy_exp_values)
    if (v < -1.0 || v > 1.0)
      throw ParamOutOfRange("shot model needs expectation values in [-1, 1]");
  if (n_samples == 0) throw ParamOutOfRange("need at least one sample");
  const std::vector<double> probs = dec.sampling_probabilities();
  Rng rng(seed);
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    double u = rng.uniform();
    std::size_t idx = probs.size() - 1;
    for (std::size_t i = 0; i < probs.size(); ++i) {
      if (u < probs[i]) {
        idx = i;
        break;
      }
      u -= probs[i];
    }
    const double shot =
        rng.bernoulli(0.5 * (1.0 + noisy_exp_values[idx])) ? 1.0 : -1.0;
    const double sgn = dec.coefficients[idx] < 0.0 ? -1.0 : 1.0;
    const double x = dec.tau * sgn * shot;
    sum += x;
    sum_sq += x * x;
  }
  QuasiprobEstimate out;
  const double n = static_cast<double>(n_samples);
  out.estimate = sum / n;
  const double var = std::max(sum_sq / n - out.estimate * out.estimate, 0.0);
  out.stderr_mean = std::sqrt(var / n);
  return out;
}

//=========================================================================
// Readout mitigation
//=========================================================================

using ReadoutMatrix = StochasticMatrix;

struct ReadoutResult {
  std::vector<double> p;
  bool has_negative = false; // raw inversion can be a quasi-distribution
};

// Euclidean projection onto the probability simplex.
inline std::vector<double> project_to_simplex(const std::vector<double> &v) {
  std::vector<double> u = v;
  std::sort(u.begin(), u.end(), std::greater<double>());
  double cumsum = 0.0, theta = 0.0;
  std::size_t rho = 0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    cumsum += u[j];
    const double candidate =
        (1.0 - cumsum) / static_cast<double>(j + 1);
    if (u[j] + candidate > 0.0) {
      rho = j + 1;
      theta = candidate;
    }
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = std::max(v[i] + theta, 0.0);
  (void)rho;
  return out;
}

inline ReadoutResult readout_mitigate(const ReadoutMatrix &t,
                                      const std::vector<double> &p_noisy,
                                      bool project = false,
                                      double tol_singular = 1e-12) {
  if (p_noisy.size() != t.size())
    throw LengthMismatch("distribution length does not match the matrix");
  Eigen::MatrixXd m = t.as_eigen();
  Eigen::JacobiSVD<Eigen::MatrixXd> dec(m);
  const auto &sv = dec.singularValues();
  if (sv(sv.size() - 1) <= tol_singular * sv(0))
    throw SingularReadoutMatrix("readout matrix is singular");
  Eigen::VectorXd b(p_noisy.size());
  for (std::size_t i = 0; i < p_noisy.size(); ++i) b(i) = p_noisy[i];
  Eigen::VectorXd x = m.partialPivLu().solve(b);
  ReadoutResult out;
  out.p.assign(x.data(), x.data() + x.size());
  for (double v : out.p)
    if (v < -1e-12) out.has_negative = true;
  if (project && out.has_negative) out.p = project_to_simplex(out.p);
  return out;
}

//=========================================================================
// Virtual distillation
//=========================================================================

// Effective state rho^m / Tr[rho^m]. The maximally mixed state is a fixed
// point for every m; that is degenerate input, not an error.
inline DensityMatrix virtual_distill(const DensityMatrix &rho, std::size_t m,
                                     double tol = 1e-14) {
  if (m < 1) throw ParamOutOfRange("copy count must be >= 1");
  if (m == 1) return rho;
  HermitianEig es = eigh(rho.matrix());
  const std::size_t d = rho.dim();
  double norm = 0.0;
  std::vector<double> powered(d);
  for (std::size_t i = 0; i < d; ++i) {
    powered[i] = std::pow(std::max(es.values[i], 0.0),
                          static_cast<double>(m));
    norm += powered[i];
  }
  if (norm <= tol)
    throw DegenerateInput("Tr[rho^m] vanishes; input is not a state");
  ComplexMatrix diag(d, d);
  for (std::size_t i = 0; i < d; ++i) diag(i, i) = powered[i] / norm;
  return DensityMatrix::from_matrix(es.vectors * diag *
                                    es.vectors.adjoint());
}

inline double purity(const DensityMatrix &rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

} // namespace qemtk

#endif // QEMTK_PROTOCOLS_HPP
