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

#ifndef QEMTK_CLASSICAL_HPP
#define QEMTK_CLASSICAL_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qemtk/errors.hpp"
#include "qemtk/rng.hpp"

// Classical baseline: binary symmetric channel, 3-bit repetition code with
// majority decoding, and distribution-level inversion.

namespace qemtk {

//=========================================================================
// Column-stochastic matrices
//=========================================================================

class StochasticMatrix {
public:
  StochasticMatrix(std::size_t k, std::vector<double> entries,
                   double tol = 1e-9)
      : k_(k), entries_(std::move(entries)) {
    if (entries_.size() != k_ * k_)
      throw ShapeMismatch("stochastic matrix entry count mismatch");
    for (std::size_t j = 0; j < k_; ++j) {
      double colsum = 0.0;
      for (std::size_t i = 0; i < k_; ++i) {
        if ((*this)(i, j) < -tol)
          throw InvalidMatrix("stochastic matrix has a negative entry");
        colsum += (*this)(i, j);
      }
      if (std::abs(colsum - 1.0) > tol)
        throw InvalidMatrix("stochastic matrix column does not sum to one");
    }
  }

  std::size_t size() const { return k_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * k_ + j];
  }
  const std::vector<double> &entries() const { return entries_; }

  std::vector<double> apply(const std::vector<double> &p) const {
    if (p.size() != k_) throw LengthMismatch("distribution length mismatch");
    std::vector<double> out(k_, 0.0);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j) out[i] += (*this)(i, j) * p[j];
    return out;
  }

  Eigen::MatrixXd as_eigen() const {
    Eigen::MatrixXd m(k_, k_);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

private:
  std::size_t k_;
  std::vector<double> entries_;
};

// Binary symmetric channel [[1-p, p], [p, 1-p]].
inline StochasticMatrix bsc(double p) {
  if (p < 0.0 || p > 1.0)
    throw ParamOutOfRange("flip probability must lie in [0, 1]");
  return StochasticMatrix(2, {1.0 - p, p, p, 1.0 - p});
}

//=========================================================================
// 3-bit repetition code
//=========================================================================

using BitString = std::vector<std::uint8_t>;

inline BitString bitstring_from_text(const std::string &s) {
  BitString out;
  out.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1')
      throw ParamOutOfRange("bit strings may contain only 0 and 1");
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

inline std::string bitstring_to_text(const BitString &s) {
  std::string out;
  out.reserve(s.size());
  for (auto b : s) out.push_back(b ? '1' : '0');
  return out;
}

inline BitString repetition_encode(const BitString &s) {
  BitString out;
  out.reserve(3 * s.size());
  for (auto b : s) {
    out.push_back(b);
    out.push_back(b);
    out.push_back(b);
  }
  return out;
}

inline BitString repetition_decode(const BitString &r) {
  if (r.size() % 3 != 0)
    throw LengthNotMultipleOf3("encoded length must be a multiple of 3");
  BitString out;
  out.reserve(r.size() / 3);
  for (std::size_t i = 0; i < r.size(); i += 3) {
    const int votes = r[i] + r[i + 1] + r[i + 2];
    out.push_back(votes >= 2 ? 1 : 0);
  }
  return out;
}

struct RepetitionErrorRate {
  double empirical = 0.0;
  double exact = 0.0;       // 3 p^2 (1-p) + p^3 by outcome enumeration
  double paper_value = 0.0; // leading-order 3 p^2 (1-p)
};

// Logical error rate of the 3-bit code under independent bit flips. The
// exact value keeps the triple-flip term that the leading-order expression
// drops; both are reported.
inline RepetitionErrorRate repetition_error_rate(double p,
                                                 std::size_t n_trials,
                                                 std::uint64_t seed) {
  if (p < 0.0 || p > 1.0)
    throw ParamOutOfRange("flip probability must lie in [0, 1]");
  RepetitionErrorRate out;
  out.exact = 3.0 * p * p * (1.0 - p) + p * p * p;
  out.paper_value = 3.0 * p * p * (1.0 - p);
  Rng rng(seed);
  std::size_t errors = 0;
  for (std::size_t t = 0; t < n_trials; ++t) {
    const int flips =
        int(rng.bernoulli(p)) + int(rng.bernoulli(p)) + int(rng.bernoulli(p));
    if (flips >= 2) ++errors;
  }
  out.empirical =
      n_trials == 0 ? 0.0
                    : static_cast<double>(errors) / static_cast<double>(n_trials);
  return out;
}

//=========================================================================
// Distribution inversion
//=========================================================================

struct InvertedDistribution {
  std::vector<double> p;
  // Finite-sample inputs can invert to quasi-distributions.
  bool has_negative = false;
};

inline InvertedDistribution invert_distribution(
    const StochasticMatrix &n, const std::vector<double> &observed,
    double tol_singular = 1e-12) {
  if (observed.size() != n.size())
    throw LengthMismatch("distribution length does not match the channel");
  Eigen::MatrixXd m = n.as_eigen();
  Eigen::JacobiSVD<Eigen::MatrixXd> dec(m, Eigen::ComputeThinU |
                                               Eigen::ComputeThinV);
  const auto &sv = dec.singularValues();
  if (sv(sv.size() - 1) <= tol_singular * sv(0))
    throw SingularChannel("channel matrix is singular; p = 1/2 case");
  Eigen::VectorXd b(observed.size());
  for (std::size_t i = 0; i < observed.size(); ++i) b(i) = observed[i];
  Eigen::VectorXd x = m.partialPivLu().solve(b);
  InvertedDistribution out;
  out.p.resize(observed.size());
  for (std::size_t i = 0; i < observed.size(); ++i) {
    out.p[i] = x(i);
    if (x(i) < -1e-12) out.has_negative = true;
  }
  return out;
}

} // namespace qemtk

#endif // QEMTK_CLASSICAL_HPP
