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

#ifndef QEMTK_NOISEMODELS_HPP
#define QEMTK_NOISEMODELS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "qemtk/matrep.hpp"
#include "qemtk/rng.hpp"

namespace qemtk {

//=========================================================================
// Pauli-type channel families
//=========================================================================

struct PauliChannelParams {
  double p1 = 1.0; // identity weight
  double p2 = 0.0; // X weight
  double p3 = 0.0; // Y weight; p4 = 1 - p1 - p2 - p3 is the Z weight

  double p4() const { return 1.0 - p1 - p2 - p3; }

  void validate() const {
    const double tol = 1e-12;
    if (p1 < -tol || p2 < -tol || p3 < -tol || p4() < -tol || p1 > 1.0 + tol ||
        p2 > 1.0 + tol || p3 > 1.0 + tol)
      throw ParamOutOfRange("Pauli channel weights must lie in [0, 1]");
  }
};

struct DepolarizingParams {
  double lambda = 0.0;
  void validate() const {
    if (lambda < 0.0 || lambda > 1.0)
      throw ParamOutOfRange("depolarizing strength must lie in [0, 1]");
  }
};

namespace detail {

inline ChannelRep checked_cptp(ChannelRep ch) {
  const PropertyVerdict v = check_properties(ch);
  if (!v.is_cp || !v.is_tp)
    throw NumericalError("constructed channel failed the CPTP check");
  return ch;
}

} // namespace detail

// Kraus set {sqrt(p1) I, sqrt(p2) X, sqrt(p3) Y, sqrt(p4) Z}.
inline ChannelRep pauli_channel(const PauliChannelParams &p) {
  p.validate();
  std::vector<ComplexMatrix> ops;
  const double w1 = std::max(p.p1, 0.0), w2 = std::max(p.p2, 0.0);
  const double w3 = std::max(p.p3, 0.0), w4 = std::max(p.p4(), 0.0);
  ops.push_back(std::sqrt(w1) * pauli_i());
  ops.push_back(std::sqrt(w2) * pauli_x());
  ops.push_back(std::sqrt(w3) * pauli_y());
  ops.push_back(std::sqrt(w4) * pauli_z());
  return detail::checked_cptp(natural_from_kraus(ops));
}

// Depolarizing channel of strength lambda: the Pauli channel with weights
// (1 - 3 lambda/4, lambda/4, lambda/4, lambda/4).
inline ChannelRep depolarizing(double lambda) {
  DepolarizingParams{lambda}.validate();
  return pauli_channel(
      {1.0 - 0.75 * lambda, 0.25 * lambda, 0.25 * lambda});
}

// Kraus set {diag(1, sqrt(1-gamma)), diag(0, sqrt(gamma))}.
inline ChannelRep phase_damping(double gamma) {
  if (gamma < 0.0 || gamma > 1.0)
    throw ParamOutOfRange("phase damping strength must lie in [0, 1]");
  ComplexMatrix k0{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}};
  ComplexMatrix k1{{0.0, 0.0}, {0.0, std::sqrt(gamma)}};
  return detail::checked_cptp(natural_from_kraus({k0, k1}));
}

//=========================================================================
// Dilation-and-partial-trace channels
//=========================================================================

// Channel obtained by acting with a joint unitary on system (x) environment
// and tracing out the environment: rho -> Tr_env[U (rho (x) sigma) U^dag].
// `traced` names the tensor factor holding the environment (0 = first,
// 1 = second). Kraus operators are extracted by projecting U onto an
// eigenbasis of sigma.
inline ChannelRep channel_from_dilation(const ComplexMatrix &u,
                                        const DensityMatrix &sigma_env,
                                        std::size_t traced,
                                        double tol_unitary = 1e-9) {
  if (!is_unitary(u, tol_unitary))
    throw NonUnitaryInput("dilation unitary fails the unitarity check");
  if (traced > 1)
    throw ParamOutOfRange("traced subsystem id must be 0 or 1");
  const std::size_t d_total = u.rows();
  const std::size_t d_env = sigma_env.dim();
  if (d_total % d_env != 0)
    throw DimensionMismatch("joint dimension does not factor over the "
                            "environment dimension");
  const std::size_t d_sys = d_total / d_env;

  HermitianEig es = eigh(sigma_env.matrix());
  std::vector<ComplexMatrix> kraus;
  for (std::size_t j = 0; j < d_env; ++j) {
    const double mu = es.values[j];
    if (mu <= 1e-14) continue;
    const double w = std::sqrt(mu);
    for (std::size_t i = 0; i < d_env; ++i) {
      ComplexMatrix k(d_sys, d_sys);
      for (std::size_t r = 0; r < d_sys; ++r)
        for (std::size_t c = 0; c < d_sys; ++c) {
          complex_t acc = 0.0;
          for (std::size_t e = 0; e < d_env; ++e) {
            const std::size_t row =
                traced == 1 ? r * d_env + i : i * d_sys + r;
            const std::size_t col =
                traced == 1 ? c * d_env + e : e * d_sys + c;
            acc += u(row, col) * es.vectors(e, j);
          }
          k(r, c) = w * acc;
        }
      kraus.push_back(std::move(k));
    }
  }
  return detail::checked_cptp(natural_from_kraus(kraus));
}

// CNOT on two qubits, control first: |a, b> -> |a, b xor a>.
inline ComplexMatrix cnot_matrix() {
  ComplexMatrix u(4, 4);
  u(0, 0) = 1.0;
  u(1, 1) = 1.0;
  u(2, 3) = 1.0;
  u(3, 2) = 1.0;
  return u;
}

//=========================================================================
// Worked-example fixtures (exact rational payloads)
//=========================================================================

namespace detail {

inline complex_t frac(double pn, double pd, double qn = 0.0,
                      double qd = 1.0) {
  return complex_t(pn / pd, qn / qd);
}

} // namespace detail

// Named channels with exact rational entries. Available names:
//   example1, example1_natural, example1_inverse, example1_inverse_choi,
//   example2, example2_natural, example2_drazin, example2_drazin_choi,
//   example2_mp, example2_mp_choi.
inline ChannelRep fixture(const std::string &name) {
  using detail::frac;
  if (name == "example1") {
    ComplexMatrix c{
        {frac(3, 4), 0.0, frac(0, 1, -1, 8), frac(1, 2, 1, 8)},
        {0.0, frac(1, 4), frac(0, 1, -1, 8), frac(0, 1, 1, 8)},
        {frac(0, 1, 1, 8), frac(0, 1, 1, 8), frac(1, 4), 0.0},
        {frac(1, 2, -1, 8), frac(0, 1, -1, 8), 0.0, frac(3, 4)}};
    return ChannelRep::from_choi(2, 2, std::move(c));
  }
  if (name == "example1_natural") {
    ComplexMatrix m{
        {frac(3, 4), frac(0, 1, 1, 8), frac(0, 1, -1, 8), frac(1, 4)},
        {0.0, frac(1, 2, -1, 8), frac(0, 1, -1, 8), 0.0},
        {0.0, frac(0, 1, 1, 8), frac(1, 2, 1, 8), 0.0},
        {frac(1, 4), frac(0, 1, -1, 8), frac(0, 1, 1, 8), frac(3, 4)}};
    return ChannelRep::from_natural(2, 2, std::move(m));
  }
  if (name == "example1_inverse") {
    ComplexMatrix m{
        {frac(3, 2), frac(1, 4, -1, 2), frac(1, 4, 1, 2), frac(-1, 2)},
        {0.0, frac(2, 1, 1, 2), frac(0, 1, 1, 2), 0.0},
        {0.0, frac(0, 1, -1, 2), frac(2, 1, -1, 2), 0.0},
        {frac(-1, 2), frac(-1, 4, 1, 2), frac(-1, 4, -1, 2), frac(3, 2)}};
    return ChannelRep::from_natural(2, 2, std::move(m));
  }
  if (name == "example1_inverse_choi") {
    ComplexMatrix c{
        {frac(3, 2), 0.0, frac(1, 4, 1, 2), frac(2, 1, -1, 2)},
        {0.0, frac(-1, 2), frac(0, 1, 1, 2), frac(-1, 4, -1, 2)},
        {frac(1, 4, -1, 2), frac(0, 1, -1, 2), frac(-1, 2), 0.0},
        {frac(2, 1, 1, 2), frac(-1, 4, 1, 2), 0.0, frac(3, 2)}};
    return ChannelRep::from_choi(2, 2, std::move(c));
  }
  if (name == "example2") {
    ComplexMatrix c{{frac(8, 20), 0.0, frac(1, 20), frac(6, 20)},
                    {0.0, frac(12, 20), frac(2, 20), frac(-1, 20)},
                    {frac(1, 20), frac(2, 20), frac(8, 20), 0.0},
                    {frac(6, 20), frac(-1, 20), 0.0, frac(12, 20)}};
    return ChannelRep::from_choi(2, 2, std::move(c));
  }
  if (name == "example2_natural") {
    ComplexMatrix m{{frac(8, 20), frac(1, 20), frac(1, 20), frac(8, 20)},
                    {0.0, frac(6, 20), frac(2, 20), 0.0},
                    {0.0, frac(2, 20), frac(6, 20), 0.0},
                    {frac(12, 20), frac(-1, 20), frac(-1, 20), frac(12, 20)}};
    return ChannelRep::from_natural(2, 2, std::move(m));
  }
  if (name == "example2_drazin") {
    ComplexMatrix m{{frac(2, 5), frac(5, 16), frac(5, 16), frac(2, 5)},
                    {0.0, frac(15, 4), frac(-5, 4), 0.0},
                    {0.0, frac(-5, 4), frac(15, 4), 0.0},
                    {frac(3, 5), frac(-5, 16), frac(-5, 16), frac(3, 5)}};
    return ChannelRep::from_natural(2, 2, std::move(m));
  }
  if (name == "example2_drazin_choi") {
    ComplexMatrix c{{frac(2, 5), 0.0, frac(5, 16), frac(15, 4)},
                    {0.0, frac(3, 5), frac(-5, 4), frac(-5, 16)},
                    {frac(5, 16), frac(-5, 4), frac(2, 5), 0.0},
                    {frac(15, 4), frac(-5, 16), 0.0, frac(3, 5)}};
    return ChannelRep::from_choi(2, 2, std::move(c));
  }
  if (name == "example2_mp") {
    ComplexMatrix m{
        {frac(115, 294), frac(10, 441), frac(10, 441), frac(505, 882)},
        {frac(50, 147), frac(3245, 882), frac(-1165, 882), frac(-100, 441)},
        {frac(50, 147), frac(-1165, 882), frac(3245, 882), frac(-100, 441)},
        {frac(115, 294), frac(10, 441), frac(10, 441), frac(505, 882)}};
    return ChannelRep::from_natural(2, 2, std::move(m));
  }
  if (name == "example2_mp_choi") {
    ComplexMatrix c{
        {frac(115, 294), frac(50, 147), frac(10, 441), frac(3245, 882)},
        {frac(50, 147), frac(115, 294), frac(-1165, 882), frac(10, 441)},
        {frac(10, 441), frac(-1165, 882), frac(505, 882), frac(-100, 441)},
        {frac(3245, 882), frac(10, 441), frac(-100, 441), frac(505, 882)}};
    return ChannelRep::from_choi(2, 2, std::move(c));
  }
  throw UnknownFixture("unknown fixture name: " + name);
}

//=========================================================================
// Seeded random channels and states
//=========================================================================

// Random CPTP channel of the given Kraus rank via a Haar-distributed
// Stinespring isometry: rank 1 gives a unitary channel.
inline ChannelRep random_channel(std::size_t d, std::size_t rank, Rng &rng) {
  if (d < 1 || rank < 1) throw ParamOutOfRange("dimension and rank must be >= 1");
  Eigen::MatrixXcd g(d * rank, d);
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      const complex_t z = rng.complex_gaussian();
      g(i, j) = z;
    }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd v =
      qr.householderQ() * Eigen::MatrixXcd::Identity(d * rank, d);
  std::vector<ComplexMatrix> kraus(rank, ComplexMatrix(d, d));
  for (std::size_t k = 0; k < rank; ++k)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        kraus[k](r, c) = v(static_cast<Eigen::Index>(k * d + r),
                           static_cast<Eigen::Index>(c));
  return detail::checked_cptp(natural_from_kraus(kraus));
}

inline ChannelRep random_channel(std::size_t d, std::size_t rank,
                                 std::uint64_t seed) {
  Rng rng(seed);
  return random_channel(d, rank, rng);
}

enum class StateEnsemble { PureUniform, MixedTraceInduced };

// Random density matrix: uniform pure states, or mixed states induced by
// tracing a Haar-random pure state over an environment of equal dimension.
inline DensityMatrix random_state(std::size_t d, StateEnsemble kind,
                                  Rng &rng) {
  if (d < 1) throw ParamOutOfRange("dimension must be >= 1");
  if (kind == StateEnsemble::PureUniform) {
    std::vector<complex_t> amps(d);
    for (auto &a : amps) a = rng.complex_gaussian();
    return DensityMatrix::pure(amps);
  }
  const ComplexMatrix g = rng.gaussian_matrix(d, d);
  ComplexMatrix rho = g * g.adjoint();
  rho *= complex_t(1.0 / rho.trace().real(), 0.0);
  return DensityMatrix::from_matrix(rho);
}

inline DensityMatrix random_state(std::size_t d, StateEnsemble kind,
                                  std::uint64_t seed) {
  Rng rng(seed);
  return random_state(d, kind, rng);
}

// Random Hermitian observable with unit Frobenius norm.
inline Observable random_observable(std::size_t d, Rng &rng) {
  ComplexMatrix h = hermitian_part(rng.gaussian_matrix(d, d));
  const double n = frobenius_norm(h);
  if (n > 0.0) h *= complex_t(1.0 / n, 0.0);
  return Observable::from_matrix(h);
}

} // namespace qemtk

#endif // QEMTK_NOISEMODELS_HPP
