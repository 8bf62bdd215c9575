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

#ifndef QEMTK_ANALYSIS_HPP
#define QEMTK_ANALYSIS_HPP

#include <cmath>
#include <vector>

#include "qemtk/circuits.hpp"
#include "qemtk/noisemodels.hpp"

// Quantitative guarantees for QEM under imperfect noise knowledge: the
// per-layer characterization gaps, the first-order error expansion, the
// fidelity sandwich, the sufficient improvement condition, the
// observable-error bound and the Pauli-vs-depolarizing mismatch experiment.

namespace qemtk {

//=========================================================================
// Characterization-gap machinery
//=========================================================================

struct DeltaReport {
  std::vector<ComplexMatrix> delta_noise;   // v(N~_i) - v(N_i)
  std::vector<ComplexMatrix> delta_inverse; // v(N~_i^-1) - v(N_i^-1)
  ComplexMatrix total_delta;                // v(R~) - v(R)
  ComplexMatrix first_order_delta;          // single-replacement sum
  double consistency_residual = 0.0;        // worst layer identity residual
};

// The gaps Delta N_i and Delta N_i^-1 obey
// Delta N_i N~_i^-1 + N_i Delta N_i^-1 = 0; the identity is verified per
// layer. The first-order total keeps every factor of the estimated
// reversal chain except one, which is replaced by Delta N_i^-1.
inline DeltaReport delta_report(const LayeredCircuit &c,
                                const SpectralOptions &opts = {}) {
  const std::size_t n = c.depth();
  const std::size_t d2 = c.dim() * c.dim();
  DeltaReport out;
  std::vector<ComplexMatrix> est_inv(n), true_inv(n), gates_dag(n);
  for (std::size_t i = 0; i < n; ++i) {
    const CircuitLayer &l = c.layers()[i];
    const auto sv_true = singular_values(l.true_noise.natural_matrix());
    const auto sv_est = singular_values(l.estimated_noise.natural_matrix());
    if (sv_true.empty() || sv_true.back() <= opts.tol_zero)
      throw NonInvertibleNoise("true noise in layer " + std::to_string(i) +
                               " is non-invertible");
    if (sv_est.empty() || sv_est.back() <= opts.tol_zero)
      throw NonInvertibleNoise("estimated noise in layer " +
                               std::to_string(i) + " is non-invertible");
    true_inv[i] = exact_inverse(l.true_noise, opts).natural_matrix();
    est_inv[i] = exact_inverse(l.estimated_noise, opts).natural_matrix();
    gates_dag[i] = l.ideal.natural_matrix().adjoint();
    out.delta_noise.push_back(l.estimated_noise.natural_matrix() -
                              l.true_noise.natural_matrix());
    out.delta_inverse.push_back(est_inv[i] - true_inv[i]);
    const double res =
        spectral_norm(out.delta_noise[i] * est_inv[i] +
                      l.true_noise.natural_matrix() * out.delta_inverse[i]);
    out.consistency_residual = std::max(out.consistency_residual, res);
  }
  if (out.consistency_residual > 1e-9)
    throw NumericalError("per-layer gap consistency identity violated");

  out.total_delta =
      reversal(c, ReversalKind::Estimated, false, opts).natural_matrix() -
      reversal(c, ReversalKind::Ideal, false, opts).natural_matrix();

  out.first_order_delta = ComplexMatrix(d2, d2);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexMatrix term = ComplexMatrix::identity(d2);
    for (std::size_t j = n; j-- > 0;) { // N_n^-1 side applied first
      const ComplexMatrix &factor = (j == i) ? out.delta_inverse[j]
                                             : est_inv[j];
      term = gates_dag[j] * factor * term;
    }
    out.first_order_delta += term;
  }
  return out;
}

//=========================================================================
// First-order fidelity report
//=========================================================================

struct AnalysisReport {
  // Fidelity F(rho_ideal + delta_rho^(1), rho_ideal) and whether the
  // first-order state was PSD (clipping policy applies when not).
  double f_first_order = 1.0;
  bool f_first_order_valid = true;
  // Diagnostic variant F(rho_EM, rho_EM + delta_rho^(1)).
  double f_first_order_main_text = 1.0;

  double lower_bound = 1.0;     // clamped at zero inside the square
  double lower_bound_raw = 1.0; // unclamped (vacuous when the gap is large)
  double upper_bound = 1.0;

  double c_exp = 0.0;       // |v(U_{n..1})| * |v(rho_exp)|
  double l_u = 0.0;         // sigma_min of the composed ideal gate
  double l_ideal_exp = 0.0; // sigma_min(v(R) - v(U_{n..1})^dag)

  double delta_norm = 0.0;             // |v(Delta N)|, full difference
  double first_order_delta_norm = 0.0; // |v(Delta N^(1))|
  double layerwise_bound = 0.0;        // product/sum bound on the above

  bool suff_condition_holds = false;
  double delta_rho = 0.0; // |R~(rho_exp) - rho_in|_F

  std::vector<bool> improvement_verdicts; // one per supplied observable
};

inline AnalysisReport first_order_report(
    const LayeredCircuit &c, const std::vector<Observable> &observables = {},
    const SpectralOptions &opts = {}, const Tolerances &tol = {}) {
  const DeltaReport dr = delta_report(c, opts);
  const std::size_t d = c.dim();
  AnalysisReport out;

  const ComplexMatrix u_comp = composed_ideal(c);
  const ComplexMatrix rho_ideal = ideal_output(c).matrix();
  const ComplexMatrix rho_exp = noisy_output(c).matrix();
  const std::vector<complex_t> v_exp = vectorize(rho_exp);

  out.c_exp = spectral_norm(u_comp) * vector_norm2(v_exp);
  out.l_u = sigma_min(u_comp);
  out.delta_norm = spectral_norm(dr.total_delta);
  out.first_order_delta_norm = spectral_norm(dr.first_order_delta);

  // Layerwise bound: prod_k |v(U_k^dag)| * sum_i [ |v(Delta N_i^-1)| *
  // prod_{j != i} |v(N~_j^-1)| ]; dominates |v(Delta N^(1))|.
  const std::size_t n = c.depth();
  std::vector<double> est_inv_norm(n);
  double gate_prod = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const CircuitLayer &l = c.layers()[i];
    est_inv_norm[i] =
        spectral_norm(exact_inverse(l.estimated_noise, opts).natural_matrix());
    gate_prod *= spectral_norm(l.ideal.natural_matrix().adjoint());
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double term = spectral_norm(dr.delta_inverse[i]);
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) term *= est_inv_norm[j];
    sum += term;
  }
  out.layerwise_bound = gate_prod * sum;
  if (out.layerwise_bound < out.first_order_delta_norm - 1e-10)
    throw NumericalError("layerwise norm bound fails to dominate the "
                         "first-order gap norm");

  // First-order state and fidelity.
  const std::vector<complex_t> v_delta_rho =
      u_comp.apply(dr.first_order_delta.apply(v_exp));
  const ComplexMatrix delta_rho_mat = unvectorize(v_delta_rho, d, d);
  const ComplexMatrix first_order_state = rho_ideal + delta_rho_mat;
  if (hermiticity_residual(first_order_state) > 1e3 * tol.herm)
    throw InvalidFirstOrderState(
        "first-order state is not Hermitian within tolerance");
  const FidelityResult f =
      fidelity(hermitian_part(first_order_state), rho_ideal, tol);
  out.f_first_order = f.value;
  out.f_first_order_valid = f.valid;

  const double x =
      0.5 * std::sqrt(static_cast<double>(d)) * out.c_exp *
      out.first_order_delta_norm;
  out.lower_bound_raw = (1.0 - x) * (1.0 - x);
  const double clamped = std::max(1.0 - x, 0.0);
  out.lower_bound = clamped * clamped;
  const double y =
      out.l_u * vector_norm2(dr.first_order_delta.apply(v_exp));
  out.upper_bound = 1.0 - 0.25 * y * y;

  // Full-difference quantities for the sufficient condition and Eq-25.
  const ComplexMatrix r_ideal =
      reversal(c, ReversalKind::Ideal, false, opts).natural_matrix();
  out.l_ideal_exp = sigma_min(r_ideal - u_comp.adjoint());
  out.suff_condition_holds = out.delta_norm <= out.l_ideal_exp;

  const ComplexMatrix rt =
      reversal(c, ReversalKind::Estimated, false, opts).natural_matrix();
  std::vector<complex_t> back = rt.apply(v_exp);
  const std::vector<complex_t> v_in = vectorize(c.input().matrix());
  for (std::size_t i = 0; i < back.size(); ++i) back[i] -= v_in[i];
  out.delta_rho = vector_norm2(back);

  const ComplexMatrix rho_em = em_output(c, opts, tol).matrix;
  out.f_first_order_main_text =
      fidelity(hermitian_part(rho_em),
               hermitian_part(rho_em + delta_rho_mat), tol)
          .value;
  for (const auto &obs : observables) {
    const double em_err =
        std::abs(obs.expectation(rho_em) - obs.expectation(rho_ideal));
    const double exp_err =
        std::abs(obs.expectation(rho_ideal) - obs.expectation(rho_exp));
    out.improvement_verdicts.push_back(em_err <= exp_err + 1e-12);
  }
  return out;
}

//=========================================================================
// Sufficient improvement condition
//=========================================================================

struct SufficientCondition {
  bool holds = false;
  double lhs = 0.0; // |v(Delta N)|
  double rhs = 0.0; // sigma_min(v(R) - v(U_{n..1})^dag)
};

// When the full characterization gap is below the lower Lipschitz constant
// of v(R - U^dag), mitigation improves every sampled observable; this is
// spot-checked on `n_observables` random unit-Frobenius observables plus
// the Pauli basis whenever the condition holds.
inline SufficientCondition sufficient_condition(
    const LayeredCircuit &c, std::size_t n_observables = 100,
    std::uint64_t seed = 0, const SpectralOptions &opts = {},
    const Tolerances &tol = {}) {
  SufficientCondition out;
  const ComplexMatrix u_comp = composed_ideal(c);
  const ComplexMatrix r_ideal =
      reversal(c, ReversalKind::Ideal, false, opts).natural_matrix();
  const ComplexMatrix rt =
      reversal(c, ReversalKind::Estimated, false, opts).natural_matrix();
  out.lhs = spectral_norm(rt - r_ideal);
  out.rhs = sigma_min(r_ideal - u_comp.adjoint());
  out.holds = out.lhs <= out.rhs;
  if (!out.holds) return out;

  const std::size_t d = c.dim();
  const ComplexMatrix rho_ideal = ideal_output(c).matrix();
  const ComplexMatrix rho_exp = noisy_output(c).matrix();
  const ComplexMatrix rho_em = em_output(c, opts, tol).matrix;
  std::vector<Observable> obs;
  Rng rng(seed);
  for (std::size_t i = 0; i < n_observables; ++i)
    obs.push_back(random_observable(d, rng));
  if (d == 2) {
    obs.push_back(Observable::from_matrix(pauli_x()));
    obs.push_back(Observable::from_matrix(pauli_y()));
    obs.push_back(Observable::from_matrix(pauli_z()));
  }
  for (const auto &a : obs) {
    const double em_err =
        std::abs(a.expectation(rho_em) - a.expectation(rho_ideal));
    const double exp_err =
        std::abs(a.expectation(rho_ideal) - a.expectation(rho_exp));
    if (em_err > exp_err + 1e-12)
      throw NumericalError(
          "improvement inequality violated while the sufficient condition "
          "holds");
  }
  return out;
}

//=========================================================================
// Observable-error bound
//=========================================================================

struct ObservableErrorBound {
  double delta = 0.0; // |Tr[A (rho_EM - rho_ideal)]|
  double bound = 0.0; // |A|_F * |R~(rho_exp) - rho_in|_F
};

inline ObservableErrorBound observable_error_bound(
    const LayeredCircuit &c, const Observable &a,
    const SpectralOptions &opts = {}, const Tolerances &tol = {}) {
  ObservableErrorBound out;
  const ComplexMatrix rho_ideal = ideal_output(c).matrix();
  const ComplexMatrix rho_em = em_output(c, opts, tol).matrix;
  out.delta = std::abs(a.expectation(rho_em) - a.expectation(rho_ideal));
  const ComplexMatrix rt =
      reversal(c, ReversalKind::Estimated, false, opts).natural_matrix();
  std::vector<complex_t> back =
      rt.apply(vectorize(noisy_output(c).matrix()));
  const std::vector<complex_t> v_in = vectorize(c.input().matrix());
  for (std::size_t i = 0; i < back.size(); ++i) back[i] -= v_in[i];
  out.bound = frobenius_norm(a.matrix()) * vector_norm2(back);
  if (out.delta > out.bound + 1e-10)
    throw NumericalError("observable error exceeded its Cauchy-Schwarz "
                         "bound");
  return out;
}

//=========================================================================
// Pauli-vs-depolarizing mismatch
//=========================================================================

// Optimal depolarizing strength for a Pauli channel: argmax over the
// stationary point and the endpoints {0, 1} of the Kraus-vector overlap
// sqrt(p1 (1 - 3 lambda / 4)) + (sqrt(p2) + sqrt(p3) + sqrt(p4))
// sqrt(lambda / 4).
inline double mismatch_lambda_max(const PauliChannelParams &p) {
  p.validate();
  const double s = std::sqrt(std::max(p.p2, 0.0)) +
                   std::sqrt(std::max(p.p3, 0.0)) +
                   std::sqrt(std::max(p.p4(), 0.0));
  auto overlap = [&](double lam) {
    return std::sqrt(std::max(p.p1 * (1.0 - 0.75 * lam), 0.0)) +
           s * std::sqrt(std::max(0.25 * lam, 0.0));
  };
  std::vector<double> candidates{0.0, 1.0};
  if (p.p1 > 0.0) {
    const double interior =
        (s * s * p.p1) / (2.25 * p.p1 * p.p1 + 0.75 * p.p1 * s * s);
    candidates.push_back(std::min(std::max(interior, 0.0), 1.0));
  }
  double best = candidates.front();
  for (double lam : candidates)
    if (overlap(lam) > overlap(best)) best = lam;
  return best;
}

struct MismatchRow {
  std::size_t state_id = 0;
  double z_in = 0.0, z_noisy = 0.0, z_mitigated = 0.0;
  double y_in = 0.0, y_noisy = 0.0, y_mitigated = 0.0;
  double f_noisy = 0.0, f_mitigated = 0.0;
  bool f_mitigated_valid = true;
};

struct MismatchResult {
  double lambda_max = 0.0;
  // False reproduces the non-invertible-estimate verdict: the fitted
  // depolarizing channel cannot be inverted at all and the run stops.
  bool estimated_invertible = true;
  std::vector<complex_t> n_re_eigenvalues; // spectrum of v(D^-1) v(N)
  std::vector<MismatchRow> rows;
};

// Applies the inverse of the best-fit depolarizing channel to states that
// actually went through the Pauli channel, recording Z and Y expectation
// values and (possibly invalid) fidelities per state.
inline MismatchResult mismatch_experiment(const PauliChannelParams &p,
                                          std::size_t n_states,
                                          std::uint64_t seed,
                                          const SpectralOptions &opts = {},
                                          const Tolerances &tol = {}) {
  MismatchResult out;
  out.lambda_max = mismatch_lambda_max(p);
  const ChannelRep noise = pauli_channel(p);
  const ChannelRep fitted = depolarizing(out.lambda_max);
  const auto sv = singular_values(fitted.natural_matrix());
  if (sv.empty() || sv.back() <= opts.tol_zero) {
    out.estimated_invertible = false;
    return out;
  }
  const ComplexMatrix n_re =
      exact_inverse(fitted, opts).natural_matrix() * noise.natural_matrix();
  out.n_re_eigenvalues = eigenvalues(n_re);

  const Observable z = Observable::from_matrix(pauli_z());
  const Observable y = Observable::from_matrix(pauli_y());
  for (std::size_t i = 0; i < n_states; ++i) {
    Rng rng = Rng::derive(seed, i);
    const DensityMatrix rho =
        random_state(2, StateEnsemble::MixedTraceInduced, rng);
    const ComplexMatrix noisy = noise.apply(rho.matrix());
    const ComplexMatrix mitigated =
        unvectorize(n_re.apply(vectorize(rho.matrix())), 2, 2);
    MismatchRow row;
    row.state_id = i;
    row.z_in = z.expectation(rho.matrix());
    row.z_noisy = z.expectation(noisy);
    row.z_mitigated = z.expectation(hermitian_part(mitigated));
    row.y_in = y.expectation(rho.matrix());
    row.y_noisy = y.expectation(noisy);
    row.y_mitigated = y.expectation(hermitian_part(mitigated));
    row.f_noisy = fidelity(noisy, rho.matrix(), tol).value;
    const FidelityResult fm =
        fidelity(hermitian_part(mitigated), rho.matrix(), tol);
    row.f_mitigated = fm.value;
    row.f_mitigated_valid = fm.valid;
    out.rows.push_back(row);
  }
  return out;
}

} // namespace qemtk

#endif // QEMTK_ANALYSIS_HPP
