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

#ifndef QEMTK_GOLDEN_HPP
#define QEMTK_GOLDEN_HPP

#include <cmath>
#include <string>
#include <vector>

#include "qemtk/analysis.hpp"
#include "qemtk/classical.hpp"
#include "qemtk/noisemodels.hpp"

// Golden reproduction runs: each bundles the assertions for one worked
// example or proposition into a machine-checkable report. The CLI
// `reproduce` command and the acceptance suite are thin shells over these.

namespace qemtk::golden {

struct Assertion {
  std::string name;
  bool pass = false;
  double value = 0.0;     // measured quantity (residual, flag, ...)
  double tolerance = 0.0; // threshold it was compared against
  std::string details;
};

struct Report {
  std::string example;
  std::vector<Assertion> assertions;

  bool all_pass() const {
    for (const auto &a : assertions)
      if (!a.pass) return false;
    return true;
  }

  void check(const std::string &name, double value, double tolerance,
             const std::string &details = "") {
    assertions.push_back({name, value <= tolerance, value, tolerance, details});
  }
  void expect(const std::string &name, bool pass,
              const std::string &details = "") {
    assertions.push_back({name, pass, pass ? 1.0 : 0.0, 1.0, details});
  }
};

namespace detail {

inline ChannelRep identity_channel(std::size_t d) {
  return natural_from_kraus({ComplexMatrix::identity(d)});
}

// Random circuit with the convex perturbation model
// estimated_i = (1 - eps) N_i + eps M_i.
inline LayeredCircuit perturbed_circuit(std::size_t d, std::size_t depth,
                                        double eps, Rng &rng) {
  std::vector<CircuitLayer> layers;
  for (std::size_t i = 0; i < depth; ++i) {
    ChannelRep gate = random_channel(d, 1, rng);
    ChannelRep noise = random_channel(d, 2, rng);
    ChannelRep bump = random_channel(d, 2, rng);
    const ComplexMatrix est =
        complex_t(1.0 - eps, 0.0) * noise.natural_matrix() +
        complex_t(eps, 0.0) * bump.natural_matrix();
    layers.push_back(CircuitLayer{std::move(gate), std::move(noise),
                                  ChannelRep::from_natural(d, d, est)});
  }
  DensityMatrix input = random_state(d, StateEnsemble::MixedTraceInduced, rng);
  return LayeredCircuit(std::move(layers), std::move(input));
}

} // namespace detail

//-------------------------------------------------------------------------
// Worked examples
//-------------------------------------------------------------------------

inline Report run_example1() {
  Report r;
  r.example = "example1";
  const ChannelRep choi = fixture("example1");
  r.check("choi_to_natural_entry_exact",
          max_abs_diff(natural_from_choi(choi).payload(),
                       fixture("example1_natural").payload()),
          1e-12);
  const ChannelRep inv = exact_inverse(choi);
  r.check("inverse_matches_printed_matrix",
          max_abs_diff(inv.natural_matrix(),
                       fixture("example1_inverse").payload()),
          1e-12);
  const PropertyVerdict v = check_properties(inv);
  r.expect("inverse_choi_has_negative_eigenvalue",
           v.min_choi_eigenvalue < -1e-3,
           "min eigenvalue " + std::to_string(v.min_choi_eigenvalue));
  r.expect("inverse_is_hp_tp_not_cp", v.is_hp && v.is_tp && !v.is_cp);
  return r;
}

inline Report run_example2() {
  Report r;
  r.example = "example2";
  const ChannelRep ch = fixture("example2");

  std::vector<double> mods;
  for (const auto &e : eigenvalues(ch.natural_matrix()))
    mods.push_back(std::abs(e));
  std::sort(mods.begin(), mods.end());
  const double want[4] = {0.0, 0.2, 0.4, 1.0};
  double eig_err = 0.0;
  for (int i = 0; i < 4; ++i) eig_err = std::max(eig_err, std::abs(mods[i] - want[i]));
  r.check("eigenvalues_0_1_2over5_1over5", eig_err, 1e-9);

  const ChannelRep dz = drazin_inverse(ch);
  r.check("drazin_matches_printed_matrix",
          max_abs_diff(dz.natural_matrix(),
                       fixture("example2_drazin").payload()),
          1e-9);
  const PropertyVerdict vd = check_properties(dz);
  r.expect("drazin_is_tp_hp_not_cp", vd.is_tp && vd.is_hp && !vd.is_cp);

  const ChannelRep mp = moore_penrose(ch);
  r.check("moore_penrose_matches_printed_matrix",
          max_abs_diff(mp.natural_matrix(), fixture("example2_mp").payload()),
          1e-9);
  const PropertyVerdict vm = check_properties(mp);
  r.expect("moore_penrose_is_hp_not_tp",
           vm.is_hp && !vm.is_tp && vm.tp_residual > 0.1,
           "tp residual " + std::to_string(vm.tp_residual));
  return r;
}

inline Report run_cnot() {
  Report r;
  r.example = "cnot";
  const DensityMatrix env0 = DensityMatrix::pure({1.0, 0.0});
  const ChannelRep ch = channel_from_dilation(cnot_matrix(), env0, 1);
  ComplexMatrix dephasing(4, 4);
  dephasing(0, 0) = 1.0;
  dephasing(3, 3) = 1.0;
  r.check("dilation_equals_full_dephasing",
          max_abs_diff(ch.natural_matrix(), dephasing), 1e-12);
  r.expect("classified_non_invertible",
           classify(ch).kind == Invertibility::NonInvertible);
  r.check("drazin_inverse_is_itself",
          max_abs_diff(drazin_inverse(ch).natural_matrix(),
                       ch.natural_matrix()),
          1e-12);

  // Joint-level double CNOT restores the product input exactly.
  Rng rng(2);
  const DensityMatrix rho_a =
      random_state(2, StateEnsemble::MixedTraceInduced, rng);
  ComplexMatrix env(2, 2);
  env(0, 0) = 1.0;
  const ComplexMatrix joint = kron(rho_a.matrix(), env);
  const ComplexMatrix u = cnot_matrix();
  const ComplexMatrix twice =
      u * (u * joint * u.adjoint()) * u.adjoint();
  r.check("joint_double_cnot_restores_input", max_abs_diff(twice, joint),
          1e-12);
  return r;
}

//-------------------------------------------------------------------------
// Mismatch experiment
//-------------------------------------------------------------------------

inline Report run_mismatch(std::uint64_t seed, std::size_t n_states = 50) {
  Report r;
  r.example = "mismatch";
  const MismatchResult m =
      mismatch_experiment({0.5, 0.0, 0.0}, n_states, seed);
  r.check("lambda_max_one_third", std::abs(m.lambda_max - 1.0 / 3.0), 1e-12);

  std::vector<double> mods;
  for (const auto &e : m.n_re_eigenvalues) mods.push_back(std::abs(e));
  std::sort(mods.begin(), mods.end());
  const double want[4] = {0.0, 0.0, 1.0, 1.5};
  double eig_err = 0.0;
  for (int i = 0; i < 4; ++i) eig_err = std::max(eig_err, std::abs(mods[i] - want[i]));
  r.check("recovered_channel_spectrum_3over2_1_0_0", eig_err, 1e-9);

  double z_err = 0.0, z_noise_err = 0.0, y_err = 0.0;
  bool invalid_signature = false;
  for (const auto &row : m.rows) {
    z_err = std::max(z_err, std::abs(row.z_mitigated - 1.5 * row.z_in));
    z_noise_err = std::max(z_noise_err, std::abs(row.z_noisy - row.z_in));
    y_err = std::max(y_err, std::max(std::abs(row.y_noisy),
                                     std::abs(row.y_mitigated)));
    if (!row.f_mitigated_valid || row.f_mitigated > 1.0 - 1e-9)
      invalid_signature = true;
  }
  r.check("z_mitigated_is_1p5_z_in", z_err, 1e-9);
  r.check("z_noisy_equals_z_in", z_noise_err, 1e-9);
  r.check("y_noisy_and_y_mitigated_vanish", y_err, 1e-9);
  r.expect("some_state_shows_the_non_state_fidelity_signature",
           invalid_signature);

  const MismatchResult case1 = mismatch_experiment({0.0, 1.0, 0.0}, 1, seed);
  r.check("bit_flip_case_lambda_max_one", std::abs(case1.lambda_max - 1.0),
          1e-12);
  r.expect("bit_flip_case_estimate_non_invertible",
           !case1.estimated_invertible);
  return r;
}

//-------------------------------------------------------------------------
// Classical repetition code
//-------------------------------------------------------------------------

inline Report run_repetition(double p, std::size_t n_trials,
                             std::uint64_t seed) {
  Report r;
  r.example = "repetition";
  const RepetitionErrorRate rate = repetition_error_rate(p, n_trials, seed);
  const double expected = 3.0 * p * p * (1.0 - p) + p * p * p;
  r.check("exact_rate_by_enumeration", std::abs(rate.exact - expected),
          1e-15);
  r.check("paper_value_reported",
          std::abs(rate.paper_value - 3.0 * p * p * (1.0 - p)), 1e-15);
  const double sigma =
      std::sqrt(std::max(rate.exact * (1.0 - rate.exact), 1e-12) /
                static_cast<double>(n_trials));
  r.check("monte_carlo_within_5_sigma", std::abs(rate.empirical - rate.exact),
          5.0 * sigma,
          "empirical " + std::to_string(rate.empirical) + " exact " +
              std::to_string(rate.exact));
  return r;
}

//-------------------------------------------------------------------------
// Proposition 2: fidelity sandwich + first-order convergence
//-------------------------------------------------------------------------

inline Report run_prop2(std::uint64_t seed, std::size_t n_instances = 200) {
  Report r;
  r.example = "prop2";
  std::size_t admitted = 0, violations = 0, attempts = 0;
  for (std::uint64_t trial = 0; admitted < n_instances && attempts < 20 * n_instances;
       ++trial, ++attempts) {
    Rng rng = Rng::derive(seed, trial);
    const std::size_t d = trial % 2 == 0 ? 2 : 4;
    const std::size_t depth = 1 + trial % 3;
    try {
      const LayeredCircuit c =
          detail::perturbed_circuit(d, depth, 5e-3, rng);
      const AnalysisReport rep = first_order_report(c);
      if (!rep.f_first_order_valid || rep.lower_bound_raw <= 0.0) continue;
      ++admitted;
      if (rep.lower_bound - 1e-9 > rep.f_first_order ||
          rep.f_first_order > rep.upper_bound + 1e-9)
        ++violations;
    } catch (const Error &) {
      continue; // non-invertible draw; resample
    }
  }
  r.expect("admitted_" + std::to_string(n_instances) + "_instances",
           admitted == n_instances,
           "admitted " + std::to_string(admitted) + " in " +
               std::to_string(attempts) + " attempts");
  r.expect("sandwich_zero_violations", violations == 0,
           std::to_string(violations) + " violations");

  // First-order residual scales quadratically: log-log slope 2 +- 0.2.
  Rng rng = Rng::derive(seed, 987654);
  std::vector<ChannelRep> gates, noises, bumps;
  const std::size_t depth = 2, d = 2;
  for (std::size_t i = 0; i < depth; ++i) {
    gates.push_back(random_channel(d, 1, rng));
    noises.push_back(random_channel(d, 2, rng));
    bumps.push_back(random_channel(d, 2, rng));
  }
  const DensityMatrix input =
      random_state(d, StateEnsemble::MixedTraceInduced, rng);
  std::vector<double> lx, ly;
  for (double eps : {1e-2, 3.162e-3, 1e-3, 3.162e-4, 1e-4}) {
    std::vector<CircuitLayer> layers;
    for (std::size_t i = 0; i < depth; ++i) {
      const ComplexMatrix est =
          complex_t(1.0 - eps, 0.0) * noises[i].natural_matrix() +
          complex_t(eps, 0.0) * bumps[i].natural_matrix();
      layers.push_back(CircuitLayer{gates[i], noises[i],
                                    ChannelRep::from_natural(d, d, est)});
    }
    const DeltaReport dr = delta_report(LayeredCircuit(layers, input));
    lx.push_back(std::log(eps));
    ly.push_back(
        std::log(spectral_norm(dr.total_delta - dr.first_order_delta)));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= lx.size();
  my /= ly.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    num += (lx[i] - mx) * (ly[i] - my);
    den += (lx[i] - mx) * (lx[i] - mx);
  }
  const double slope = num / den;
  r.check("first_order_loglog_slope_near_2", std::abs(slope - 2.0), 0.2,
          "slope " + std::to_string(slope));
  return r;
}

//-------------------------------------------------------------------------
// Proposition 3: sufficient condition
//-------------------------------------------------------------------------

// The condition threshold sigma_min(v(R) - v(U^dag)) is identically zero
// for circuits with CPTP noise (R x = U^dag x reduces to a fixed-point
// equation of a CPTP composition), so it can only hold with a numerically
// zero characterization gap. The run verifies: the degenerate noiseless
// case reports a zero threshold; instances where the condition holds show
// no improvement-inequality counterexample over 100 observables; and
// nonzero gaps are always rejected.
inline Report run_prop3(std::uint64_t seed) {
  Report r;
  r.example = "prop3";

  // Degenerate noiseless case.
  Rng rng = Rng::derive(seed, 0);
  std::vector<CircuitLayer> layers;
  for (int i = 0; i < 2; ++i)
    layers.push_back(CircuitLayer{random_channel(2, 1, rng),
                                  detail::identity_channel(2),
                                  detail::identity_channel(2)});
  const LayeredCircuit noiseless(layers,
                                 DensityMatrix::maximally_mixed(2));
  const SufficientCondition deg = sufficient_condition(noiseless, 10, seed);
  r.check("noiseless_threshold_is_zero", deg.rhs, 1e-12);

  // Condition holds (zero gap): the improvement inequality is asserted
  // inside sufficient_condition for 100 observables; an exception would
  // surface as a failure here.
  std::size_t held = 0;
  bool counterexample = false;
  for (std::uint64_t trial = 1; trial <= 20; ++trial) {
    Rng crng = Rng::derive(seed, trial);
    std::vector<CircuitLayer> ls;
    const std::size_t depth = 1 + trial % 3;
    for (std::size_t i = 0; i < depth; ++i) {
      ChannelRep gate = random_channel(2, 1, crng);
      ChannelRep noise = random_channel(2, 2, crng);
      ls.push_back(CircuitLayer{gate, noise, noise});
    }
    const LayeredCircuit c(ls, random_state(2, StateEnsemble::MixedTraceInduced,
                                            crng));
    try {
      const SufficientCondition sc = sufficient_condition(c, 100, seed + trial);
      if (sc.holds) ++held;
    } catch (const NumericalError &) {
      counterexample = true;
    }
  }
  r.expect("condition_held_on_perfectly_characterized_instances", held == 20,
           std::to_string(held) + " of 20 held");
  r.expect("no_improvement_counterexample_on_100_observables",
           !counterexample);

  // Nonzero gaps are rejected: the threshold stays at numerical zero.
  bool rejected_all = true;
  double max_rhs = 0.0;
  for (std::uint64_t trial = 100; trial < 120; ++trial) {
    Rng crng = Rng::derive(seed, trial);
    try {
      const LayeredCircuit c =
          detail::perturbed_circuit(2, 1 + trial % 3, 1e-4, crng);
      const SufficientCondition sc = sufficient_condition(c, 10, seed);
      max_rhs = std::max(max_rhs, sc.rhs);
      if (sc.lhs > 1e-10 && sc.holds) rejected_all = false;
    } catch (const Error &) {
      continue;
    }
  }
  r.expect("nonzero_gap_never_satisfies_the_condition", rejected_all,
           "largest observed threshold " + std::to_string(max_rhs));
  return r;
}

} // namespace qemtk::golden

#endif // QEMTK_GOLDEN_HPP
