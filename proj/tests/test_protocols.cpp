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

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace qemtk;
using Catch::Approx;

namespace {

std::vector<ChannelRep> pauli_conjugation_basis() {
  return {natural_from_kraus({pauli_i()}), natural_from_kraus({pauli_x()}),
          natural_from_kraus({pauli_y()}), natural_from_kraus({pauli_z()})};
}

} // namespace

TEST_CASE("Richardson extrapolation recovers polynomial constants") {
  SECTION("two points kill the linear term") {
    const double c0 = 0.7, c1 = -0.3;
    const RichardsonResult r = richardson_extrapolate(
        {{1.0, 2.0}, {c0 + c1 * 1.0, c0 + c1 * 2.0}});
    REQUIRE(r.value == Approx(c0).margin(1e-14));
    REQUIRE(r.coefficients[0] + r.coefficients[1] == Approx(1.0).margin(1e-14));
  }
  SECTION("three points kill the quadratic") {
    auto f = [](double l) { return 0.4 + 0.2 * l - 0.1 * l * l; };
    const RichardsonResult r =
        richardson_extrapolate({{1.0, 2.0, 3.0}, {f(1), f(2), f(3)}});
    REQUIRE(r.value == Approx(0.4).margin(1e-12));
  }
  SECTION("single point returns the measurement unchanged") {
    const RichardsonResult r = richardson_extrapolate({{1.5}, {0.33}});
    REQUIRE(r.value == 0.33);
    REQUIRE(r.coefficients == std::vector<double>{1.0});
  }
}

TEST_CASE("Richardson weights cancel powers up to the node count",
          "[property]") {
  Rng rng(501);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 1 + rng.integer(4); // up to degree 4
    ExtrapolationInput in;
    for (std::size_t i = 0; i <= k; ++i)
      in.scales.push_back(1.0 + i + rng.uniform(0.0, 0.5));
    in.values.assign(in.scales.size(), 0.0);
    const RichardsonResult r = richardson_extrapolate(in);
    double sum = 0.0;
    for (double c : r.coefficients) sum += c;
    REQUIRE(sum == Approx(1.0).margin(1e-10));
    for (std::size_t m = 1; m <= k; ++m) {
      double acc = 0.0;
      for (std::size_t i = 0; i < in.scales.size(); ++i)
        acc += r.coefficients[i] * std::pow(in.scales[i], double(m));
      REQUIRE(acc == Approx(0.0).margin(1e-10));
    }
  }
}

TEST_CASE("extrapolation error paths and two-point variants") {
  REQUIRE_THROWS_AS(richardson_extrapolate({{1.0, 1.0}, {0.1, 0.2}}),
                    DegenerateScales);
  REQUIRE_THROWS_AS(richardson_extrapolate({{-1.0}, {0.1}}), ParamOutOfRange);

  // Linear two-point agrees with Richardson two-point.
  const ExtrapolationInput in{{1.0, 3.0}, {0.8, 0.4}};
  REQUIRE(extrapolate(in, ExtrapolationFit::Linear) ==
          Approx(richardson_extrapolate(in).value).margin(1e-12));

  // Exponential two-point is exact for an exponential model.
  const double a = 0.9, b = 0.5;
  const ExtrapolationInput exp_in{
      {1.0, 2.0}, {a * std::exp(-b), a * std::exp(-2 * b)}};
  REQUIRE(extrapolate(exp_in, ExtrapolationFit::Exponential) ==
          Approx(a).margin(1e-12));
  REQUIRE_THROWS_AS(
      extrapolate({{1.0, 2.0}, {0.5, -0.5}}, ExtrapolationFit::Exponential),
      ParamOutOfRange);
}

TEST_CASE("quasiprobability decomposition of the depolarizing inverse") {
  const double lam = 0.3;
  const QuasiprobDecomposition dec = quasiprob_decompose(
      exact_inverse(depolarizing(lam)), pauli_conjugation_basis());
  REQUIRE(dec.residual <= 1e-9);
  // Closed form from the Pauli-diagonal linear system.
  const double a0 = (4.0 - lam) / (4.0 - 4.0 * lam);
  const double rest = -lam / (4.0 - 4.0 * lam);
  REQUIRE(dec.coefficients[0] == Approx(a0).margin(1e-10));
  for (int i = 1; i < 4; ++i)
    REQUIRE(dec.coefficients[i] == Approx(rest).margin(1e-10));
  double sum = 0.0;
  for (double c : dec.coefficients) sum += c;
  REQUIRE(sum == Approx(1.0).margin(1e-9));
  REQUIRE(dec.tau ==
          Approx((2.0 + lam) / (2.0 - 2.0 * lam)).margin(1e-10));
  REQUIRE(dec.tau >= 1.0 - 1e-12);
}

TEST_CASE("quasiprobability trivial decompositions") {
  const auto basis = pauli_conjugation_basis();
  const QuasiprobDecomposition id_dec =
      quasiprob_decompose(basis[0], basis);
  REQUIRE(id_dec.coefficients[0] == Approx(1.0).margin(1e-12));
  for (int i = 1; i < 4; ++i)
    REQUIRE(id_dec.coefficients[i] == Approx(0.0).margin(1e-12));
  REQUIRE(id_dec.tau == Approx(1.0).margin(1e-12));

  const QuasiprobDecomposition elem_dec =
      quasiprob_decompose(basis[2], basis);
  REQUIRE(elem_dec.coefficients[2] == Approx(1.0).margin(1e-12));

  // A non-Pauli target falls outside the Pauli-diagonal span.
  Rng rng(502);
  REQUIRE_THROWS_AS(
      quasiprob_decompose(random_channel(2, 2, rng), basis),
      TargetOutsideSpan);
}

TEST_CASE("quasiprobability estimator converges to the composed-channel "
          "value") {
  Rng rng(503);
  const double lam = 0.5;
  const ChannelRep gate = random_channel(2, 1, rng);
  const ChannelRep noise = depolarizing(lam);
  const auto basis = pauli_conjugation_basis();
  const QuasiprobDecomposition dec =
      quasiprob_decompose(exact_inverse(noise), basis);

  const DensityMatrix rho =
      random_state(2, StateEnsemble::MixedTraceInduced, rng);
  const Observable a = Observable::from_matrix(pauli_z());
  const ComplexMatrix after_noise = noise.apply(gate.apply(rho.matrix()));
  std::vector<double> values;
  for (const auto &g : basis)
    values.push_back(a.expectation(g.apply(after_noise)));

  // Oracle: Tr[N^-1 N U(rho) A] = Tr[U(rho) A].
  const double ideal = a.expectation(gate.apply(rho.matrix()));
  const QuasiprobEstimate est = quasiprob_estimate(dec, values, 400000, 99);
  REQUIRE(std::abs(est.estimate - ideal) <= 5.0 * est.stderr_mean + 1e-3);

  // Unbiasedness target: tau * sum p_i sgn(a_i) <A>_i equals sum a_i <A>_i.
  double target = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    target += dec.coefficients[i] * values[i];
  REQUIRE(std::abs(est.estimate - target) <= 5.0 * est.stderr_mean + 1e-3);
}

TEST_CASE("sampling cost amplifies the variance by tau squared") {
  // Synthetic two-element decomposition with a = (2, -1), tau = 3.
  const auto basis = std::vector<ChannelRep>{
      natural_from_kraus({pauli_i()}), depolarizing(1.0)};
  const ComplexMatrix target =
      complex_t(2.0, 0.0) * basis[0].natural_matrix() -
      basis[1].natural_matrix();
  const QuasiprobDecomposition dec = quasiprob_decompose(
      ChannelRep::from_natural(2, 2, target), basis);
  REQUIRE(dec.tau == Approx(3.0).margin(1e-10));

  const std::vector<double> values{0.1, 0.05};
  const std::size_t n = 200000;
  const QuasiprobEstimate est = quasiprob_estimate(dec, values, n, 7);
  const double est_var = est.stderr_mean * est.stderr_mean * double(n);
  double target_value = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    target_value += dec.coefficients[i] * values[i];
  const double baseline = 1.0 - target_value * target_value;
  REQUIRE(est_var / baseline == Approx(9.0).epsilon(0.3));

  // tau = 1 decompositions sample without amplification.
  const QuasiprobDecomposition plain =
      quasiprob_decompose(basis[1], basis);
  REQUIRE(plain.tau == Approx(1.0).margin(1e-10));
  const QuasiprobEstimate flat =
      quasiprob_estimate(plain, {0.0, 0.0}, 100000, 11);
  const double flat_var = flat.stderr_mean * flat.stderr_mean * 100000.0;
  REQUIRE(flat_var == Approx(1.0).epsilon(0.05));
}

TEST_CASE("readout mitigation inverts the confusion matrix") {
  SECTION("identity does nothing") {
    const ReadoutResult r = readout_mitigate(bsc(0.0), {0.3, 0.7});
    REQUIRE(r.p[0] == Approx(0.3).margin(1e-12));
    REQUIRE(r.p[1] == Approx(0.7).margin(1e-12));
    REQUIRE_FALSE(r.has_negative);
  }
  SECTION("forward model round-trips") {
    const double q = 0.12;
    const ReadoutMatrix t = bsc(q);
    const std::vector<double> p{0.25, 0.75};
    const ReadoutResult r = readout_mitigate(t, t.apply(p));
    REQUIRE(std::abs(r.p[0] - p[0]) <= 1e-12);
    REQUIRE(std::abs(r.p[1] - p[1]) <= 1e-12);
  }
  SECTION("rank-deficient confusion matrix raises") {
    REQUIRE_THROWS_AS(readout_mitigate(bsc(0.5), {0.5, 0.5}),
                      SingularReadoutMatrix);
  }
  SECTION("negative outcomes are flagged and optionally projected") {
    const ReadoutResult raw = readout_mitigate(bsc(0.2), {0.1, 0.9});
    REQUIRE(raw.has_negative);
    double sum = 0.0;
    for (double v : raw.p) sum += v;
    REQUIRE(sum == Approx(1.0).margin(1e-10));

    const ReadoutResult proj = readout_mitigate(bsc(0.2), {0.1, 0.9}, true);
    double psum = 0.0;
    for (double v : proj.p) {
      REQUIRE(v >= 0.0);
      psum += v;
    }
    REQUIRE(psum == Approx(1.0).margin(1e-10));
  }
}

TEST_CASE("virtual distillation") {
  Rng rng(504);
  SECTION("pure states are fixed points") {
    const DensityMatrix pure = random_state(2, StateEnsemble::PureUniform, rng);
    for (std::size_t m = 1; m <= 4; ++m)
      REQUIRE(max_abs_diff(virtual_distill(pure, m).matrix(), pure.matrix()) <
              1e-10);
  }
  SECTION("closed form for a diagonal qubit state") {
    ComplexMatrix d(2, 2);
    d(0, 0) = 0.9;
    d(1, 1) = 0.1;
    const DensityMatrix out =
        virtual_distill(DensityMatrix::from_matrix(d), 2);
    REQUIRE(out.matrix()(0, 0).real() == Approx(81.0 / 82.0).margin(1e-12));
    REQUIRE(out.matrix()(1, 1).real() == Approx(1.0 / 82.0).margin(1e-12));
  }
  SECTION("maximally mixed is a fixed point") {
    const DensityMatrix mixed = DensityMatrix::maximally_mixed(3);
    for (std::size_t m = 1; m <= 3; ++m)
      REQUIRE(max_abs_diff(virtual_distill(mixed, m).matrix(),
                           mixed.matrix()) < 1e-12);
  }
  SECTION("purity is monotone non-decreasing in the copy count") {
    for (int trial = 0; trial < 100; ++trial) {
      const DensityMatrix rho =
          random_state(2 + trial % 3, StateEnsemble::MixedTraceInduced, rng);
      double last = purity(rho);
      for (std::size_t m = 2; m <= 4; ++m) {
        const double next = purity(virtual_distill(rho, m));
        REQUIRE(next >= last - 1e-12);
        last = next;
      }
    }
  }
  SECTION("parameter validation") {
    REQUIRE_THROWS_AS(
        virtual_distill(DensityMatrix::maximally_mixed(2), 0),
        ParamOutOfRange);
  }
}
