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

#ifndef QEMTK_CIRCUITS_HPP
#define QEMTK_CIRCUITS_HPP

#include <vector>

#include "qemtk/inverses.hpp"
#include "qemtk/matrep.hpp"

// Layered noisy-circuit model. Each layer is a (unitary gate, true noise,
// characterized noise estimate) triple under the Markovian gate-independent
// assumption: the experiment realizes N_i after U_i in every layer.

namespace qemtk {

struct CircuitLayer {
  ChannelRep ideal;           // unitary-conjugation gate U_i
  ChannelRep true_noise;      // N_i, CPTP
  ChannelRep estimated_noise; // characterized model of N_i
};

class LayeredCircuit {
public:
  LayeredCircuit(std::vector<CircuitLayer> layers, DensityMatrix input,
                 const Tolerances &tol = {})
      : layers_(std::move(layers)), input_(std::move(input)) {
    if (layers_.empty()) throw ShapeMismatch("circuit needs at least one layer");
    const std::size_t d = input_.dim();
    for (const auto &l : layers_) {
      if (!l.ideal.square() || l.ideal.dim_in() != d || !l.true_noise.square() ||
          l.true_noise.dim_in() != d || !l.estimated_noise.square() ||
          l.estimated_noise.dim_in() != d)
        throw DimensionMismatch("layer dimensions do not match the input");
      ComplexMatrix g = l.ideal.natural_matrix();
      if (max_abs_diff(g.adjoint() * g, ComplexMatrix::identity(d * d)) >
          tol.unitary)
        throw NonUnitaryInput("ideal layer is not a unitary conjugation");
    }
  }

  std::size_t depth() const { return layers_.size(); }
  std::size_t dim() const { return input_.dim(); }
  const std::vector<CircuitLayer> &layers() const { return layers_; }
  const DensityMatrix &input() const { return input_; }

private:
  std::vector<CircuitLayer> layers_;
  DensityMatrix input_;
};

//=========================================================================
// Composed superoperators
//=========================================================================

// U_{n...1} = U_n o ... o U_1.
inline ComplexMatrix composed_ideal(const LayeredCircuit &c) {
  const std::size_t d2 = c.dim() * c.dim();
  ComplexMatrix m = ComplexMatrix::identity(d2);
  for (const auto &l : c.layers()) m = l.ideal.natural_matrix() * m;
  return m;
}

// N_n U_n ... N_1 U_1.
inline ComplexMatrix composed_noisy(const LayeredCircuit &c) {
  const std::size_t d2 = c.dim() * c.dim();
  ComplexMatrix m = ComplexMatrix::identity(d2);
  for (const auto &l : c.layers())
    m = l.true_noise.natural_matrix() * l.ideal.natural_matrix() * m;
  return m;
}

enum class ReversalKind { Ideal, Estimated };

// Reversal channel U_1^dag N_1^-1 ... U_n^dag N_n^-1 built from the true
// (Ideal) or characterized (Estimated) noise models. Non-invertible noise
// raises unless the caller explicitly opts into the Drazin substitute.
inline ChannelRep reversal(const LayeredCircuit &c, ReversalKind which,
                           bool drazin_fallback = false,
                           const SpectralOptions &opts = {}) {
  const std::size_t d = c.dim();
  ComplexMatrix m = ComplexMatrix::identity(d * d);
  // Apply N_n^-1 first, so iterate layers from the back.
  for (std::size_t idx = c.depth(); idx-- > 0;) {
    const CircuitLayer &l = c.layers()[idx];
    const ChannelRep &noise =
        which == ReversalKind::Ideal ? l.true_noise : l.estimated_noise;
    ComplexMatrix ninv;
    const auto sv = singular_values(noise.natural_matrix());
    if (!sv.empty() && sv.back() > opts.tol_zero) {
      ninv = exact_inverse(noise, opts).natural_matrix();
    } else if (drazin_fallback) {
      DrazinOptions dopts;
      dopts.spectral = opts;
      ninv = drazin_inverse(noise, dopts).natural_matrix();
    } else if (which == ReversalKind::Ideal) {
      throw NonInvertibleNoise("true noise in layer " + std::to_string(idx) +
                               " is non-invertible");
    } else {
      throw NonInvertibleEstimate("estimated noise in layer " +
                                  std::to_string(idx) + " is non-invertible");
    }
    m = l.ideal.natural_matrix().adjoint() * ninv * m;
  }
  return ChannelRep::from_natural(d, d, std::move(m));
}

//=========================================================================
// Output constructions
//=========================================================================

namespace detail {

inline ComplexMatrix apply_natural(const ComplexMatrix &m,
                                   const ComplexMatrix &rho, std::size_t d) {
  return unvectorize(m.apply(vectorize(rho)), d, d);
}

} // namespace detail

inline DensityMatrix ideal_output(const LayeredCircuit &c) {
  ComplexMatrix rho =
      detail::apply_natural(composed_ideal(c), c.input().matrix(), c.dim());
  return DensityMatrix::from_matrix(rho);
}

inline DensityMatrix noisy_output(const LayeredCircuit &c) {
  ComplexMatrix rho =
      detail::apply_natural(composed_noisy(c), c.input().matrix(), c.dim());
  return DensityMatrix::from_matrix(rho);
}

// Hermitian output that may fail positivity when a non-CP recovery is in
// play; callers consume the flag instead of an exception.
struct MitigatedState {
  ComplexMatrix matrix;
  double min_eigenvalue = 0.0;
  bool psd_valid = true;

  DensityMatrix as_state(const Tolerances &tol = {}) const {
    return DensityMatrix::from_matrix(matrix, tol);
  }
};

namespace detail {

inline MitigatedState flagged_state(ComplexMatrix rho,
                                    const Tolerances &tol) {
  MitigatedState out;
  out.min_eigenvalue = eigh(hermitian_part(rho)).values.front();
  out.psd_valid = out.min_eigenvalue >= -tol.psd;
  out.matrix = std::move(rho);
  return out;
}

} // namespace detail

// Physically-inserted inverse: the estimated inverse gate follows every
// noisy layer. Perfect characterization reproduces the ideal output.
inline ComplexMatrix physical_inverse_channel(const LayeredCircuit &c,
                                              const SpectralOptions &opts = {}) {
  const std::size_t d2 = c.dim() * c.dim();
  ComplexMatrix m = ComplexMatrix::identity(d2);
  for (std::size_t idx = 0; idx < c.depth(); ++idx) {
    const CircuitLayer &l = c.layers()[idx];
    const auto sv = singular_values(l.estimated_noise.natural_matrix());
    if (sv.empty() || sv.back() <= opts.tol_zero)
      throw NonInvertibleEstimate("estimated noise in layer " +
                                  std::to_string(idx) + " is non-invertible");
    m = exact_inverse(l.estimated_noise, opts).natural_matrix() *
        l.true_noise.natural_matrix() * l.ideal.natural_matrix() * m;
  }
  return m;
}

inline MitigatedState physical_inverse_output(const LayeredCircuit &c,
                                              const SpectralOptions &opts = {},
                                              const Tolerances &tol = {}) {
  return detail::flagged_state(
      detail::apply_natural(physical_inverse_channel(c, opts),
                            c.input().matrix(), c.dim()),
      tol);
}

// Numerical reversal: rho_EM = U_{n...1} o R~ (rho_out_exp).
inline MitigatedState em_output(const LayeredCircuit &c,
                                const SpectralOptions &opts = {},
                                const Tolerances &tol = {}) {
  const ComplexMatrix rt =
      reversal(c, ReversalKind::Estimated, false, opts).natural_matrix();
  const ComplexMatrix m = composed_ideal(c) * rt * composed_noisy(c);
  return detail::flagged_state(
      detail::apply_natural(m, c.input().matrix(), c.dim()), tol);
}

// Single effective recovery map applied to the noisy output.
inline MitigatedState effective_recovery_output(const LayeredCircuit &c,
                                                const ChannelRep &n_eff_inv,
                                                const Tolerances &tol = {}) {
  if (n_eff_inv.dim_in() != c.dim())
    throw DimensionMismatch("effective recovery dimension mismatch");
  const ComplexMatrix m = n_eff_inv.natural_matrix() * composed_noisy(c);
  return detail::flagged_state(
      detail::apply_natural(m, c.input().matrix(), c.dim()), tol);
}

} // namespace qemtk

#endif // QEMTK_CIRCUITS_HPP
