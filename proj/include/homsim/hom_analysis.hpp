// Copyright 2026 The homsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HOMSIM_HOM_ANALYSIS_HPP_
#define HOMSIM_HOM_ANALYSIS_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "homsim/block_kernel.hpp"
#include "homsim/errors.hpp"
#include "homsim/two_photon_state.hpp"
#include "homsim/wavepacket.hpp"

namespace homsim {

inline constexpr double kUnitarityGuard = 1e-8;

namespace detail {

/// Rotates a set of paired columns so that the largest-magnitude component
/// of each `primary` column is real positive; `secondary` absorbs the same
/// per-column phase so any product primary_j * secondary_j^dag is unchanged.
inline void fix_column_phases(Eigen::MatrixXcd& primary,
                              Eigen::MatrixXcd& secondary) {
  for (Eigen::Index j = 0; j < primary.cols(); ++j) {
    Eigen::Index imax = 0;
    primary.col(j).cwiseAbs().maxCoeff(&imax);
    const Complex pivot = primary(imax, j);
    if (std::abs(pivot) == 0.0) continue;
    const Complex rot = std::conj(pivot) / std::abs(pivot);
    primary.col(j) *= rot;
    secondary.col(j) *= rot;
  }
}

}  // namespace detail

/// Cross-band interference kernel indexed (red mode, blue mode). Its
/// singular values decide how well a one-red-one-blue input pair can cancel
/// in the output; derived from a unitary kernel they never exceed 1.
struct HomKernelMatrix {
  Eigen::MatrixXcd k;
  FrequencyGrid red_grid;
  FrequencyGrid blue_grid;
};

/// K[r, b] = sum_m conj(G_rr[r, m]) G_br[b, m] - conj(G_rb[r, m]) G_bb[b, m],
/// the discrete contraction of the blocks over output modes.
inline HomKernelMatrix hom_kernel(const BlockKernel& kernel) {
  const double resid = verify_unitarity(kernel).max_residual();
  if (resid > kUnitarityGuard)
    throw NotUnitary("kernel unitarity residual " + detail::num_str(resid) +
                     " exceeds " + detail::num_str(kUnitarityGuard));
  Eigen::MatrixXcd k = kernel.grr().conjugate() * kernel.gbr().transpose() -
                       kernel.grb().conjugate() * kernel.gbb().transpose();
  return HomKernelMatrix{std::move(k), kernel.basis().band1(),
                         kernel.basis().band2()};
}

/// Singular-value form K = sum_n sigma_n R_n B_n^dag with sigma descending
/// and orthonormal red/blue mode columns. Each R_n has its largest-magnitude
/// component rotated to the positive real axis; B_n carries the rest of the
/// phase so the reconstruction is untouched.
struct SchmidtDecomposition {
  Eigen::VectorXd sigma;
  Eigen::MatrixXcd red_modes;   // columns R_n on the red grid
  Eigen::MatrixXcd blue_modes;  // columns B_n on the blue grid
  FrequencyGrid red_grid;
  FrequencyGrid blue_grid;

  WavePacket red_mode(std::size_t n) const {
    return WavePacket(red_grid, red_modes.col(static_cast<Eigen::Index>(n)));
  }
  WavePacket blue_mode(std::size_t n) const {
    return WavePacket(blue_grid, blue_modes.col(static_cast<Eigen::Index>(n)));
  }
  Eigen::MatrixXcd reconstruct() const {
    return red_modes * sigma.asDiagonal() * blue_modes.adjoint();
  }
  std::size_t rank(double tol = 1e-12) const {
    std::size_t r = 0;
    for (Eigen::Index n = 0; n < sigma.size(); ++n)
      if (sigma[n] > tol) ++r;
    return r;
  }
};

inline SchmidtDecomposition schmidt_decompose(const HomKernelMatrix& hk) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
      hk.k, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition d{svd.singularValues(), svd.matrixU(), svd.matrixV(),
                         hk.red_grid, hk.blue_grid};
  detail::fix_column_phases(d.red_modes, d.blue_modes);
  return d;
}

/// Probabilities of the three band sectors of a two-photon state.
struct OutputProbabilities {
  double p_rr = 0.0;
  double p_rb = 0.0;
  double p_bb = 0.0;

  double sum() const { return p_rr + p_rb + p_bb; }
};

inline OutputProbabilities output_probabilities(const TwoPhotonState& state) {
  const auto& s = state.pair_amps();
  const auto n1 = static_cast<Eigen::Index>(state.basis().size1());
  const auto n = s.rows();
  OutputProbabilities p;
  for (Eigen::Index k = 0; k < n; ++k) {
    double& same = k < n1 ? p.p_rr : p.p_bb;
    same += 0.5 * std::norm(s(k, k));
    for (Eigen::Index l = k + 1; l < n; ++l) {
      const double w = std::norm(s(k, l));
      if (l < n1)
        p.p_rr += w;
      else if (k >= n1)
        p.p_bb += w;
      else
        p.p_rb += w;
    }
  }
  return p;
}

/// Input pair aligned with Schmidt mode `index` (0-based, descending sigma),
/// together with the interference quality it predicts: solving
/// 2 tau rho = sigma with tau >= rho gives the mode's splitter coefficients
/// and a residual coincidence probability (tau^2 - rho^2)^2 = 1 - sigma^2.
struct MatchedInputs {
  WavePacket red;
  WavePacket blue;
  double sigma;
  double predicted_p_rb;
};

inline MatchedInputs matched_inputs(const BlockKernel& kernel,
                                    std::size_t index) {
  const SchmidtDecomposition d = schmidt_decompose(hom_kernel(kernel));
  if (index >= d.rank())
    throw RankExceeded("Schmidt mode " + std::to_string(index) +
                       " beyond rank " + std::to_string(d.rank()));
  const double sigma =
      std::min(1.0, d.sigma[static_cast<Eigen::Index>(index)]);
  const double tau_sq = 0.5 * (1.0 + std::sqrt(1.0 - sigma * sigma));
  const double imbalance = 2.0 * tau_sq - 1.0;  // tau^2 - rho^2
  return MatchedInputs{d.red_mode(index), d.blue_mode(index), sigma,
                       imbalance * imbalance};
}

/// Joint least-squares residual of the interference conditions
///   c_R = C K c_B   and   c_B = C^{-1} K^dag c_R,
/// minimized over the complex constant C (the same C in both lines, as the
/// conditions require). Writing C = r e^{i theta}, w = K c_B, z = K^dag c_R
/// and a = <c_R, w>, the objective is
///   f = 2 + r^2 |w|^2 + r^{-2} |z|^2 - 2 (r + 1/r) Re(e^{i theta} a),
/// so theta* = -arg(a) and the radial part is a smooth one-dimensional
/// minimization, bracketed on a log grid and polished by ternary search.
/// The returned value is evaluated from the difference vectors at C*, not
/// from the expanded quadratic, which would lose half the mantissa to
/// cancellation near zero; matched pairs score ~1e-16. An aligned pair on
/// a Schmidt mode with sigma > 1/2 scores sqrt(2) (1 - sigma), so the
/// residual vanishes exactly when a unit singular value carries the pair.
inline double check_interference_condition(const WavePacket& red,
                                           const WavePacket& blue,
                                           const BlockKernel& kernel) {
  if (red.grid() != kernel.basis().band1() ||
      blue.grid() != kernel.basis().band2())
    throw GridMismatch("packets do not live on the kernel's band grids");
  const HomKernelMatrix hk = hom_kernel(kernel);
  const Eigen::VectorXcd w = hk.k * blue.amps();
  const Eigen::VectorXcd z = hk.k.adjoint() * red.amps();
  const double w2 = w.squaredNorm();
  const double z2 = z.squaredNorm();
  if (w2 == 0.0 && z2 == 0.0) return std::sqrt(2.0);
  const Complex a = red.amps().dot(w);
  const double amag = std::abs(a);
  constexpr double kRange = 35.0;

  double t_opt;
  if (amag == 0.0) {
    // Decoupled lines: the radial optimum is (z2 / w2)^(1/4), pushed to the
    // bracket edge when either line is absent.
    if (w2 == 0.0)
      t_opt = kRange;
    else if (z2 == 0.0)
      t_opt = -kRange;
    else
      t_opt = 0.25 * std::log(z2 / w2);
  } else {
    // a != 0 forces w2 >= |a|^2 > 0 and z2 >= |a|^2 > 0, so the objective
    // h(t) = w2 e^{2t} + z2 e^{-2t} - 2|a| (e^t + e^{-t}) has an interior
    // minimum. A coarse grid plus ternary reaches the right basin; ternary
    // alone stalls ~1e-8 from the optimum once curvature noise dominates,
    // and the residual is linear in that offset, so Newton on h' finishes
    // the job at machine precision.
    const auto h = [&](double t) {
      return w2 * std::exp(2.0 * t) + z2 * std::exp(-2.0 * t) -
             2.0 * amag * (std::exp(t) + std::exp(-t));
    };
    double t_best = 0.0;
    double h_best = h(0.0);
    constexpr int kSteps = 1400;
    for (int i = 0; i <= kSteps; ++i) {
      const double t = -kRange + 2.0 * kRange * i / kSteps;
      const double ht = h(t);
      if (ht < h_best) {
        h_best = ht;
        t_best = t;
      }
    }
    double lo = t_best - 2.0 * kRange / kSteps;
    double hi = t_best + 2.0 * kRange / kSteps;
    for (int iter = 0; iter < 80; ++iter) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      if (h(m1) <= h(m2))
        hi = m2;
      else
        lo = m1;
    }
    t_opt = 0.5 * (lo + hi);
    for (int iter = 0; iter < 40; ++iter) {
      const double ep = std::exp(t_opt), em = std::exp(-t_opt);
      const double d1 = 2.0 * w2 * ep * ep - 2.0 * z2 * em * em -
                        2.0 * amag * (ep - em);
      const double d2 = 4.0 * w2 * ep * ep + 4.0 * z2 * em * em -
                        2.0 * amag * (ep + em);
      if (!(d2 > 0.0)) break;
      const double step = d1 / d2;
      t_opt -= step;
      if (std::abs(step) < 1e-17) break;
    }
  }

  const double r_opt = std::exp(t_opt);
  const Complex c_opt =
      amag > 0.0 ? Complex(r_opt) * std::conj(a) / amag : Complex(r_opt);
  const double f = (red.amps() - c_opt * w).squaredNorm() +
                   (blue.amps() - z / c_opt).squaredNorm();
  return std::sqrt(f);
}

struct DipSample {
  double delay;
  double p_rb;
};

/// Coincidence probability versus arrival-time offset of the second photon.
/// Samples are evaluated in the order given.
inline std::vector<DipSample> dip_scan(const BlockKernel& kernel,
                                       const WavePacket& red,
                                       const WavePacket& blue,
                                       const std::vector<double>& delays) {
  std::vector<DipSample> curve;
  curve.reserve(delays.size());
  for (double t_d : delays) {
    const TwoPhotonState in =
        two_photon_input(kernel.basis(), red, apply_delay(blue, t_d));
    const OutputProbabilities p = output_probabilities(apply_kernel(kernel, in));
    curve.push_back(DipSample{t_d, p.p_rb});
  }
  return curve;
}

/// Independent verification oracle: expands the transformed pair creation
/// operator product term by term in the two-photon Fock basis, with the
/// explicit sqrt(2) amplitude for doubly occupied modes, and sums the
/// sector probabilities directly. Shares no code with apply_kernel or
/// output_probabilities.
inline OutputProbabilities brute_force_output(const BlockKernel& kernel,
                                              const WavePacket& red,
                                              const WavePacket& blue) {
  const auto n1 = kernel.n1();
  const auto n = n1 + kernel.n2();
  if (n > 8)
    throw TooLarge("brute-force Fock expansion limited to 8 combined modes");
  if (red.grid() != kernel.basis().band1() ||
      blue.grid() != kernel.basis().band2())
    throw GridMismatch("packets do not live on the kernel's band grids");
  const auto& m = kernel.matrix();
  Eigen::MatrixXcd fock = Eigen::MatrixXcd::Zero(n, n);  // upper triangle
  const double rt2 = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < n1; ++i) {
    for (Eigen::Index j = 0; j < kernel.n2(); ++j) {
      const Complex cij = red.amps()[i] * blue.amps()[j];
      for (Eigen::Index k = 0; k < n; ++k) {
        const Complex left = cij * m(i, k);
        for (Eigen::Index l = 0; l < n; ++l) {
          const Complex term = left * m(n1 + j, l);
          if (k == l)
            fock(k, k) += rt2 * term;
          else
            fock(std::min(k, l), std::max(k, l)) += term;
        }
      }
    }
  }
  OutputProbabilities p;
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index l = k; l < n; ++l) {
      const double w = std::norm(fock(k, l));
      if (l < n1)
        p.p_rr += w;
      else if (k >= n1)
        p.p_bb += w;
      else
        p.p_rb += w;
    }
  }
  return p;
}

}  // namespace homsim

#endif  // HOMSIM_HOM_ANALYSIS_HPP_
