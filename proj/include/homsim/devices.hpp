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

#ifndef HOMSIM_DEVICES_HPP_
#define HOMSIM_DEVICES_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "homsim/block_kernel.hpp"
#include "homsim/errors.hpp"
#include "homsim/wavepacket.hpp"

namespace homsim {

inline constexpr double kCoefficientTolerance = 1e-9;

namespace detail {

inline void check_splitter_coefficients(double tau, double rho) {
  if (tau < 0.0 || rho < 0.0)
    throw InvalidCoefficients("tau and rho must be non-negative");
  if (std::abs(tau * tau + rho * rho - 1.0) > kCoefficientTolerance)
    throw InvalidCoefficients("tau^2 + rho^2 = 1 violated: tau=" +
                              std::to_string(tau) + " rho=" +
                              std::to_string(rho));
}

/// Matrix with the shared pairwise structure of the frequency-diagonal
/// devices: input band-1 mode k -> tau (band-1 k) - rho (band-2 k), and
/// input band-2 mode k -> rho (band-1 k) + tau (band-2 k).
inline Eigen::MatrixXcd pairwise_splitter_matrix(Eigen::Index n, double tau,
                                                 double rho) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (Eigen::Index k = 0; k < n; ++k) {
    m(k, k) = tau;
    m(k, n + k) = -rho;
    m(n + k, k) = rho;
    m(n + k, n + k) = tau;
  }
  return m;
}

}  // namespace detail

/// Energy-preserving splitter acting per frequency on two ports that share
/// one grid. For n = 1 and tau = rho = 1/sqrt(2) this is the textbook
/// two-mode 50/50 matrix [[t, -r], [r, t]].
inline BlockKernel passive_splitter(double tau, double rho,
                                    const FrequencyGrid& grid) {
  detail::check_splitter_coefficients(tau, rho);
  ModeBasis basis(grid.relabeled(Band::port1), grid.relabeled(Band::port2));
  return BlockKernel(basis,
                     detail::pairwise_splitter_matrix(
                         static_cast<Eigen::Index>(grid.size()), tau, rho));
}

/// Mirror moving at normalized speed beta = v/c. Reflection doppler-shifts
/// twice, scaling frequencies by alpha = (1 - beta) / (1 + beta).
struct MirrorParams {
  double tau;
  double rho;
  double beta;

  MirrorParams(double tau_, double rho_, double beta_)
      : tau(tau_), rho(rho_), beta(beta_) {
    detail::check_splitter_coefficients(tau, rho);
    if (!(std::abs(beta) < 1.0))
      throw InvalidArgument("|beta| < 1 violated: beta=" +
                            std::to_string(beta));
  }

  double alpha() const { return (1.0 - beta) / (1.0 + beta); }
};

/// Active splitter formed by a semi-transparent moving mirror. The blue grid
/// is the red grid scaled by 1/alpha, so each red mode couples to exactly
/// one blue mode and the transformation is an exact two-mode rotation per
/// pair. In the sqrt-measure amplitude convention the continuum factors
/// rho / sqrt(alpha) and rho sqrt(alpha) both reduce to plain rho, because
/// the blue measure is the red measure divided by alpha.
inline BlockKernel moving_mirror(const MirrorParams& params,
                                 const FrequencyGrid& red_grid) {
  const double alpha = params.alpha();
  ModeBasis basis(red_grid.relabeled(Band::red),
                  red_grid.scaled(1.0 / alpha, Band::blue));
  return BlockKernel(basis, detail::pairwise_splitter_matrix(
                                static_cast<Eigen::Index>(red_grid.size()),
                                params.tau, params.rho));
}

/// Bragg-scattering frequency translator driven by monochromatic pumps with
/// frequency difference omega_shift.
struct BraggParams {
  double tau;
  double rho;
  double omega_shift;

  BraggParams(double tau_, double rho_, double omega_shift_)
      : tau(tau_), rho(rho_), omega_shift(omega_shift_) {
    detail::check_splitter_coefficients(tau, rho);
  }
};

/// CW Bragg scattering couples red mode w to blue mode w + omega_shift with
/// the same pairwise pattern as the other splitters. The two sidebands must
/// not intersect; a zero shift is the passive splitter, not a translator.
inline BlockKernel cw_bragg(const BraggParams& params,
                            const FrequencyGrid& red_grid) {
  FrequencyGrid blue = red_grid.shifted(params.omega_shift, Band::blue);
  const bool disjoint =
      blue.front() > red_grid.back() || blue.back() < red_grid.front();
  if (!disjoint)
    throw BandOverlap("shifted band intersects the red band (omega_shift=" +
                      std::to_string(params.omega_shift) + ")");
  ModeBasis basis(red_grid.relabeled(Band::red), std::move(blue));
  return BlockKernel(basis, detail::pairwise_splitter_matrix(
                                static_cast<Eigen::Index>(red_grid.size()),
                                params.tau, params.rho));
}

/// One synthesis entry: a two-mode splitter with transmissivity tau and
/// conversion phase theta acting between explicit input/output mode pairs.
struct SchmidtEntry {
  double tau;
  double theta;
  WavePacket input_red;    // V_n
  WavePacket output_red;   // v_n
  WavePacket input_blue;   // W_n
  WavePacket output_blue;  // w_n
};

using SchmidtSpec = std::vector<SchmidtEntry>;

namespace detail {

inline Eigen::MatrixXcd packet_columns(const SchmidtSpec& spec,
                                       const WavePacket SchmidtEntry::*field,
                                       const FrequencyGrid& grid) {
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(grid.size()),
                     static_cast<Eigen::Index>(spec.size()));
  for (std::size_t j = 0; j < spec.size(); ++j) {
    const WavePacket& p = spec[j].*field;
    if (p.grid() != grid)
      throw GridMismatch("synthesis mode family does not match the basis");
    m.col(static_cast<Eigen::Index>(j)) = p.amps();
  }
  return m;
}

inline void check_orthonormal(const Eigen::MatrixXcd& columns,
                              const char* what) {
  if (columns.cols() == 0) return;
  const Eigen::MatrixXcd gram = columns.adjoint() * columns;
  const double resid =
      (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (resid > 1e-10)
    throw NonOrthonormalModes(std::string(what) +
                              " modes are not orthonormal (residual " +
                              detail::num_str(resid) + ")");
}

/// Orthonormal basis of the orthogonal complement of the column span,
/// taken from the trailing columns of a full Householder QR.
inline Eigen::MatrixXcd orthonormal_complement(const Eigen::MatrixXcd& cols) {
  const Eigen::Index n = cols.rows();
  const Eigen::Index m = cols.cols();
  if (m >= n) return Eigen::MatrixXcd(n, 0);
  if (m == 0) return Eigen::MatrixXcd::Identity(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(cols);
  Eigen::MatrixXcd q = qr.householderQ();
  return q.rightCols(n - m);
}

}  // namespace detail

/// Builds the block kernel whose band blocks are mode-wise splitters,
///
///   G_rr = sum tau_n V_n v_n^dag          G_rb = -sum rho_n e^{i theta_n} V_n w_n^dag
///   G_br = sum rho_n e^{-i theta_n} W_n v_n^dag   G_bb = sum tau_n W_n w_n^dag
///
/// with rho_n = sqrt(1 - tau_n^2). The orthogonal complement of each spanned
/// subspace is completed with tau = 1 (stay-in-band) action so the kernel is
/// unitary on the whole basis.
inline BlockKernel synthesize_kernel(const SchmidtSpec& spec,
                                     const ModeBasis& basis) {
  const auto n1 = static_cast<Eigen::Index>(basis.size1());
  const auto n2 = static_cast<Eigen::Index>(basis.size2());
  const auto m = static_cast<Eigen::Index>(spec.size());
  if (m > n1 || m > n2)
    throw TooManyModes("spec has " + std::to_string(spec.size()) +
                       " entries for bands of " + std::to_string(n1) + "/" +
                       std::to_string(n2) + " modes");
  for (const auto& e : spec) {
    if (e.tau < 0.0 || e.tau > 1.0)
      throw InvalidCoefficients("tau_n must lie in [0, 1]");
  }
  const Eigen::MatrixXcd vin =
      detail::packet_columns(spec, &SchmidtEntry::input_red, basis.band1());
  const Eigen::MatrixXcd vout =
      detail::packet_columns(spec, &SchmidtEntry::output_red, basis.band1());
  const Eigen::MatrixXcd win =
      detail::packet_columns(spec, &SchmidtEntry::input_blue, basis.band2());
  const Eigen::MatrixXcd wout =
      detail::packet_columns(spec, &SchmidtEntry::output_blue, basis.band2());
  detail::check_orthonormal(vin, "input red");
  detail::check_orthonormal(vout, "output red");
  detail::check_orthonormal(win, "input blue");
  detail::check_orthonormal(wout, "output blue");

  Eigen::VectorXcd tau(m), conv_in(m), conv_out(m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto& e = spec[static_cast<std::size_t>(j)];
    const double rho = std::sqrt(std::max(0.0, 1.0 - e.tau * e.tau));
    tau[j] = e.tau;
    conv_in[j] = -rho * std::polar(1.0, e.theta);   // red -> blue
    conv_out[j] = rho * std::polar(1.0, -e.theta);  // blue -> red
  }

  Eigen::MatrixXcd mtx = Eigen::MatrixXcd::Zero(n1 + n2, n1 + n2);
  mtx.topLeftCorner(n1, n1) = vin * tau.asDiagonal() * vout.adjoint();
  mtx.topRightCorner(n1, n2) = vin * conv_in.asDiagonal() * wout.adjoint();
  mtx.bottomLeftCorner(n2, n1) = win * conv_out.asDiagonal() * vout.adjoint();
  mtx.bottomRightCorner(n2, n2) = win * tau.asDiagonal() * wout.adjoint();

  const Eigen::MatrixXcd vin_c = detail::orthonormal_complement(vin);
  const Eigen::MatrixXcd vout_c = detail::orthonormal_complement(vout);
  const Eigen::MatrixXcd win_c = detail::orthonormal_complement(win);
  const Eigen::MatrixXcd wout_c = detail::orthonormal_complement(wout);
  mtx.topLeftCorner(n1, n1) += vin_c * vout_c.adjoint();
  mtx.bottomRightCorner(n2, n2) += win_c * wout_c.adjoint();
  return BlockKernel(basis, std::move(mtx));
}

}  // namespace homsim

#endif  // HOMSIM_DEVICES_HPP_
