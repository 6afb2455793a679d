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

#ifndef HOMSIM_WAVEPACKET_HPP_
#define HOMSIM_WAVEPACKET_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "homsim/errors.hpp"
#include "homsim/frequency_grid.hpp"

namespace homsim {

using Complex = std::complex<double>;

/// Single-photon spectral amplitude on a grid. Amplitudes follow the
/// square-root-measure convention c_k = phi(w_k) * sqrt(spacing), so the
/// continuum normalization of |phi|^2 becomes the unit-vector condition
/// sum |c_k|^2 = 1 and every device transform is an exactly unitary matrix.
class WavePacket {
 public:
  WavePacket(FrequencyGrid grid, Eigen::VectorXcd amps)
      : grid_(std::move(grid)), amps_(std::move(amps)) {
    if (static_cast<std::size_t>(amps_.size()) != grid_.size())
      throw InvalidArgument("amplitude count differs from grid size");
    const double norm2 = amps_.squaredNorm();
    if (std::abs(norm2 - 1.0) > 1e-12)
      throw InvalidArgument("packet amplitudes are not unit-normalized");
  }

  /// Rescales arbitrary amplitudes to unit norm before constructing.
  static WavePacket normalized(FrequencyGrid grid, Eigen::VectorXcd amps) {
    const double n = amps.norm();
    if (n <= 0.0) throw InvalidArgument("cannot normalize a zero amplitude");
    return WavePacket(std::move(grid), amps / n);
  }

  const FrequencyGrid& grid() const { return grid_; }
  const Eigen::VectorXcd& amps() const { return amps_; }
  std::size_t size() const { return grid_.size(); }

 private:
  FrequencyGrid grid_;
  Eigen::VectorXcd amps_;
};

/// <p|q> = sum conj(p_k) q_k on a shared grid.
inline Complex inner_product(const WavePacket& p, const WavePacket& q) {
  if (p.grid() != q.grid())
    throw GridMismatch("inner product requires packets on the same grid");
  return p.amps().dot(q.amps());  // Eigen dot conjugates the left factor
}

/// Pure spectral phase c_k -> c_k * exp(i w_k t_d); shifts the temporal
/// envelope by t_d and preserves all inner-product magnitudes.
inline WavePacket apply_delay(const WavePacket& p, double t_d) {
  Eigen::VectorXcd a = p.amps();
  for (std::size_t k = 0; k < p.size(); ++k)
    a[static_cast<Eigen::Index>(k)] *=
        std::polar(1.0, p.grid().point(k) * t_d);
  return WavePacket(p.grid(), std::move(a));
}

namespace detail {

/// Continuum probability mass of a Gaussian packet lying outside [lo, hi].
/// Chirp and delay are pure phases and do not move any mass.
inline double gaussian_mass_outside(double lo, double hi, double omega0,
                                    double sigma) {
  const double rt2 = std::sqrt(2.0);
  return 0.5 * (std::erfc((hi - omega0) / (rt2 * sigma)) +
                std::erfc((omega0 - lo) / (rt2 * sigma)));
}

}  // namespace detail

/// Gaussian spectral packet with rms width sigma of |phi|^2, quadratic
/// spectral phase `chirp` (s^2) and arrival delay t0 (s):
///   c_k ~ exp(-(w-w0)^2 / (4 sigma^2)) exp(i chirp (w-w0)^2) exp(i w t0).
/// Rejects packets whose untruncated tail mass outside the grid's covered
/// band exceeds 1e-6, since such packets alias rather than discretize. Each
/// sample owns one spacing-wide cell, so the covered band is
/// [front - spacing/2, back + spacing/2] (for a 1-point grid: the span).
inline WavePacket gaussian_packet(const FrequencyGrid& grid, double omega0,
                                  double sigma, double chirp = 0.0,
                                  double t0 = 0.0) {
  if (sigma <= 0.0) throw InvalidArgument("gaussian width must be > 0");
  const double outside = detail::gaussian_mass_outside(
      grid.front() - grid.spacing() / 2.0, grid.back() + grid.spacing() / 2.0,
      omega0, sigma);
  if (outside > 1e-6)
    throw PoorlyResolved("spectral mass outside the grid is " +
                         detail::num_str(outside) + " (> 1e-6)");
  Eigen::VectorXcd a(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double d = grid.point(k) - omega0;
    const double mag = std::exp(-d * d / (4.0 * sigma * sigma));
    const double phase = chirp * d * d + grid.point(k) * t0;
    a[static_cast<Eigen::Index>(k)] = std::polar(mag, phase);
  }
  return WavePacket::normalized(grid, std::move(a));
}

/// First `m` Hermite-Gauss spectral modes about (omega0, sigma), sampled on
/// the grid and re-orthonormalized by modified Gram-Schmidt. Order 0 equals
/// gaussian_packet(grid, omega0, sigma).
inline std::vector<WavePacket> hermite_gauss_family(const FrequencyGrid& grid,
                                                    double omega0,
                                                    double sigma,
                                                    std::size_t m) {
  if (sigma <= 0.0) throw InvalidArgument("gaussian width must be > 0");
  if (m > grid.size())
    throw InvalidArgument("requested " + std::to_string(m) +
                          " modes on a grid of " +
                          std::to_string(grid.size()) + " points");
  const auto n = static_cast<Eigen::Index>(grid.size());
  // Oscillator-normalized recurrence keeps samples bounded at high order.
  Eigen::MatrixXd h(n, static_cast<Eigen::Index>(m));
  for (Eigen::Index k = 0; k < n; ++k) {
    const double x =
        (grid.point(static_cast<std::size_t>(k)) - omega0) /
        (std::sqrt(2.0) * sigma);
    const double g = std::exp(-0.5 * x * x);
    double prev = 0.0, cur = g;
    for (std::size_t j = 0; j < m; ++j) {
      h(k, static_cast<Eigen::Index>(j)) = cur;
      const double next = x * std::sqrt(2.0 / (j + 1.0)) * cur -
                          std::sqrt(static_cast<double>(j) / (j + 1.0)) * prev;
      prev = cur;
      cur = next;
    }
  }
  std::vector<WavePacket> family;
  family.reserve(m);
  std::vector<Eigen::VectorXcd> basis;
  for (std::size_t j = 0; j < m; ++j) {
    Eigen::VectorXcd v = h.col(static_cast<Eigen::Index>(j)).cast<Complex>();
    for (const auto& b : basis) v -= b.dot(v) * b;
    const double nrm = v.norm();
    if (nrm < 1e-13)
      throw InvalidArgument("sampled Hermite-Gauss modes are numerically "
                            "dependent on this grid");
    v /= nrm;
    basis.push_back(v);
    family.emplace_back(grid, std::move(v));
  }
  return family;
}

}  // namespace homsim

#endif  // HOMSIM_WAVEPACKET_HPP_
