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

#ifndef HOMSIM_TIME_DOMAIN_HPP_
#define HOMSIM_TIME_DOMAIN_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "homsim/errors.hpp"
#include "homsim/wavepacket.hpp"

namespace homsim {

/// Temporal amplitude on the DFT-conjugate grid of a spectral packet,
/// normalized so that sum |amps|^2 * dt = 1.
struct TemporalAmplitude {
  std::vector<double> times;
  Eigen::VectorXcd amps;
  double dt = 0.0;

  double squared_norm() const { return amps.squaredNorm() * dt; }
};

/// phi~(t_j) = sqrt(dw / 2 pi) * sum_k c_k exp(-i w_k t_j) on the conjugate
/// grid dt = 2 pi / (n_times * dw), centered at t = 0. `n_times = 0` keeps
/// the spectral grid size (no padding); larger values zero-pad the band.
inline TemporalAmplitude to_time_domain(const WavePacket& p,
                                        std::size_t n_times = 0) {
  const std::size_t n = p.size();
  if (n_times == 0) n_times = n;
  if (n_times < n)
    throw InvalidArgument("n_times must be 0 or >= the grid size");
  const double dw = p.grid().spacing();
  const double dt = 2.0 * std::numbers::pi / (static_cast<double>(n_times) * dw);
  const double scale = std::sqrt(dw / (2.0 * std::numbers::pi));
  TemporalAmplitude out;
  out.dt = dt;
  out.times.resize(n_times);
  out.amps.resize(static_cast<Eigen::Index>(n_times));
  const auto j0 = static_cast<double>(n_times / 2);
  for (std::size_t j = 0; j < n_times; ++j) {
    const double t = (static_cast<double>(j) - j0) * dt;
    out.times[j] = t;
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < n; ++k)
      acc += p.amps()[static_cast<Eigen::Index>(k)] *
             std::polar(1.0, -p.grid().point(k) * t);
    out.amps[static_cast<Eigen::Index>(j)] = scale * acc;
  }
  return out;
}

/// Inverse of to_time_domain on the unpadded conjugate grid.
inline WavePacket from_time_domain(const TemporalAmplitude& t,
                                   const FrequencyGrid& grid) {
  if (t.times.size() != grid.size())
    throw InvalidArgument("inverse transform requires the unpadded time grid");
  const double dw = grid.spacing();
  const double scale = std::sqrt(dw / (2.0 * std::numbers::pi)) * t.dt;
  Eigen::VectorXcd amps(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t j = 0; j < t.times.size(); ++j)
      acc += t.amps[static_cast<Eigen::Index>(j)] *
             std::polar(1.0, grid.point(k) * t.times[j]);
    amps[static_cast<Eigen::Index>(k)] = scale * acc;
  }
  return WavePacket::normalized(grid, std::move(amps));
}

}  // namespace homsim

#endif  // HOMSIM_TIME_DOMAIN_HPP_
