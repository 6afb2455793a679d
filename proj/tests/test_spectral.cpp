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

#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "homsim/frequency_grid.hpp"
#include "homsim/time_domain.hpp"
#include "homsim/two_photon_state.hpp"
#include "homsim/wavepacket.hpp"
#include "test_support.hpp"

using namespace homsim;

TEST(frequency_grid, uniform_grid_points) {
  const FrequencyGrid g = make_uniform_grid(200.0, 20.0, 5, Band::red);
  const std::vector<double> expected{190.0, 195.0, 200.0, 205.0, 210.0};
  ASSERT_EQ(g.size(), 5u);
  for (std::size_t k = 0; k < 5; ++k)
    EXPECT_DOUBLE_EQ(g.point(k), expected[k]);
  EXPECT_DOUBLE_EQ(g.spacing(), 5.0);
}

TEST(frequency_grid, single_point_keeps_span_as_measure) {
  const FrequencyGrid g = make_uniform_grid(200.0, 20.0, 1, Band::red);
  ASSERT_EQ(g.size(), 1u);
  EXPECT_DOUBLE_EQ(g.point(0), 200.0);
  EXPECT_DOUBLE_EQ(g.spacing(), 20.0);
}

TEST(frequency_grid, rejects_non_positive_frequencies) {
  EXPECT_THROW(make_uniform_grid(10.0, 25.0, 5, Band::red),
               NonPositiveFrequency);
}

TEST(frequency_grid, rejects_degenerate_arguments) {
  EXPECT_THROW(make_uniform_grid(200.0, 20.0, 0, Band::red), InvalidArgument);
  EXPECT_THROW(make_uniform_grid(200.0, -1.0, 5, Band::red), InvalidArgument);
  EXPECT_THROW(make_uniform_grid(200.0, 0.0, 5, Band::red), InvalidArgument);
}

TEST(frequency_grid, rejects_non_uniform_or_unsorted_points) {
  EXPECT_THROW(FrequencyGrid({190.0, 195.0, 201.0}, 5.0, Band::red),
               InvalidArgument);
  EXPECT_THROW(FrequencyGrid({195.0, 190.0, 185.0}, 5.0, Band::red),
               InvalidArgument);
  EXPECT_NO_THROW(FrequencyGrid({190.0, 195.0, 200.0}, 5.0, Band::red));
}

TEST(wavepacket, constructor_enforces_unit_norm) {
  const FrequencyGrid g = support::desk_grid(4);
  Eigen::VectorXcd half = Eigen::VectorXcd::Zero(4);
  half[0] = 0.5;
  EXPECT_THROW(WavePacket(g, half), InvalidArgument);
  EXPECT_NO_THROW(WavePacket::normalized(g, half));
  EXPECT_THROW(WavePacket::normalized(g, Eigen::VectorXcd::Zero(4)),
               InvalidArgument);
  EXPECT_THROW(WavePacket(g, Eigen::VectorXcd::Ones(3)), InvalidArgument);
}

TEST(two_photon_state, constructor_guards) {
  const ModeBasis basis(support::desk_grid(2, Band::red),
                        support::desk_grid(2, Band::blue, 400.0));
  Eigen::MatrixXcd asym = Eigen::MatrixXcd::Zero(4, 4);
  asym(0, 2) = 1.0;  // missing the transposed partner
  EXPECT_THROW(TwoPhotonState(basis, asym), InvalidArgument);
  Eigen::MatrixXcd weak = Eigen::MatrixXcd::Zero(4, 4);
  weak(0, 2) = weak(2, 0) = 0.5;  // norm 1/4
  EXPECT_THROW(TwoPhotonState(basis, weak), InvalidArgument);
  EXPECT_THROW(TwoPhotonState(basis, Eigen::MatrixXcd::Zero(3, 3)),
               InvalidArgument);
}

TEST(gaussian_packet, unit_norm_and_symmetry) {
  const FrequencyGrid g = support::desk_grid(65);
  const WavePacket p = gaussian_packet(g, g.center(), 2.5);
  EXPECT_NEAR(p.amps().squaredNorm(), 1.0, 1e-12);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Complex a = p.amps()[static_cast<Eigen::Index>(k)];
    const Complex b = p.amps()[static_cast<Eigen::Index>(g.size() - 1 - k)];
    EXPECT_GT(a.real(), 0.0);
    EXPECT_DOUBLE_EQ(a.imag(), 0.0);
    EXPECT_NEAR(a.real(), b.real(), 1e-15);
  }
}

// Oracle: untruncated Gaussian mass outside the covered band, evaluated
// with erfc. The covered band extends half a cell beyond the end points.
TEST(gaussian_packet, rejects_poorly_resolved_spectra) {
  const FrequencyGrid g = support::desk_grid(65);  // spans [180, 220]
  const double half = (g.back() - g.front() + g.spacing()) / 2.0;
  const double wide = g.back() - g.front();  // sigma as wide as the grid
  const double analytic_outside = std::erfc(half / (std::sqrt(2.0) * wide));
  ASSERT_GT(analytic_outside, 1e-6);
  EXPECT_THROW(gaussian_packet(g, g.center(), wide), PoorlyResolved);

  // Just-resolved case: mass outside ~5 sigma is ~5.6e-7, below the budget.
  const double narrow = (g.back() - g.front()) / 10.0;
  const double narrow_outside = std::erfc(half / (std::sqrt(2.0) * narrow));
  ASSERT_LT(narrow_outside, 1e-6);
  EXPECT_NO_THROW(gaussian_packet(g, g.center(), narrow));

  // Off-center packets lose mass on one side only.
  EXPECT_THROW(gaussian_packet(g, g.back(), narrow), PoorlyResolved);
}

TEST(gaussian_packet, chirp_and_delay_are_pure_phases) {
  const FrequencyGrid g = support::desk_grid(33);
  const WavePacket plain = gaussian_packet(g, g.center(), 3.0);
  const WavePacket fancy = gaussian_packet(g, g.center(), 3.0, 0.03, 1.7);
  for (std::size_t k = 0; k < g.size(); ++k)
    EXPECT_NEAR(std::abs(plain.amps()[static_cast<Eigen::Index>(k)]),
                std::abs(fancy.amps()[static_cast<Eigen::Index>(k)]), 1e-14);
}

TEST(hermite_gauss_family, gram_matrix_is_identity) {
  const FrequencyGrid g = support::desk_grid(48);
  const auto family = hermite_gauss_family(g, g.center(), 3.0, 6);
  ASSERT_EQ(family.size(), 6u);
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = 0; j < family.size(); ++j) {
      const Complex ip = inner_product(family[i], family[j]);
      EXPECT_NEAR(std::abs(ip - (i == j ? 1.0 : 0.0)), 0.0, 1e-10);
    }
}

TEST(hermite_gauss_family, order_zero_is_the_gaussian) {
  const FrequencyGrid g = support::desk_grid(48);
  const auto family = hermite_gauss_family(g, g.center(), 3.0, 3);
  const WavePacket ref = gaussian_packet(g, g.center(), 3.0);
  EXPECT_LT((family[0].amps() - ref.amps()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(hermite_gauss_family, rejects_more_modes_than_grid_points) {
  const FrequencyGrid g = support::desk_grid(8);
  EXPECT_THROW(hermite_gauss_family(g, g.center(), 3.0, 9), InvalidArgument);
}

TEST(apply_delay, zero_delay_is_identity) {
  const FrequencyGrid g = support::desk_grid(17);
  const WavePacket p = gaussian_packet(g, g.center(), 2.0);
  const WavePacket q = apply_delay(p, 0.0);
  EXPECT_LT((p.amps() - q.amps()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(apply_delay, preserves_norm) {
  const FrequencyGrid g = support::desk_grid(17);
  const WavePacket p = gaussian_packet(g, g.center(), 2.0);
  EXPECT_NEAR(apply_delay(p, 3.7).amps().squaredNorm(), 1.0, 1e-12);
}

// Oracle: |<p, delay(p, t)>| = exp(-sigma^2 t^2 / 2) for a Gaussian,
// evaluated from the closed form, on a grid fine enough that the
// discretization error is far below the asserted tolerance.
TEST(apply_delay, gaussian_self_overlap_matches_closed_form) {
  const double sigma = 1.0;
  const FrequencyGrid g =
      make_uniform_grid(200.0, 16.0 * sigma, 257, Band::red);
  const WavePacket p = gaussian_packet(g, 200.0, sigma);
  for (double t : {0.0, 0.25, 0.5, 1.0, 2.0}) {
    const double expected = std::exp(-sigma * sigma * t * t / 2.0);
    EXPECT_NEAR(std::abs(inner_product(p, apply_delay(p, t))), expected,
                1e-12);
  }
  EXPECT_NEAR(std::abs(inner_product(p, apply_delay(p, 0.5))),
              0.88249690258459546, 1e-12);
}

TEST(apply_delay, preserves_pairwise_overlap_magnitudes) {
  std::mt19937_64 rng(41);
  const FrequencyGrid g = support::desk_grid(24);
  for (int round = 0; round < 50; ++round) {
    const WavePacket p = support::random_packet(g, rng);
    const WavePacket q = support::random_packet(g, rng);
    const double before = std::abs(inner_product(p, q));
    const double t = std::uniform_real_distribution<double>(-5.0, 5.0)(rng);
    const double after =
        std::abs(inner_product(apply_delay(p, t), apply_delay(q, t)));
    EXPECT_NEAR(before, after, 1e-12);
  }
}

TEST(inner_product, unit_norm_and_grid_guard) {
  const FrequencyGrid g = support::desk_grid(9);
  const WavePacket p = gaussian_packet(g, g.center(), 3.0);
  EXPECT_NEAR(std::abs(inner_product(p, p) - 1.0), 0.0, 1e-12);
  const FrequencyGrid other = support::desk_grid(9, Band::blue);
  const WavePacket q = gaussian_packet(other, other.center(), 3.0);
  EXPECT_THROW(inner_product(p, q), GridMismatch);
}

TEST(to_time_domain, parseval_and_round_trip) {
  const FrequencyGrid g = support::desk_grid(64);
  const WavePacket p = gaussian_packet(g, g.center(), 2.0, 0.01, 0.4);
  const TemporalAmplitude t = to_time_domain(p);
  EXPECT_NEAR(t.squared_norm(), 1.0, 1e-6);
  const WavePacket back = from_time_domain(t, g);
  EXPECT_LT((back.amps() - p.amps()).cwiseAbs().maxCoeff(), 1e-10);
}

// Oracle: the Fourier pair of a Gaussian with spectral rms sigma has
// temporal intensity rms 1/(2 sigma).
TEST(to_time_domain, gaussian_temporal_width) {
  const double sigma = 2.0;
  const FrequencyGrid g = make_uniform_grid(300.0, 16.0 * sigma, 129, Band::red);
  const WavePacket p = gaussian_packet(g, 300.0, sigma);
  const TemporalAmplitude t = to_time_domain(p);
  double mean = 0.0, second = 0.0;
  for (std::size_t j = 0; j < t.times.size(); ++j) {
    const double w =
        std::norm(t.amps[static_cast<Eigen::Index>(j)]) * t.dt;
    mean += w * t.times[j];
    second += w * t.times[j] * t.times[j];
  }
  const double rms = std::sqrt(second - mean * mean);
  EXPECT_NEAR(rms, 1.0 / (2.0 * sigma), 0.02 / (2.0 * sigma));
}

TEST(to_time_domain, delay_shifts_the_envelope_peak) {
  const FrequencyGrid g = support::desk_grid(128);
  const WavePacket p = gaussian_packet(g, g.center(), 2.0);
  const TemporalAmplitude base = to_time_domain(p);
  const double dt = base.dt;
  const double t_d = 8.0 * dt;
  const TemporalAmplitude shifted = to_time_domain(apply_delay(p, t_d));
  Eigen::Index peak_base = 0, peak_shifted = 0;
  base.amps.cwiseAbs().maxCoeff(&peak_base);
  shifted.amps.cwiseAbs().maxCoeff(&peak_shifted);
  EXPECT_NEAR(shifted.times[static_cast<std::size_t>(peak_shifted)] -
                  base.times[static_cast<std::size_t>(peak_base)],
              t_d, dt / 2.0);
}

TEST(to_time_domain, rejects_fewer_samples_than_grid_points) {
  const FrequencyGrid g = support::desk_grid(16);
  const WavePacket p = gaussian_packet(g, g.center(), 4.0);
  EXPECT_THROW(to_time_domain(p, 8), InvalidArgument);
}

TEST(two_photon_input, minimal_two_mode_case) {
  const FrequencyGrid red = make_uniform_grid(200.0, 10.0, 1, Band::red);
  const FrequencyGrid blue = make_uniform_grid(400.0, 10.0, 1, Band::blue);
  const Eigen::VectorXcd one = Eigen::VectorXcd::Ones(1);
  const TwoPhotonState s =
      two_photon_input(WavePacket(red, one), WavePacket(blue, one));
  ASSERT_EQ(s.pair_amps().rows(), 2);
  EXPECT_NEAR(std::abs(s.pair_amps()(0, 1) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(s.pair_amps()(1, 0) - 1.0), 0.0, 1e-15);
  EXPECT_EQ(s.pair_amps()(0, 0), Complex(0.0, 0.0));
  EXPECT_EQ(s.pair_amps()(1, 1), Complex(0.0, 0.0));
}

TEST(two_photon_input, structure_and_norm) {
  std::mt19937_64 rng(7);
  const FrequencyGrid red = support::desk_grid(6, Band::red);
  const FrequencyGrid blue = support::desk_grid(5, Band::blue, 400.0);
  const WavePacket r = support::random_packet(red, rng);
  const WavePacket b = support::random_packet(blue, rng);
  const TwoPhotonState s = two_photon_input(r, b);
  EXPECT_NEAR(s.norm(), 1.0, 1e-12);
  const auto& m = s.pair_amps();
  EXPECT_LT((m - m.transpose()).cwiseAbs().maxCoeff(), 1e-18);
  EXPECT_LT(m.topLeftCorner(6, 6).cwiseAbs().maxCoeff(), 1e-18);
  EXPECT_LT(m.bottomRightCorner(5, 5).cwiseAbs().maxCoeff(), 1e-18);
  const Eigen::MatrixXcd outer = r.amps() * b.amps().transpose();
  EXPECT_LT((m.topRightCorner(6, 5) - outer).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(two_photon_input, rejects_packets_off_the_declared_basis) {
  std::mt19937_64 rng(11);
  const FrequencyGrid red = support::desk_grid(4, Band::red);
  const FrequencyGrid blue = support::desk_grid(4, Band::blue, 400.0);
  const ModeBasis basis(red, blue);
  const WavePacket r = support::random_packet(red, rng);
  const WavePacket wrong =
      support::random_packet(support::desk_grid(4, Band::blue, 500.0), rng);
  EXPECT_THROW(two_photon_input(basis, r, wrong), GridMismatch);
}
