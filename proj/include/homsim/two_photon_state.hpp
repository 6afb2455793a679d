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

#ifndef HOMSIM_TWO_PHOTON_STATE_HPP_
#define HOMSIM_TWO_PHOTON_STATE_HPP_

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <utility>

#include "homsim/errors.hpp"
#include "homsim/frequency_grid.hpp"
#include "homsim/wavepacket.hpp"

namespace homsim {

/// Ordered concatenation of two band grids: combined mode index k addresses
/// band 1 for k < band1.size() and band 2 otherwise. Each band keeps its own
/// measure, so the two grids may differ in spacing (active devices do).
class ModeBasis {
 public:
  ModeBasis(FrequencyGrid band1, FrequencyGrid band2)
      : band1_(std::move(band1)), band2_(std::move(band2)) {
    if (band1_.band() == band2_.band())
      throw InvalidArgument("combined basis needs two distinct band labels");
  }

  const FrequencyGrid& band1() const { return band1_; }
  const FrequencyGrid& band2() const { return band2_; }
  std::size_t size1() const { return band1_.size(); }
  std::size_t size2() const { return band2_.size(); }
  std::size_t size() const { return band1_.size() + band2_.size(); }

  friend bool operator==(const ModeBasis& a, const ModeBasis& b) {
    return a.band1_ == b.band1_ && a.band2_ == b.band2_;
  }
  friend bool operator!=(const ModeBasis& a, const ModeBasis& b) {
    return !(a == b);
  }

 private:
  FrequencyGrid band1_;
  FrequencyGrid band2_;
};

/// Pure two-photon state over a combined basis, held as the symmetric
/// pair-amplitude matrix S_{kl} = <vac| a_k a_l |Psi>. A doubly occupied
/// mode contributes |S_kk|^2 / 2 to probabilities because <vac|a^2|2> is
/// sqrt(2); the norm below carries the same half weight so the matrix
/// pipeline agrees with a direct Fock expansion.
class TwoPhotonState {
 public:
  TwoPhotonState(ModeBasis basis, Eigen::MatrixXcd pair_amps)
      : basis_(std::move(basis)), s_(std::move(pair_amps)) {
    const auto n = static_cast<Eigen::Index>(basis_.size());
    if (s_.rows() != n || s_.cols() != n)
      throw InvalidArgument("pair-amplitude matrix does not match the basis");
    const double asym = (s_ - s_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12)
      throw InvalidArgument("pair-amplitude matrix is not symmetric");
    s_ = 0.5 * (s_ + s_.transpose()).eval();  // exact bosonic symmetry
    if (std::abs(norm() - 1.0) > 1e-10)
      throw InvalidArgument("two-photon state is not normalized");
  }

  const ModeBasis& basis() const { return basis_; }
  const Eigen::MatrixXcd& pair_amps() const { return s_; }

  /// sum_{k<l} |S_kl|^2 + (1/2) sum_k |S_kk|^2, which is 1 for a valid state.
  double norm() const {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < s_.rows(); ++k) {
      acc += 0.5 * std::norm(s_(k, k));
      for (Eigen::Index l = k + 1; l < s_.cols(); ++l) acc += std::norm(s_(k, l));
    }
    return acc;
  }

 private:
  ModeBasis basis_;
  Eigen::MatrixXcd s_;
};

/// One photon in each band: S = u v^T + v u^T with u, v the packets embedded
/// in their band slots. Within-band blocks vanish and the norm is 1.
inline TwoPhotonState two_photon_input(const ModeBasis& basis,
                                       const WavePacket& p1,
                                       const WavePacket& p2) {
  if (p1.grid() != basis.band1() || p2.grid() != basis.band2())
    throw GridMismatch("input packets do not live on the declared basis");
  const auto n = static_cast<Eigen::Index>(basis.size());
  const auto n1 = static_cast<Eigen::Index>(basis.size1());
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(n);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(n);
  u.head(n1) = p1.amps();
  v.tail(n - n1) = p2.amps();
  Eigen::MatrixXcd s = u * v.transpose();
  s += (v * u.transpose()).eval();
  return TwoPhotonState(basis, std::move(s));
}

inline TwoPhotonState two_photon_input(const WavePacket& p1,
                                       const WavePacket& p2) {
  return two_photon_input(ModeBasis(p1.grid(), p2.grid()), p1, p2);
}

}  // namespace homsim

#endif  // HOMSIM_TWO_PHOTON_STATE_HPP_
