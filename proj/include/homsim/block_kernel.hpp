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

#ifndef HOMSIM_BLOCK_KERNEL_HPP_
#define HOMSIM_BLOCK_KERNEL_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cstddef>
#include <utility>

#include "homsim/errors.hpp"
#include "homsim/two_photon_state.hpp"

namespace homsim {

/// Unitary mode transformation over a combined two-band basis, stored in the
/// maps-to convention: row i holds the expansion of input creation operator
/// a_i^dag over the output operators, so an input packet c emerges as M^T c.
/// Block views split the matrix by band:
///
///   [ G_rr  G_rb ]   rows: band-1 inputs, band-2 inputs
///   [ G_br  G_bb ]   cols: band-1 outputs, band-2 outputs
///
/// The constructor checks shape only; construction helpers produce unitary
/// kernels and verify_unitarity reports residuals for anything else.
class BlockKernel {
 public:
  BlockKernel(ModeBasis basis, Eigen::MatrixXcd matrix)
      : basis_(std::move(basis)), m_(std::move(matrix)) {
    const auto n = static_cast<Eigen::Index>(basis_.size());
    if (m_.rows() != n || m_.cols() != n)
      throw InvalidArgument("kernel matrix does not match the basis size");
  }

  const ModeBasis& basis() const { return basis_; }
  const Eigen::MatrixXcd& matrix() const { return m_; }

  Eigen::Index n1() const { return static_cast<Eigen::Index>(basis_.size1()); }
  Eigen::Index n2() const { return static_cast<Eigen::Index>(basis_.size2()); }

  auto grr() const { return m_.topLeftCorner(n1(), n1()); }
  auto grb() const { return m_.topRightCorner(n1(), n2()); }
  auto gbr() const { return m_.bottomLeftCorner(n2(), n1()); }
  auto gbb() const { return m_.bottomRightCorner(n2(), n2()); }

 private:
  ModeBasis basis_;
  Eigen::MatrixXcd m_;
};

/// Max-abs residuals of the unitarity conditions, whole-matrix and per
/// block of M M^dag - I (band transmission and cross-band conversion).
struct UnitarityReport {
  double left_residual = 0.0;   // ||M M^dag - I||_max
  double right_residual = 0.0;  // ||M^dag M - I||_max
  double block_rr = 0.0;
  double block_rb = 0.0;
  double block_br = 0.0;
  double block_bb = 0.0;

  double max_residual() const {
    return std::max({left_residual, right_residual, block_rr, block_rb,
                     block_br, block_bb});
  }
};

inline UnitarityReport verify_unitarity(const BlockKernel& k) {
  const auto& m = k.matrix();
  const auto n = m.rows();
  const Eigen::MatrixXcd left =
      m * m.adjoint() - Eigen::MatrixXcd::Identity(n, n);
  const Eigen::MatrixXcd right =
      m.adjoint() * m - Eigen::MatrixXcd::Identity(n, n);
  UnitarityReport r;
  r.left_residual = left.cwiseAbs().maxCoeff();
  r.right_residual = right.cwiseAbs().maxCoeff();
  const auto n1 = k.n1();
  const auto n2 = k.n2();
  r.block_rr = left.topLeftCorner(n1, n1).cwiseAbs().maxCoeff();
  r.block_rb = left.topRightCorner(n1, n2).cwiseAbs().maxCoeff();
  r.block_br = left.bottomLeftCorner(n2, n1).cwiseAbs().maxCoeff();
  r.block_bb = left.bottomRightCorner(n2, n2).cwiseAbs().maxCoeff();
  return r;
}

/// Propagates a two-photon state: S -> M^T S M. Unitarity of M preserves
/// the norm; the result is re-symmetrized to keep S = S^T exact.
inline TwoPhotonState apply_kernel(const BlockKernel& k,
                                   const TwoPhotonState& state) {
  if (state.basis() != k.basis())
    throw BasisMismatch("state basis does not match the kernel basis");
  Eigen::MatrixXcd s = k.matrix().transpose() * state.pair_amps() * k.matrix();
  s = 0.5 * (s + s.transpose()).eval();
  return TwoPhotonState(k.basis(), std::move(s));
}

}  // namespace homsim

#endif  // HOMSIM_BLOCK_KERNEL_HPP_
