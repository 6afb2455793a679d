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

#ifndef HOMSIM_BEAM_SPLITTER_DECOMPOSITION_HPP_
#define HOMSIM_BEAM_SPLITTER_DECOMPOSITION_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "homsim/block_kernel.hpp"
#include "homsim/errors.hpp"
#include "homsim/hom_analysis.hpp"

namespace homsim {

/// A 2n-mode unitary kernel rewritten as n independent two-mode splitters.
/// Working in the transposed (output = matrix times input-coefficients)
/// blocks A, B, C, D, the factorization is
///
///   [ A  B ]              [  E1_j a_j F1_j^dag   E1_j b_j F2_j^dag ]
///   [ C  D ]  =  sum_j    [ -E2_j b_j F1_j^dag   E2_j a_j F2_j^dag ]
///
/// with a_j^2 + b_j^2 = 1. F1/F2 are the red/blue input mode vectors, E1/E2
/// the output ones; splitter j transmits with a_j and converts with b_j.
struct BeamSplitterDecomposition {
  Eigen::VectorXd alpha;            // transmission coefficients, descending
  Eigen::VectorXd beta;             // conversion coefficients, >= 0
  Eigen::MatrixXcd e1, f1;          // red-band columns (output, input)
  Eigen::MatrixXcd e2, f2;          // blue-band columns (output, input)
  double reconstruction_residual;   // max-abs defect of the factorization
  FrequencyGrid red_grid;
  FrequencyGrid blue_grid;

  Eigen::Index size() const { return alpha.size(); }

  /// Rebuilds the kernel matrix in the maps-to (row = input) convention.
  Eigen::MatrixXcd reconstruct_kernel_matrix() const {
    const Eigen::Index n = size();
    Eigen::MatrixXcd app(2 * n, 2 * n);
    app.topLeftCorner(n, n) = e1 * alpha.asDiagonal() * f1.adjoint();
    app.topRightCorner(n, n) = e1 * beta.asDiagonal() * f2.adjoint();
    app.bottomLeftCorner(n, n) = -e2 * beta.asDiagonal() * f1.adjoint();
    app.bottomRightCorner(n, n) = e2 * alpha.asDiagonal() * f2.adjoint();
    return app.transpose();
  }
};

/// Alternative route to the HOM kernel: K = 2 sum_j conj(a_j) b_j F1_j F2_j^dag.
inline HomKernelMatrix hom_kernel_from_decomposition(
    const BeamSplitterDecomposition& d) {
  Eigen::VectorXcd weights(d.size());
  for (Eigen::Index j = 0; j < d.size(); ++j)
    weights[j] = 2.0 * d.alpha[j] * d.beta[j];
  return HomKernelMatrix{d.f1 * weights.asDiagonal() * d.f2.adjoint(),
                         d.red_grid, d.blue_grid};
}

inline BeamSplitterDecomposition beam_splitter_decompose(
    const BlockKernel& kernel) {
  if (kernel.n1() != kernel.n2())
    throw InvalidArgument("beam-splitter decomposition needs equal bands");
  const double uresid = verify_unitarity(kernel).max_residual();
  if (uresid > kUnitarityGuard)
    throw NotUnitary("kernel unitarity residual " + detail::num_str(uresid) +
                     " exceeds " + detail::num_str(kUnitarityGuard));
  const Eigen::Index n = kernel.n1();
  const Eigen::MatrixXcd a_blk = kernel.grr().transpose();
  const Eigen::MatrixXcd b_blk = kernel.gbr().transpose();
  const Eigen::MatrixXcd c_blk = kernel.grb().transpose();
  const Eigen::MatrixXcd d_blk = kernel.gbb().transpose();

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd_a(
      a_blk, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd alpha = svd_a.singularValues();
  Eigen::MatrixXcd e1 = svd_a.matrixU();
  Eigen::MatrixXcd f1 = svd_a.matrixV();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(n);
  Eigen::MatrixXcd e2 = Eigen::MatrixXcd::Zero(n, n);
  Eigen::MatrixXcd f2 = Eigen::MatrixXcd::Zero(n, n);

  // Modes whose conversion coefficient is numerically zero cannot take
  // their blue-band vectors from B and C; they are resolved from D below.
  constexpr double kGroupTolerance = 1e-8;
  constexpr double kConversionFloor = 1e-6;
  std::vector<Eigen::Index> deferred;

  Eigen::Index lo = 0;
  while (lo < n) {
    Eigen::Index hi = lo + 1;
    while (hi < n && alpha[hi - 1] - alpha[hi] <= kGroupTolerance) ++hi;
    const Eigen::Index g = hi - lo;
    // A restricted to a degenerate alpha-subspace fixes E1 and F1 only up
    // to a joint unitary rotation. The SVD of the B contraction picks the
    // rotation in which B is diagonal on the subspace; applying it to both
    // E1 and F1 keeps the A block unchanged.
    const Eigen::MatrixXcd b_rows =
        e1.middleCols(lo, g).adjoint() * b_blk;  // g x n
    if (b_rows.cwiseAbs().maxCoeff() >= kConversionFloor) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd_b(
          b_rows, Eigen::ComputeFullU | Eigen::ComputeThinV);
      e1.middleCols(lo, g) =
          (e1.middleCols(lo, g) * svd_b.matrixU()).eval();
      f1.middleCols(lo, g) =
          (f1.middleCols(lo, g) * svd_b.matrixU()).eval();
      for (Eigen::Index j = 0; j < g; ++j) {
        beta[lo + j] = svd_b.singularValues()[j];
        if (beta[lo + j] < kConversionFloor) {
          deferred.push_back(lo + j);
          continue;
        }
        f2.col(lo + j) = svd_b.matrixV().col(j);
        Eigen::VectorXcd e2j = -c_blk * f1.col(lo + j) / beta[lo + j];
        const double nrm = e2j.norm();
        if (nrm > 0.0) e2j /= nrm;
        e2.col(lo + j) = e2j;
      }
    } else {
      for (Eigen::Index j = lo; j < hi; ++j) {
        beta[j] = (b_blk.adjoint() * e1.col(j)).norm();
        deferred.push_back(j);
      }
    }
    lo = hi;
  }

  if (!deferred.empty()) {
    // D acts as an isometry between the still-unassigned blue input and
    // output subspaces; its residual after removing the assigned splitters
    // supplies consistently paired (E2, F2) columns.
    Eigen::MatrixXcd d_res = d_blk;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::find(deferred.begin(), deferred.end(), j) != deferred.end())
        continue;
      d_res -= alpha[j] * e2.col(j) * f2.col(j).adjoint();
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd_d(
        d_res, Eigen::ComputeFullU | Eigen::ComputeFullV);
    for (std::size_t m = 0; m < deferred.size(); ++m) {
      const auto src = static_cast<Eigen::Index>(m);
      e2.col(deferred[m]) = svd_d.matrixU().col(src);
      f2.col(deferred[m]) = svd_d.matrixV().col(src);
    }
  }

  // Each mode's four vectors carry one joint phase: rotating the whole
  // quadruple by e^{i phi} leaves every block term invariant. The phase is
  // pinned by making the largest-magnitude component of F1_j real positive.
  for (Eigen::Index j = 0; j < n; ++j) {
    Eigen::Index imax = 0;
    f1.col(j).cwiseAbs().maxCoeff(&imax);
    const Complex pivot = f1(imax, j);
    if (std::abs(pivot) == 0.0) continue;
    const Complex rot = std::conj(pivot) / std::abs(pivot);
    f1.col(j) *= rot;
    e1.col(j) *= rot;
    f2.col(j) *= rot;
    e2.col(j) *= rot;
  }

  BeamSplitterDecomposition d{std::move(alpha),
                              std::move(beta),
                              std::move(e1),
                              std::move(f1),
                              std::move(e2),
                              std::move(f2),
                              0.0,
                              kernel.basis().band1(),
                              kernel.basis().band2()};
  d.reconstruction_residual =
      (kernel.matrix() - d.reconstruct_kernel_matrix()).cwiseAbs().maxCoeff();
  if (d.reconstruction_residual > 1e-6)
    throw DegenerateSpectrum(
        "degenerate singular spectrum: reconstruction residual " +
        detail::num_str(d.reconstruction_residual) + " exceeds 1e-6");
  return d;
}

}  // namespace homsim

#endif  // HOMSIM_BEAM_SPLITTER_DECOMPOSITION_HPP_
