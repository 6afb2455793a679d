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

#ifndef HOMSIM_FREQUENCY_GRID_HPP_
#define HOMSIM_FREQUENCY_GRID_HPP_

#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "homsim/errors.hpp"

namespace homsim {

/// Channel label for one band of the combined mode basis. Active devices
/// couple spectrally disjoint `red`/`blue` bands; a passive splitter couples
/// two ports that share one grid.
enum class Band { red, blue, port1, port2 };

inline std::string_view to_string(Band b) {
  switch (b) {
    case Band::red:
      return "red";
    case Band::blue:
      return "blue";
    case Band::port1:
      return "port1";
    case Band::port2:
      return "port2";
  }
  return "?";
}

inline Band band_from_string(std::string_view s) {
  if (s == "red") return Band::red;
  if (s == "blue") return Band::blue;
  if (s == "port1") return Band::port1;
  if (s == "port2") return Band::port2;
  throw InvalidArgument("unknown band label: " + std::string(s));
}

/// Uniform discretization of one spectral band. Points are angular
/// frequencies in rad/s, strictly increasing, all positive. `spacing` is the
/// grid measure d-omega; a single-point grid keeps the declared span as its
/// measure so that the discrete normalization stays well defined.
class FrequencyGrid {
 public:
  FrequencyGrid(std::vector<double> points, double spacing, Band band)
      : points_(std::move(points)), spacing_(spacing), band_(band) {
    if (points_.empty()) throw InvalidArgument("grid needs at least 1 point");
    if (spacing_ <= 0.0) throw InvalidArgument("grid spacing must be > 0");
    for (double w : points_) {
      if (w <= 0.0)
        throw NonPositiveFrequency("grid point " + std::to_string(w) +
                                   " rad/s is not positive");
    }
    for (std::size_t k = 0; k + 1 < points_.size(); ++k) {
      const double step = points_[k + 1] - points_[k];
      if (!(step > 0.0) || std::abs(step - spacing_) > 1e-12 * spacing_)
        throw InvalidArgument("grid points are not uniformly increasing");
    }
  }

  std::size_t size() const { return points_.size(); }
  const std::vector<double>& points() const { return points_; }
  double point(std::size_t k) const { return points_[k]; }
  double spacing() const { return spacing_; }
  Band band() const { return band_; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }
  double center() const { return 0.5 * (front() + back()); }

  /// Same points and spacing under a different channel label.
  FrequencyGrid relabeled(Band band) const {
    return FrequencyGrid(points_, spacing_, band);
  }

  /// Pointwise scaling w -> factor * w (spacing scales along).
  FrequencyGrid scaled(double factor, Band band) const {
    if (factor <= 0.0) throw InvalidArgument("scale factor must be > 0");
    std::vector<double> p(points_.size());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = points_[k] * factor;
    return FrequencyGrid(std::move(p), spacing_ * factor, band);
  }

  /// Pointwise shift w -> w + delta (spacing unchanged).
  FrequencyGrid shifted(double delta, Band band) const {
    std::vector<double> p(points_.size());
    for (std::size_t k = 0; k < p.size(); ++k) p[k] = points_[k] + delta;
    return FrequencyGrid(std::move(p), spacing_, band);
  }

  friend bool operator==(const FrequencyGrid& a, const FrequencyGrid& b) {
    return a.band_ == b.band_ && a.spacing_ == b.spacing_ &&
           a.points_ == b.points_;
  }
  friend bool operator!=(const FrequencyGrid& a, const FrequencyGrid& b) {
    return !(a == b);
  }

 private:
  std::vector<double> points_;
  double spacing_;
  Band band_;
};

/// Uniform grid of `n_points` covering [center - span/2, center + span/2].
/// A 1-point grid sits at `center` and keeps `span` as its measure.
inline FrequencyGrid make_uniform_grid(double center, double span,
                                       std::size_t n_points, Band band) {
  if (n_points == 0) throw InvalidArgument("n_points must be >= 1");
  if (span <= 0.0) throw InvalidArgument("span must be > 0");
  if (center - span / 2.0 <= 0.0)
    throw NonPositiveFrequency("band [center - span/2, center + span/2] "
                               "reaches non-positive frequencies");
  if (n_points == 1)
    return FrequencyGrid({center}, span, band);
  const double spacing = span / static_cast<double>(n_points - 1);
  const double lo = center - span / 2.0;
  std::vector<double> points(n_points);
  for (std::size_t k = 0; k < n_points; ++k)
    points[k] = lo + static_cast<double>(k) * spacing;
  return FrequencyGrid(std::move(points), spacing, band);
}

}  // namespace homsim

#endif  // HOMSIM_FREQUENCY_GRID_HPP_
