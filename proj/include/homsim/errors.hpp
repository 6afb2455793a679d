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

#ifndef HOMSIM_ERRORS_HPP_
#define HOMSIM_ERRORS_HPP_

#include <cstdio>
#include <stdexcept>
#include <string>

namespace homsim {

namespace detail {

/// std::to_string flattens small doubles to 0.000000; diagnostics use this.
inline std::string num_str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return std::string(buf);
}

}  // namespace detail

/// Base class of all homsim exceptions.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter fails a basic precondition (count, range, sign).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A frequency grid would contain a point at or below zero.
class NonPositiveFrequency : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A packet's spectral mass outside the grid exceeds the resolution budget.
class PoorlyResolved : public Error {
 public:
  using Error::Error;
};

/// Two packets (or a packet and a kernel band) live on different grids.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// A state's combined mode basis differs from a kernel's.
class BasisMismatch : public Error {
 public:
  using Error::Error;
};

/// Splitter coefficients violate tau^2 + rho^2 = 1 or non-negativity.
class InvalidCoefficients : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A frequency shift would make the red and blue bands intersect.
class BandOverlap : public Error {
 public:
  using Error::Error;
};

/// A supplied mode family is not orthonormal at the required tolerance.
class NonOrthonormalModes : public Error {
 public:
  using Error::Error;
};

/// More synthesis entries than band modes.
class TooManyModes : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// An operation that requires a unitary kernel received a non-unitary one.
class NotUnitary : public Error {
 public:
  using Error::Error;
};

/// Degenerate singular spectrum that the subspace-resolution pass could not
/// disentangle to the required reconstruction accuracy.
class DegenerateSpectrum : public Error {
 public:
  using Error::Error;
};

/// A Schmidt-mode index beyond the numerical rank of the HOM kernel.
class RankExceeded : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Problem size beyond the brute-force oracle's Fock-basis budget.
class TooLarge : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A configuration file is not syntactically valid.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A configuration file is well-formed but violates a precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Filesystem failure while reading or writing artifacts.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace homsim

#endif  // HOMSIM_ERRORS_HPP_
