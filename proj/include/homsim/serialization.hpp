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

#ifndef HOMSIM_SERIALIZATION_HPP_
#define HOMSIM_SERIALIZATION_HPP_

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "homsim/beam_splitter_decomposition.hpp"
#include "homsim/block_kernel.hpp"
#include "homsim/errors.hpp"
#include "homsim/hom_analysis.hpp"

namespace homsim {

inline constexpr int kKernelSchemaVersion = 1;

namespace detail {

// Complex values travel as [re, im] pairs. nlohmann emits doubles with the
// shortest representation that parses back to the same bits, which is what
// makes the round trip exact.

inline nlohmann::json complex_to_json(const Complex& z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

inline Complex complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2)
    throw ParseError("complex value must be a [re, im] pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

inline nlohmann::json matrix_to_json(const Eigen::MatrixXcd& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Eigen::MatrixXcd matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw ParseError("matrix must be a non-empty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXcd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[static_cast<std::size_t>(r)];
    if (static_cast<Eigen::Index>(row.size()) != cols)
      throw ParseError("matrix rows have inconsistent lengths");
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

inline nlohmann::json vector_list_to_json(const Eigen::MatrixXcd& columns) {
  nlohmann::json list = nlohmann::json::array();
  for (Eigen::Index c = 0; c < columns.cols(); ++c) {
    nlohmann::json v = nlohmann::json::array();
    for (Eigen::Index r = 0; r < columns.rows(); ++r)
      v.push_back(complex_to_json(columns(r, c)));
    list.push_back(std::move(v));
  }
  return list;
}

inline nlohmann::json grid_to_json(const FrequencyGrid& g) {
  return nlohmann::json{{"band", std::string(to_string(g.band()))},
                        {"points", g.points()},
                        {"spacing", g.spacing()}};
}

inline FrequencyGrid grid_from_json(const nlohmann::json& j) {
  if (!j.contains("band") || !j.contains("points") || !j.contains("spacing"))
    throw ParseError("grid needs band, points and spacing fields");
  return FrequencyGrid(j["points"].get<std::vector<double>>(),
                       j["spacing"].get<double>(),
                       band_from_string(j["band"].get<std::string>()));
}

}  // namespace detail

inline nlohmann::json kernel_to_json(const BlockKernel& k) {
  return nlohmann::json{
      {"schema_version", kKernelSchemaVersion},
      {"basis",
       {{"band1", detail::grid_to_json(k.basis().band1())},
        {"band2", detail::grid_to_json(k.basis().band2())}}},
      {"matrix", detail::matrix_to_json(k.matrix())}};
}

inline BlockKernel kernel_from_json(const nlohmann::json& j) {
  if (!j.contains("basis") || !j.contains("matrix"))
    throw ParseError("kernel document needs basis and matrix fields");
  ModeBasis basis(detail::grid_from_json(j["basis"]["band1"]),
                  detail::grid_from_json(j["basis"]["band2"]));
  return BlockKernel(std::move(basis), detail::matrix_from_json(j["matrix"]));
}

inline void save_kernel(const BlockKernel& k,
                        const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << kernel_to_json(k).dump(2) << '\n';
  if (!out) throw IoError("failed while writing " + path.string());
}

inline BlockKernel load_kernel(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return kernel_from_json(j);
}

/// Report combining both decomposition routes: the splitter coefficients of
/// the kernel, the singular values of its HOM kernel, the factorization
/// defect, and the four mode families as [re, im] vectors.
inline nlohmann::json decomposition_report(
    const BeamSplitterDecomposition& d, const SchmidtDecomposition& schmidt) {
  std::vector<double> sigma(schmidt.sigma.data(),
                            schmidt.sigma.data() + schmidt.sigma.size());
  std::vector<double> tau(d.alpha.data(), d.alpha.data() + d.alpha.size());
  std::vector<double> rho(d.beta.data(), d.beta.data() + d.beta.size());
  return nlohmann::json{
      {"schema_version", kKernelSchemaVersion},
      {"sigma", sigma},
      {"tau", tau},
      {"rho", rho},
      {"reconstruction_residual", d.reconstruction_residual},
      {"modes",
       {{"output_red", detail::vector_list_to_json(d.e1)},
        {"input_red", detail::vector_list_to_json(d.f1)},
        {"output_blue", detail::vector_list_to_json(d.e2)},
        {"input_blue", detail::vector_list_to_json(d.f2)},
        {"schmidt_red", detail::vector_list_to_json(schmidt.red_modes)},
        {"schmidt_blue", detail::vector_list_to_json(schmidt.blue_modes)}}}};
}

}  // namespace homsim

#endif  // HOMSIM_SERIALIZATION_HPP_
