// SPDX-License-Identifier: Apache-2.0
//
// Comma-separated exports: header row, LF line endings, 17 significant
// digits, "inf"/"-inf"/"nan" for non-finite values.
#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hopfcert/contour.hpp"
#include "hopfcert/estimator.hpp"
#include "hopfcert/oracle.hpp"

namespace hopfcert::csv {

std::string format_number(double x);

// Writes header and rows; throws ConfigError when the file cannot be opened.
void write(const std::filesystem::path& path, const std::vector<std::string>& header,
           const std::vector<std::vector<double>>& rows);

// alpha, beta, m_lower, m_upper (alpha-major).
void write_m_grid(const std::filesystem::path& path, const estimator::MGrid& grid);
// s, alpha, beta for every vertex of the closed path, first vertex repeated.
void write_polygon(const std::filesystem::path& path, const contour::ClosedPath& path_);
// s, alpha, beta, re_det, im_det, cum_arg.
void write_contour_trace(const std::filesystem::path& path,
                         const std::vector<contour::WindingSample>& trace);
// alpha, period, amplitude, residual.
void write_branch(const std::filesystem::path& path, const std::vector<oracle::OrbitSample>& samples);

}  // namespace hopfcert::csv
