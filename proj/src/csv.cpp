// SPDX-License-Identifier: Apache-2.0
#include "hopfcert/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "hopfcert/errors.hpp"

namespace hopfcert::csv {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write(const std::filesystem::path& path, const std::vector<std::string>& header,
           const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path.string() + "' for writing");
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
  if (!out) throw ConfigError("write to '" + path.string() + "' failed");
}

void write_m_grid(const std::filesystem::path& path, const estimator::MGrid& grid) {
  std::vector<std::vector<double>> rows;
  rows.reserve(grid.alphas.size() * grid.betas.size());
  for (std::size_t i = 0; i < grid.alphas.size(); ++i)
    for (std::size_t j = 0; j < grid.betas.size(); ++j) {
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      rows.push_back({grid.alphas[i], grid.betas[j], grid.lower(ii, jj), grid.upper(ii, jj)});
    }
  write(path, {"alpha", "beta", "m_lower", "m_upper"}, rows);
}

void write_polygon(const std::filesystem::path& path, const contour::ClosedPath& poly) {
  std::vector<std::vector<double>> rows;
  const auto& v = poly.vertices();
  for (std::size_t i = 0; i <= v.size(); ++i) {
    const auto& p = v[i % v.size()];
    rows.push_back({poly.vertex_parameter(i), p.x(), p.y()});
  }
  write(path, {"s", "alpha", "beta"}, rows);
}

void write_contour_trace(const std::filesystem::path& path,
                         const std::vector<contour::WindingSample>& trace) {
  std::vector<std::vector<double>> rows;
  for (const auto& w : trace)
    rows.push_back({w.s, w.p.x(), w.p.y(), w.value.real(), w.value.imag(), w.cum_arg});
  write(path, {"s", "alpha", "beta", "re_det", "im_det", "cum_arg"}, rows);
}

void write_branch(const std::filesystem::path& path, const std::vector<oracle::OrbitSample>& samples) {
  std::vector<std::vector<double>> rows;
  for (const auto& o : samples) rows.push_back({o.alpha, o.period, o.amplitude, o.residual});
  write(path, {"alpha", "period", "amplitude", "residual"}, rows);
}

}  // namespace hopfcert::csv
