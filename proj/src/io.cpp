#include "pxchain/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace pxchain {
namespace io {

std::string convention_header() {
  return "# basis convention: site 1 is the leftmost site and the most significant bit;\n"
         "# bit 0 = local |0>, bit 1 = local |1>; index = sum_i b_i 2^(L-i)\n";
}

void write_text_atomic(const std::string& path, const std::string& body) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_text_atomic: cannot open " + tmp.string());
    out << body;
    if (!out) throw std::runtime_error("write_text_atomic: write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string format_double(double v) {
  char buf[40];
  if (std::isnan(v)) return "nan";
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void export_operator_coo(const std::string& path, const SparseOperator& op) {
  std::ostringstream out;
  out << convention_header() << "# row col re im\n";
  for (std::size_t r = 0; r < op.dim(); ++r)
    for (std::uint64_t k = op.row_ptr()[r]; k < op.row_ptr()[r + 1]; ++k)
      out << r << ' ' << op.cols()[k] << ' ' << format_double(op.vals()[k].real()) << ' '
          << format_double(op.vals()[k].imag()) << '\n';
  write_text_atomic(path, out.str());
}

void export_state(const std::string& path, const StateVector& v, bool dense) {
  std::ostringstream out;
  out << convention_header() << "# index re im\n";
  for (std::size_t z = 0; z < v.dim(); ++z) {
    if (!dense && v.amp[z] == cplx{0.0, 0.0}) continue;
    out << z << ' ' << format_double(v.amp[z].real()) << ' ' << format_double(v.amp[z].imag()) << '\n';
  }
  write_text_atomic(path, out.str());
}

void export_tb_coeffs(const std::string& path, const std::vector<cplx>& coeffs) {
  std::ostringstream out;
  out << convention_header() << "# r re im\n";
  for (std::size_t r = 0; r < coeffs.size(); ++r)
    out << (r + 1) << ' ' << format_double(coeffs[r].real()) << ' ' << format_double(coeffs[r].imag())
        << '\n';
  write_text_atomic(path, out.str());
}

std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (std::size_t c = 0; c < columns.size(); ++c) out << columns[c] << (c + 1 < columns.size() ? "," : "");
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != columns.size()) throw std::invalid_argument("csv_table: ragged row");
    for (std::size_t c = 0; c < row.size(); ++c)
      out << format_double(row[c]) << (c + 1 < row.size() ? "," : "");
    out << '\n';
  }
  return out.str();
}

std::string trajectory_csv(const dyn::Trajectory& tr) {
  std::ostringstream out;
  out << "t,F,p,S";
  for (int i = 1; i <= tr.L; ++i) out << ",P_" << i;
  out << ",xbar\n";
  const double nan = std::nan("");
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    out << format_double(tr.t[i]);
    out << ',' << format_double(i < tr.fidelity.size() ? tr.fidelity[i] : nan);
    out << ',' << format_double(i < tr.leakage.size() ? tr.leakage[i] : nan);
    out << ',' << format_double(i < tr.entropy.size() ? tr.entropy[i] : nan);
    for (int s = 0; s < tr.L; ++s)
      out << ','
          << format_double(i < tr.zero_density.size() ? tr.zero_density[i][static_cast<std::size_t>(s)]
                                                      : nan);
    out << ',' << format_double(i < tr.com.size() ? tr.com[i] : nan);
    out << '\n';
  }
  return out.str();
}

}  // namespace io
}  // namespace pxchain
