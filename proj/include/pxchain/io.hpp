#pragma once

#include <string>
#include <vector>

#include "pxchain/dynamics.hpp"
#include "pxchain/sparse.hpp"
#include "pxchain/types.hpp"

namespace pxchain {
namespace io {

/// Comment header prefixed to every text output. States the bit convention
/// once so files are self-describing.
std::string convention_header();

/// Write text atomically (temp file + rename).
void write_text_atomic(const std::string& path, const std::string& body);

/// Operator as coordinate-list text: "row col re im" per entry.
void export_operator_coo(const std::string& path, const SparseOperator& op);

/// State vector as "index re im" rows (nonzero entries only unless dense).
void export_state(const std::string& path, const StateVector& v, bool dense = false);

/// Ring coefficients as "r re im" rows.
void export_tb_coeffs(const std::string& path, const std::vector<cplx>& coeffs);

/// Trajectory CSV: t,F,p,S,P_1..P_L,xbar. Missing observables are written
/// as nan.
std::string trajectory_csv(const dyn::Trajectory& tr);

/// Simple CSV assembly: header + rows, 17 significant digits.
std::string csv_table(const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

std::string format_double(double v);

}  // namespace io
}  // namespace pxchain
