#pragma once

#include <iosfwd>
#include <string>

#include "besselmult/core.hpp"

namespace besselmult {

/// Matrix CSV: one row per sequence element, comma separated. Complex entries
/// are written "a+bi" / "a-bi"; real entries as plain numbers. Readers reject
/// ragged rows with a line-numbered ParseError.
Mat read_matrix_csv(const std::string& path);
void write_matrix_csv(const std::string& path, const Mat& m, Field field);

/// Single-column CSV for symbols, masks, and signals.
Vec read_column_csv(const std::string& path);
void write_column_csv(const std::string& path, const Vec& v, Field field);

/// Scalar formatting and parsing used by every CSV surface; round-trips at
/// full double precision.
std::string format_scalar(Complex z, Field field);
Complex parse_scalar(const std::string& token, const std::string& path, int line);

/// True when no entry has an imaginary part (chooses the output format).
Field detect_field(const Mat& m);

}  // namespace besselmult
