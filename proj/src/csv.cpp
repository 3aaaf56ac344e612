#include "besselmult/csv.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace besselmult {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

}  // namespace

std::string format_scalar(Complex z, Field field) {
  if (field == Field::real) return format_double(z.real());
  const double im = z.imag();
  return format_double(z.real()) + (im < 0.0 || std::signbit(im) ? "-" : "+") +
         format_double(std::abs(im)) + "i";
}

Complex parse_scalar(const std::string& token, const std::string& path, int line) {
  const std::string t = trim(token);
  if (t.empty()) throw ParseError(path, line, "empty field");
  if (t.back() != 'i' && t.back() != 'I') {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(t, &pos);
    } catch (const std::exception&) {
      throw ParseError(path, line, "cannot parse number '" + t + "'");
    }
    if (pos != t.size()) throw ParseError(path, line, "trailing characters in '" + t + "'");
    return Complex(v, 0.0);
  }
  // "a+bi" / "a-bi" / "bi": locate the sign that separates real and imaginary
  // parts (skipping any exponent sign).
  const std::string body = t.substr(0, t.size() - 1);
  std::size_t split = std::string::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    const char c = body[i];
    if ((c == '+' || c == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  try {
    if (split == std::string::npos) {
      if (body.empty() || body == "+") return Complex(0.0, 1.0);
      if (body == "-") return Complex(0.0, -1.0);
      std::size_t pos = 0;
      const double im = std::stod(body, &pos);
      if (pos != body.size()) throw std::invalid_argument(body);
      return Complex(0.0, im);
    }
    std::size_t pos = 0;
    const double re = std::stod(body.substr(0, split), &pos);
    if (pos != split) throw std::invalid_argument(body);
    const std::string im_str = body.substr(split);
    const double im = im_str == "+" ? 1.0 : im_str == "-" ? -1.0 : std::stod(im_str, &pos);
    return Complex(re, im);
  } catch (const std::exception&) {
    throw ParseError(path, line, "cannot parse complex number '" + t + "'");
  }
}

Field detect_field(const Mat& m) {
  return detail::is_effectively_real(m) ? Field::real : Field::complex_scalars;
}

Mat read_matrix_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  std::vector<std::vector<Complex>> rows;
  std::string line;
  int lineno = 0;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    std::vector<Complex> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_scalar(f, path, lineno));
    if (rows.empty()) {
      width = row.size();
    } else if (row.size() != width) {
      throw ParseError(path, lineno,
                       "expected " + std::to_string(width) + " columns, got " +
                           std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path, lineno, "file holds no data rows");
  Mat m(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
  return m;
}

void write_matrix_csv(const std::string& path, const Mat& m, Field field) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file " + path);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_scalar(m(i, j), field);
    }
    out << '\n';
  }
}

Vec read_column_csv(const std::string& path) {
  const Mat m = read_matrix_csv(path);
  if (m.cols() != 1)
    throw ParseError(path, 1, "expected a single column, got " + std::to_string(m.cols()));
  return m.col(0);
}

void write_column_csv(const std::string& path, const Vec& v, Field field) {
  write_matrix_csv(path, v, field);
}

}  // namespace besselmult
