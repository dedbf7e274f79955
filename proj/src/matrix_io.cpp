#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "vbe/targets.hpp"

namespace vbe {

namespace {

static_assert(std::endian::native == std::endian::little, "binary matrix I/O assumes a little-endian host");

double parse_double(const std::string& s, int line) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("matrix CSV line " + std::to_string(line) + ": bad number '" + s + "'");
  }
  while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\r')) ++pos;
  if (pos != s.size()) throw std::invalid_argument("matrix CSV line " + std::to_string(line) + ": bad number '" + s + "'");
  return v;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace

ComplexMatrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<Complex>> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.empty() || fields.size() % 2 != 0) {
      throw std::invalid_argument("matrix CSV line " + std::to_string(lineno) + ": expected re,im pairs");
    }
    std::vector<Complex> row;
    for (std::size_t k = 0; k < fields.size(); k += 2) {
      row.emplace_back(parse_double(fields[k], lineno), parse_double(fields[k + 1], lineno));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::invalid_argument("matrix CSV line " + std::to_string(lineno) + ": ragged row");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("matrix CSV: no data");
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  if (!m.allFinite()) throw std::invalid_argument("matrix CSV: non-finite entry");
  return m;
}

void write_matrix_csv(std::ostream& out, const ComplexMatrix& m) {
  out << std::setprecision(17);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << m(r, c).real() << ',' << m(r, c).imag();
    }
    out << '\n';
  }
}

ComplexMatrix read_matrix_binary(std::istream& in) {
  std::uint32_t dims[2];
  if (!in.read(reinterpret_cast<char*>(dims), sizeof dims)) throw std::invalid_argument("matrix binary: truncated header");
  if (dims[0] == 0 || dims[1] == 0 || dims[0] > 4096 || dims[1] > 4096) {
    throw std::invalid_argument("matrix binary: implausible dimensions");
  }
  ComplexMatrix m(dims[0], dims[1]);
  std::vector<double> buf(2 * static_cast<std::size_t>(dims[0]) * dims[1]);
  if (!in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(double)))) {
    throw std::invalid_argument("matrix binary: truncated data");
  }
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c, k += 2) m(r, c) = Complex(buf[k], buf[k + 1]);
  }
  if (!m.allFinite()) throw std::invalid_argument("matrix binary: non-finite entry");
  return m;
}

void write_matrix_binary(std::ostream& out, const ComplexMatrix& m) {
  const std::uint32_t dims[2] = {static_cast<std::uint32_t>(m.rows()), static_cast<std::uint32_t>(m.cols())};
  out.write(reinterpret_cast<const char*>(dims), sizeof dims);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      const double v[2] = {m(r, c).real(), m(r, c).imag()};
      out.write(reinterpret_cast<const char*>(v), sizeof v);
    }
  }
}

ComplexMatrix load_matrix(const std::string& path) {
  const bool binary = ends_with(path, ".bin");
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in) throw std::invalid_argument("cannot open matrix file '" + path + "'");
  return binary ? read_matrix_binary(in) : read_matrix_csv(in);
}

void save_matrix(const std::string& path, const ComplexMatrix& m) {
  const bool binary = ends_with(path, ".bin");
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw std::runtime_error("cannot write matrix file '" + path + "'");
  if (binary) {
    write_matrix_binary(out, m);
  } else {
    write_matrix_csv(out, m);
  }
}

}  // namespace vbe
