#include "srpt/serialization.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace srpt {

namespace {

using Index = Eigen::Index;
using nlohmann::json;

void write_complex(std::ostream& os, Complex z) {
  os << '[' << format_number(z.real()) << ',' << format_number(z.imag()) << ']';
}

void write_dims(std::ostream& os, const HilbertSpace& space) {
  os << "{\"dims\":[";
  for (std::size_t k = 0; k < space.subsystems(); ++k) os << (k ? "," : "") << space.dim(k);
  os << ']';
}

std::string matrix_json(const HilbertSpace& space, const Matrix& m) {
  std::ostringstream os;
  write_dims(os, space);
  os << ",\"matrix\":[";
  for (Index r = 0; r < m.rows(); ++r) {
    os << (r ? "," : "") << '[';
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) os << ',';
      write_complex(os, m(r, c));
    }
    os << ']';
  }
  os << "]}";
  return os.str();
}

HilbertSpace parse_dims(const json& j) {
  if (!j.is_object() || !j.contains("dims")) throw std::invalid_argument("json: missing \"dims\"");
  return HilbertSpace(j.at("dims").get<std::vector<std::size_t>>());
}

Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("json: expected [re,im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Matrix parse_matrix(const json& j, std::size_t dim) {
  const json& rows = j.at("matrix");
  if (!rows.is_array() || rows.size() != dim) {
    throw DimensionMismatch("json: matrix row count does not match dims");
  }
  Matrix m(static_cast<Index>(dim), static_cast<Index>(dim));
  for (std::size_t r = 0; r < dim; ++r) {
    if (!rows[r].is_array() || rows[r].size() != dim) {
      throw DimensionMismatch("json: matrix column count does not match dims");
    }
    for (std::size_t c = 0; c < dim; ++c) {
      m(static_cast<Index>(r), static_cast<Index>(c)) = parse_complex(rows[r][c]);
    }
  }
  return m;
}

}  // namespace

std::string format_number(double value) {
  if (!std::isfinite(value)) return "null";
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << value;
  return os.str();
}

std::string to_json(const StateVector& psi) {
  std::ostringstream os;
  write_dims(os, psi.space());
  os << ",\"amplitudes\":[";
  const Vector& v = psi.amplitudes();
  for (Index i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    write_complex(os, v(i));
  }
  os << "]}";
  return os.str();
}

std::string to_json(const DensityMatrix& rho) { return matrix_json(rho.space(), rho.matrix()); }
std::string to_json(const Observable& m) { return matrix_json(m.space(), m.matrix()); }

StateVector state_from_json(const json& j) {
  HilbertSpace space = parse_dims(j);
  const json& amps = j.at("amplitudes");
  if (!amps.is_array() || amps.size() != space.total_dim()) {
    throw DimensionMismatch("json: amplitude count does not match dims");
  }
  Vector v(static_cast<Index>(space.total_dim()));
  for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Index>(i)) = parse_complex(amps[i]);
  return StateVector(std::move(space), std::move(v));
}

DensityMatrix density_from_json(const json& j) {
  HilbertSpace space = parse_dims(j);
  Matrix m = parse_matrix(j, space.total_dim());
  return DensityMatrix(std::move(space), std::move(m));
}

Observable observable_from_json(const json& j) {
  HilbertSpace space = parse_dims(j);
  Matrix m = parse_matrix(j, space.total_dim());
  return Observable(std::move(space), std::move(m));
}

AnyState any_state_from_json(const json& j) {
  if (j.contains("amplitudes")) return state_from_json(j);
  if (j.contains("matrix")) return density_from_json(j);
  throw std::invalid_argument("json: state needs \"amplitudes\" or \"matrix\"");
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace srpt
