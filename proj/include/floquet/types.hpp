#ifndef FLOQUET_TYPES_HPP
#define FLOQUET_TYPES_HPP

#include <complex>
#include <cstdio>
#include <string>
#include <Eigen/Dense>

// Conventions used throughout: angular frequencies in rad/s, times in seconds.
// Config files speak MHz; the CLI layer multiplies by 2*pi*1e6 exactly once at parse.

namespace floq {

using Cx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double two_pi = 2.0 * pi;

// MHz (ordinary frequency) -> rad/s
inline constexpr double mhz = two_pi * 1e6;

inline Matrix pauli_x() { return (Matrix(2, 2) << 0, 1, 1, 0).finished(); }
inline Matrix pauli_y() { return (Matrix(2, 2) << 0, Cx(0, -1), Cx(0, 1), 0).finished(); }
inline Matrix pauli_z() { return (Matrix(2, 2) << 1, 0, 0, -1).finished(); }

inline bool is_hermitian(const Matrix& m, double tol = 1e-12) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

// Largest absolute entry; the norm used for symmetry residuals and Hermiticity checks.
inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

// Fixed 9-significant-digit rendering; every CSV/NDJSON value flows through it
// so outputs are byte-identical across runs and thread counts.
inline std::string format_g9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out.push_back('\\');
    out.push_back(ch);
  }
  return out;
}

}  // namespace floq

#endif
