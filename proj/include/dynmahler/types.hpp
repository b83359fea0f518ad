#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace dynmahler {

using Real = double;
using Complex = std::complex<double>;
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

template <typename Scalar>
using CoeffVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using CoeffMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Malformed or out-of-contract input. The CLI maps this to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured size cap (degree, tree size, coefficient count) was hit.
class CapExceeded : public InputError {
 public:
  using InputError::InputError;
};

// Floating-point failure: non-convergence, overflow. Exit code 3.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal identity that must hold exactly did not.
class VerificationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

template <typename Scalar>
inline constexpr bool is_exact_v =
    std::is_same_v<Scalar, BigInt> || std::is_same_v<Scalar, Rational>;

template <typename Scalar>
inline bool is_zero(const Scalar& s) {
  return s == Scalar(0);
}

inline Complex to_complex(const Complex& c) { return c; }
inline Complex to_complex(const BigInt& c) {
  return Complex(c.convert_to<double>(), 0.0);
}
inline Complex to_complex(const Rational& c) {
  return Complex(c.convert_to<double>(), 0.0);
}

inline double magnitude(const Complex& c) { return std::abs(c); }
inline double magnitude(const BigInt& c) {
  return std::abs(c.convert_to<double>());
}
inline double magnitude(const Rational& c) {
  return std::abs(c.convert_to<double>());
}

}  // namespace dynmahler
