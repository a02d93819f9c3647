#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace berry {

using Complex = std::complex<double>;

inline constexpr double kIdentityTolerance = 1e-12;

/// A column of N complex amplitudes. The length is fixed at construction and
/// every stored amplitude is finite.
class StateVector {
 public:
  explicit StateVector(std::vector<Complex> amplitudes);
  StateVector(std::initializer_list<Complex> amplitudes);

  std::size_t size() const noexcept { return amplitudes_.size(); }
  const Complex& operator[](std::size_t k) const { return amplitudes_[k]; }
  std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }

  friend StateVector operator+(const StateVector& a, const StateVector& b);
  friend StateVector operator-(const StateVector& a, const StateVector& b);
  friend StateVector operator*(Complex c, const StateVector& a);
  friend StateVector operator*(const StateVector& a, Complex c) { return c * a; }

 private:
  std::vector<Complex> amplitudes_;
};

/// Hermitian inner product sum_k conj(a_k) b_k, conjugate-linear in `a`.
Complex inner_product(const StateVector& a, const StateVector& b);
double norm(const StateVector& a);
bool is_normalized(const StateVector& a, double tol = kIdentityTolerance);
StateVector normalized(const StateVector& a);

/// Dense N x N complex matrix, row-major.
class Operator {
 public:
  explicit Operator(std::size_t n);
  Operator(std::size_t n, std::vector<Complex> entries);

  static Operator identity(std::size_t n);
  static Operator outer(const StateVector& ket, const StateVector& bra);
  static Operator diagonal(std::span<const Complex> entries);

  std::size_t dimension() const noexcept { return n_; }
  Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * n_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * n_ + col];
  }

  StateVector apply(const StateVector& v) const;
  /// out = this * in; sizes must already match.
  void apply_into(std::span<const Complex> in, std::span<Complex> out) const;

  Complex trace() const;
  /// max |H - H^dagger| over entries.
  double hermiticity_defect() const;

  friend Operator operator*(Complex c, const Operator& a);

 private:
  std::size_t n_;
  std::vector<Complex> entries_;
};

}  // namespace berry
