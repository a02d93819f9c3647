#include "berry/state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "berry/errors.hpp"

namespace berry {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::dimension: return "dimension error";
    case Errc::evaluation: return "evaluation error";
    case Errc::unsupported_family: return "unsupported family";
    case Errc::closure: return "closure error";
    case Errc::path_too_coarse: return "path too coarse";
    case Errc::step_size: return "step size error";
    case Errc::adiabaticity_lost: return "adiabaticity lost";
    case Errc::config: return "config error";
  }
  return "error";
}

int exit_code(Errc code) noexcept {
  switch (code) {
    case Errc::config: return 2;
    case Errc::adiabaticity_lost: return 4;
    default: return 3;
  }
}

namespace {

void require_finite(std::span<const Complex> amplitudes) {
  for (std::size_t k = 0; k < amplitudes.size(); ++k) {
    if (!std::isfinite(amplitudes[k].real()) || !std::isfinite(amplitudes[k].imag())) {
      throw Error(Errc::evaluation, "non-finite amplitude at index " + std::to_string(k));
    }
  }
}

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) {
    throw Error(Errc::dimension,
                "length mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw Error(Errc::dimension, "state vector must have length >= 1");
  require_finite(amplitudes_);
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector(std::vector<Complex>(amplitudes)) {}

StateVector operator+(const StateVector& a, const StateVector& b) {
  require_same_size(a.size(), b.size());
  std::vector<Complex> out(a.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] + b[k];
  return StateVector(std::move(out));
}

StateVector operator-(const StateVector& a, const StateVector& b) {
  require_same_size(a.size(), b.size());
  std::vector<Complex> out(a.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] - b[k];
  return StateVector(std::move(out));
}

StateVector operator*(Complex c, const StateVector& a) {
  std::vector<Complex> out(a.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = c * a[k];
  return StateVector(std::move(out));
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  require_same_size(a.size(), b.size());
  Complex sum{0.0, 0.0};
  for (std::size_t k = 0; k < a.size(); ++k) sum += std::conj(a[k]) * b[k];
  return sum;
}

double norm(const StateVector& a) {
  double sum = 0.0;
  for (const auto& z : a.amplitudes()) sum += std::norm(z);
  return std::sqrt(sum);
}

bool is_normalized(const StateVector& a, double tol) { return std::abs(norm(a) - 1.0) <= tol; }

StateVector normalized(const StateVector& a) {
  const double n = norm(a);
  if (n == 0.0) throw Error(Errc::evaluation, "cannot normalize the zero vector");
  return Complex{1.0 / n, 0.0} * a;
}

Operator::Operator(std::size_t n) : n_(n), entries_(n * n) {
  if (n == 0) throw Error(Errc::dimension, "operator dimension must be >= 1");
}

Operator::Operator(std::size_t n, std::vector<Complex> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n == 0 || entries_.size() != n * n) {
    throw Error(Errc::dimension, "operator needs n*n entries");
  }
  require_finite(entries_);
}

Operator Operator::identity(std::size_t n) {
  Operator id(n);
  for (std::size_t k = 0; k < n; ++k) id(k, k) = 1.0;
  return id;
}

Operator Operator::outer(const StateVector& ket, const StateVector& bra) {
  require_same_size(ket.size(), bra.size());
  Operator out(ket.size());
  for (std::size_t r = 0; r < out.n_; ++r) {
    for (std::size_t c = 0; c < out.n_; ++c) out(r, c) = ket[r] * std::conj(bra[c]);
  }
  return out;
}

Operator Operator::diagonal(std::span<const Complex> entries) {
  Operator out(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) out(k, k) = entries[k];
  return out;
}

StateVector Operator::apply(const StateVector& v) const {
  require_same_size(n_, v.size());
  std::vector<Complex> out(n_);
  apply_into(v.amplitudes(), out);
  return StateVector(std::move(out));
}

void Operator::apply_into(std::span<const Complex> in, std::span<Complex> out) const {
  for (std::size_t r = 0; r < n_; ++r) {
    Complex sum{0.0, 0.0};
    const Complex* row = entries_.data() + r * n_;
    for (std::size_t c = 0; c < n_; ++c) sum += row[c] * in[c];
    out[r] = sum;
  }
}

Complex Operator::trace() const {
  Complex sum{0.0, 0.0};
  for (std::size_t k = 0; k < n_; ++k) sum += (*this)(k, k);
  return sum;
}

double Operator::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t r = 0; r < n_; ++r) {
    for (std::size_t c = r; c < n_; ++c) {
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    }
  }
  return worst;
}

Operator operator*(Complex c, const Operator& a) {
  Operator out = a;
  for (auto& z : out.entries_) z *= c;
  return out;
}

}  // namespace berry
