#pragma once

// Dense complex linear algebra for small registers: pure and mixed states,
// square operators, Kronecker products, partial traces.
//
// Composite indices follow the Kronecker convention: the left factor is the
// most significant digit.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qsync {

using Complex = std::complex<double>;

inline constexpr double kAlgebraTol = 1e-10;
inline constexpr double kSpectralTol = 1e-8;

/// Square row-major complex matrix.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

  static Matrix identity(std::size_t dim) {
    Matrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  std::span<const Complex> data() const { return data_; }

  Matrix adjoint() const {
    Matrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  friend Matrix operator*(const Matrix& x, const Matrix& y) {
    check_same(x, y);
    const std::size_t d = x.dim_;
    Matrix out(d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t k = 0; k < d; ++k) {
        const Complex xv = x(r, k);
        if (xv == Complex{}) continue;
        for (std::size_t c = 0; c < d; ++c) out(r, c) += xv * y(k, c);
      }
    return out;
  }

  friend Matrix operator+(Matrix x, const Matrix& y) {
    check_same(x, y);
    for (std::size_t i = 0; i < x.data_.size(); ++i) x.data_[i] += y.data_[i];
    return x;
  }

  friend Matrix operator-(Matrix x, const Matrix& y) {
    check_same(x, y);
    for (std::size_t i = 0; i < x.data_.size(); ++i) x.data_[i] -= y.data_[i];
    return x;
  }

  friend Matrix operator*(Complex s, Matrix x) {
    for (auto& v : x.data_) v *= s;
    return x;
  }

 private:
  static void check_same(const Matrix& x, const Matrix& y) {
    if (x.dim_ != y.dim_)
      throw std::invalid_argument("matrix dimension mismatch: " + std::to_string(x.dim_) + " vs " +
                                  std::to_string(y.dim_));
  }

  std::size_t dim_ = 0;
  std::vector<Complex> data_;
};

/// Largest entrywise modulus of x - y.
inline double max_abs_diff(const Matrix& x, const Matrix& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("matrix dimension mismatch");
  double m = 0.0;
  for (std::size_t i = 0; i < x.data().size(); ++i) m = std::max(m, std::abs(x.data()[i] - y.data()[i]));
  return m;
}

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::vector<Complex> amps) : amps_(std::move(amps)) {}

  static StateVector basis(std::size_t dim, std::size_t k) {
    if (k >= dim) throw std::out_of_range("basis index out of range");
    std::vector<Complex> a(dim);
    a[k] = 1.0;
    return StateVector(std::move(a));
  }

  /// Equal-weight superposition of all basis states.
  static StateVector uniform(std::size_t dim) {
    return StateVector(std::vector<Complex>(dim, Complex(1.0 / std::sqrt(static_cast<double>(dim)))));
  }

  std::size_t dim() const { return amps_.size(); }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  Complex& operator[](std::size_t i) { return amps_[i]; }
  std::span<const Complex> amps() const { return amps_; }

  double norm_squared() const {
    return std::accumulate(amps_.begin(), amps_.end(), 0.0, [](double s, Complex a) { return s + std::norm(a); });
  }

  StateVector& normalize() {
    const double nrm = std::sqrt(norm_squared());
    if (nrm == 0.0) throw std::invalid_argument("cannot normalize the zero vector");
    for (auto& a : amps_) a /= nrm;
    return *this;
  }

 private:
  std::vector<Complex> amps_;
};

class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}

  static DensityMatrix pure(const StateVector& psi) {
    Matrix m(psi.dim());
    for (std::size_t r = 0; r < psi.dim(); ++r)
      for (std::size_t c = 0; c < psi.dim(); ++c) m(r, c) = psi[r] * std::conj(psi[c]);
    return DensityMatrix(std::move(m));
  }

  static DensityMatrix maximally_mixed(std::size_t dim) {
    return DensityMatrix(Complex(1.0 / static_cast<double>(dim)) * Matrix::identity(dim));
  }

  std::size_t dim() const { return m_.dim(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  std::vector<double> diagonal() const {
    std::vector<double> d(dim());
    for (std::size_t i = 0; i < dim(); ++i) d[i] = m_(i, i).real();
    return d;
  }

  /// Hermitian, unit trace (both within tol).
  bool is_valid(double tol = kAlgebraTol) const {
    if (std::abs(m_.trace() - 1.0) > tol) return false;
    return max_abs_diff(m_, m_.adjoint()) <= tol;
  }

 private:
  Matrix m_;
};

/// Permutation-with-phase form: column j has the single entry phase[j] in row target[j].
struct PermutationForm {
  std::vector<std::size_t> target;
  std::vector<Complex> phase;

  Matrix expand() const {
    Matrix m(target.size());
    for (std::size_t j = 0; j < target.size(); ++j) m(target[j], j) = phase[j];
    return m;
  }
};

/// Square operator. The dense matrix is authoritative; the permutation form,
/// when present, is a fast path and expands to the same matrix.
class Operator {
 public:
  Operator() = default;
  explicit Operator(Matrix m) : m_(std::move(m)) {}
  explicit Operator(PermutationForm p) : m_(p.expand()), perm_(std::move(p)) {}

  static Operator identity(std::size_t dim) { return Operator(Matrix::identity(dim)); }

  /// Permutation operator sending |j> to |target[j]>.
  static Operator permutation(std::vector<std::size_t> target) {
    std::vector<bool> seen(target.size(), false);
    for (std::size_t t : target) {
      if (t >= target.size() || seen[t]) throw std::invalid_argument("not a permutation");
      seen[t] = true;
    }
    std::vector<Complex> phase(target.size(), Complex(1.0));
    return Operator(PermutationForm{std::move(target), std::move(phase)});
  }

  std::size_t dim() const { return m_.dim(); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(std::size_t r, std::size_t c) const { return m_(r, c); }
  const std::optional<PermutationForm>& permutation_form() const { return perm_; }

  Operator adjoint() const { return Operator(m_.adjoint()); }

  friend Operator operator*(const Operator& x, const Operator& y) {
    if (x.perm_ && y.perm_) {
      if (x.dim() != y.dim()) throw std::invalid_argument("operator dimension mismatch");
      PermutationForm p;
      p.target.resize(y.dim());
      p.phase.resize(y.dim());
      for (std::size_t j = 0; j < y.dim(); ++j) {
        const std::size_t mid = y.perm_->target[j];
        p.target[j] = x.perm_->target[mid];
        p.phase[j] = x.perm_->phase[mid] * y.perm_->phase[j];
      }
      return Operator(std::move(p));
    }
    return Operator(x.m_ * y.m_);
  }

 private:
  Matrix m_;
  std::optional<PermutationForm> perm_;
};

// --- Kronecker products -----------------------------------------------------

inline StateVector tensor(const StateVector& x, const StateVector& y) {
  std::vector<Complex> out(x.dim() * y.dim());
  for (std::size_t i = 0; i < x.dim(); ++i)
    for (std::size_t j = 0; j < y.dim(); ++j) out[i * y.dim() + j] = x[i] * y[j];
  return StateVector(std::move(out));
}

inline Matrix tensor(const Matrix& x, const Matrix& y) {
  const std::size_t dy = y.dim();
  Matrix out(x.dim() * dy);
  for (std::size_t r1 = 0; r1 < x.dim(); ++r1)
    for (std::size_t c1 = 0; c1 < x.dim(); ++c1) {
      const Complex xv = x(r1, c1);
      if (xv == Complex{}) continue;
      for (std::size_t r2 = 0; r2 < dy; ++r2)
        for (std::size_t c2 = 0; c2 < dy; ++c2) out(r1 * dy + r2, c1 * dy + c2) = xv * y(r2, c2);
    }
  return out;
}

inline Operator tensor(const Operator& x, const Operator& y) {
  if (x.permutation_form() && y.permutation_form()) {
    const auto& px = *x.permutation_form();
    const auto& py = *y.permutation_form();
    const std::size_t dy = y.dim();
    PermutationForm p;
    p.target.resize(x.dim() * dy);
    p.phase.resize(x.dim() * dy);
    for (std::size_t i = 0; i < x.dim(); ++i)
      for (std::size_t j = 0; j < dy; ++j) {
        p.target[i * dy + j] = px.target[i] * dy + py.target[j];
        p.phase[i * dy + j] = px.phase[i] * py.phase[j];
      }
    return Operator(std::move(p));
  }
  return Operator(tensor(x.matrix(), y.matrix()));
}

inline DensityMatrix tensor(const DensityMatrix& x, const DensityMatrix& y) {
  return DensityMatrix(tensor(x.matrix(), y.matrix()));
}

// --- Actions ----------------------------------------------------------------

inline StateVector apply(const Operator& op, const StateVector& s) {
  if (op.dim() != s.dim())
    throw std::invalid_argument("operator of dim " + std::to_string(op.dim()) + " applied to state of dim " +
                                std::to_string(s.dim()));
  std::vector<Complex> out(s.dim());
  if (const auto& p = op.permutation_form()) {
    for (std::size_t j = 0; j < s.dim(); ++j) out[p->target[j]] += p->phase[j] * s[j];
  } else {
    const Matrix& m = op.matrix();
    for (std::size_t r = 0; r < s.dim(); ++r) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < s.dim(); ++c) acc += m(r, c) * s[c];
      out[r] = acc;
    }
  }
  return StateVector(std::move(out));
}

/// op * rho * op^dagger.
inline Matrix conjugate(const Operator& op, const Matrix& rho) {
  if (op.dim() != rho.dim()) throw std::invalid_argument("operator/density dimension mismatch");
  if (const auto& p = op.permutation_form()) {
    Matrix out(rho.dim());
    for (std::size_t r = 0; r < rho.dim(); ++r)
      for (std::size_t c = 0; c < rho.dim(); ++c)
        out(p->target[r], p->target[c]) = p->phase[r] * rho(r, c) * std::conj(p->phase[c]);
    return out;
  }
  return op.matrix() * rho * op.matrix().adjoint();
}

inline DensityMatrix apply(const Operator& op, const DensityMatrix& rho) {
  return DensityMatrix(conjugate(op, rho.matrix()));
}

/// Traces out every factor not listed in `keep`. `dims` lists factor
/// dimensions, most significant first; `keep` holds factor positions.
inline DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep,
                                   std::span<const std::size_t> dims) {
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (dims.empty() || total != rho.dim())
    throw std::invalid_argument("factor dimensions do not multiply to " + std::to_string(rho.dim()));
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size() || kept[k]) throw std::invalid_argument("invalid subsystem in keep list");
    kept[k] = true;
  }

  // Strides of each factor in the full and reduced index spaces.
  const std::size_t f = dims.size();
  std::vector<std::size_t> stride(f), kstride(f, 0);
  std::size_t s = 1, ks = 1;
  for (std::size_t i = f; i-- > 0;) {
    stride[i] = s;
    s *= dims[i];
    if (kept[i]) {
      kstride[i] = ks;
      ks *= dims[i];
    }
  }
  const std::size_t kdim = ks;

  // Split each full index into (kept part, traced part).
  std::vector<std::size_t> kept_idx(total), traced_idx(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t kp = 0, tp = 0, tstride = 1;
    for (std::size_t i = f; i-- > 0;) {
      const std::size_t digit = (idx / stride[i]) % dims[i];
      if (kept[i]) {
        kp += digit * kstride[i];
      } else {
        tp += digit * tstride;
        tstride *= dims[i];
      }
    }
    kept_idx[idx] = kp;
    traced_idx[idx] = tp;
  }

  Matrix out(kdim);
  for (std::size_t r = 0; r < total; ++r)
    for (std::size_t c = 0; c < total; ++c)
      if (traced_idx[r] == traced_idx[c]) out(kept_idx[r], kept_idx[c]) += rho(r, c);
  return DensityMatrix(std::move(out));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho, std::initializer_list<std::size_t> keep,
                                   std::initializer_list<std::size_t> dims) {
  return partial_trace(rho, std::span<const std::size_t>(keep.begin(), keep.size()),
                       std::span<const std::size_t>(dims.begin(), dims.size()));
}

/// Reduced state of the rightmost factor of a bipartite pure state |psi> in
/// C^left (x) C^right, without forming the full density matrix.
inline DensityMatrix reduce_to_right(const StateVector& psi, std::size_t right_dim) {
  if (right_dim == 0 || psi.dim() % right_dim != 0) throw std::invalid_argument("inconsistent factorization");
  const std::size_t left = psi.dim() / right_dim;
  Matrix out(right_dim);
  for (std::size_t l = 0; l < left; ++l) {
    const Complex* row = &psi.amps()[l * right_dim];
    for (std::size_t r = 0; r < right_dim; ++r) {
      if (row[r] == Complex{}) continue;
      for (std::size_t c = 0; c < right_dim; ++c) out(r, c) += row[r] * std::conj(row[c]);
    }
  }
  return DensityMatrix(std::move(out));
}

/// <k|rho|k>.
inline double basis_fidelity(const DensityMatrix& rho, std::size_t k) {
  if (k >= rho.dim()) throw std::out_of_range("basis index out of range");
  return rho(k, k).real();
}

/// Tr(rho^2) = sum |rho_rc|^2 for Hermitian rho.
inline double purity(const DensityMatrix& rho) {
  double p = 0.0;
  for (const Complex& v : rho.matrix().data()) p += std::norm(v);
  return p;
}

inline bool is_unitary(const Operator& op, double tol = kAlgebraTol) {
  const Matrix prod = op.matrix().adjoint() * op.matrix();
  return max_abs_diff(prod, Matrix::identity(op.dim())) <= tol;
}

}  // namespace qsync
