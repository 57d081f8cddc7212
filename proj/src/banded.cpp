#include "mfewave/banded.hpp"

#include <algorithm>
#include <cmath>

namespace mfewave {

template <class T>
BandMatrix<T>::BandMatrix(std::size_t n, std::size_t kl, std::size_t ku)
    : n_(n), kl_(kl), ku_(ku), ld_(2 * kl + ku + 1), data_(n * (2 * kl + ku + 1), T{}) {
  if (n == 0) throw std::invalid_argument("BandMatrix: empty matrix");
}

template <class T>
T& BandMatrix<T>::operator()(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_ || i + ku_ < j || j + kl_ < i)
    throw std::out_of_range("BandMatrix: entry outside band");
  return at(i, j);
}

template <class T>
T BandMatrix<T>::operator()(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_ || i + ku_ < j || j + kl_ < i) return T{};
  return at(i, j);
}

template <class T>
void BandMatrix<T>::apply(std::span<const T> x, std::span<T> y) const {
  if (factorized_) throw std::logic_error("BandMatrix::apply after factorize");
  if (x.size() != n_ || y.size() != n_) throw std::invalid_argument("BandMatrix::apply: size");
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j0 = i > kl_ ? i - kl_ : 0;
    const std::size_t j1 = std::min(n_ - 1, i + ku_);
    T acc{};
    for (std::size_t j = j0; j <= j1; ++j) acc += at(i, j) * x[j];
    y[i] = acc;
  }
}

template <class T>
void BandMatrix<T>::factorize() {
  if (factorized_) return;
  pivot_.assign(n_, 0);
  // Last column reached by fill so far.
  std::size_t ju = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t km = std::min(kl_, n_ - 1 - j);
    std::size_t p = j;
    double best = std::abs(at(j, j));
    for (std::size_t r = j + 1; r <= j + km; ++r) {
      const double v = std::abs(at(r, j));
      if (v > best) {
        best = v;
        p = r;
      }
    }
    pivot_[j] = p;
    if (best == 0.0)
      throw SingularMatrixError("BandMatrix: zero pivot in column " + std::to_string(j), j);
    ju = std::max(ju, std::min(j + ku_ + (p - j), n_ - 1));
    if (p != j)
      for (std::size_t c = j; c <= ju; ++c) std::swap(at(j, c), at(p, c));
    const T inv = T(1) / at(j, j);
    for (std::size_t r = j + 1; r <= j + km; ++r) at(r, j) *= inv;
    for (std::size_t c = j + 1; c <= ju; ++c) {
      const T u = at(j, c);
      if (u == T{}) continue;
      for (std::size_t r = j + 1; r <= j + km; ++r) at(r, c) -= at(r, j) * u;
    }
  }
  factorized_ = true;
}

template <class T>
void BandMatrix<T>::solve(std::span<T> b) const {
  if (!factorized_) throw std::logic_error("BandMatrix::solve before factorize");
  if (b.size() != n_) throw std::invalid_argument("BandMatrix::solve: size");
  for (std::size_t j = 0; j < n_; ++j) {
    if (pivot_[j] != j) std::swap(b[j], b[pivot_[j]]);
    const T bj = b[j];
    if (bj == T{}) continue;
    const std::size_t km = std::min(kl_, n_ - 1 - j);
    for (std::size_t r = j + 1; r <= j + km; ++r) b[r] -= at(r, j) * bj;
  }
  const std::size_t bw = kl_ + ku_;
  for (std::size_t j = n_; j-- > 0;) {
    b[j] /= at(j, j);
    const T bj = b[j];
    const std::size_t i0 = j > bw ? j - bw : 0;
    for (std::size_t i = i0; i < j; ++i) b[i] -= at(i, j) * bj;
  }
}

template class BandMatrix<double>;
template class BandMatrix<cplx>;

}  // namespace mfewave
