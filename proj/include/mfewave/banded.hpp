#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mfewave {

using cplx = std::complex<double>;
using RealVec = std::vector<double>;
using CplxVec = std::vector<cplx>;

/// Thrown when an elimination step meets an exactly zero pivot.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, std::size_t row)
      : std::runtime_error(what), row_(row) {}
  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

/// General band matrix with kl sub- and ku super-diagonals.
///
/// Storage follows the LAPACK band layout (column-major, leading dimension
/// 2*kl+ku+1) so that LU with partial pivoting has room for the kl extra
/// super-diagonals of fill. Entries are written through operator() before
/// factorize(); afterwards the object holds L and U and only solve() is valid.
template <class T>
class BandMatrix {
 public:
  BandMatrix() = default;
  BandMatrix(std::size_t n, std::size_t kl, std::size_t ku);

  std::size_t size() const noexcept { return n_; }
  std::size_t lower() const noexcept { return kl_; }
  std::size_t upper() const noexcept { return ku_; }
  bool factorized() const noexcept { return factorized_; }

  /// Entry (i, j); requires -ku <= i - j <= kl.
  T& operator()(std::size_t i, std::size_t j);
  T operator()(std::size_t i, std::size_t j) const;

  /// y = A x. Only valid before factorize().
  void apply(std::span<const T> x, std::span<T> y) const;

  /// In-place LU with partial pivoting. Throws SingularMatrixError.
  void factorize();

  /// Overwrites b with A^{-1} b. Requires factorize().
  void solve(std::span<T> b) const;

 private:
  T& at(std::size_t i, std::size_t j) { return data_[j * ld_ + (kl_ + ku_ + i - j)]; }
  const T& at(std::size_t i, std::size_t j) const {
    return data_[j * ld_ + (kl_ + ku_ + i - j)];
  }

  std::size_t n_ = 0;
  std::size_t kl_ = 0;
  std::size_t ku_ = 0;
  std::size_t ld_ = 1;
  std::vector<T> data_;
  std::vector<std::size_t> pivot_;
  bool factorized_ = false;
};

extern template class BandMatrix<double>;
extern template class BandMatrix<cplx>;

}  // namespace mfewave
