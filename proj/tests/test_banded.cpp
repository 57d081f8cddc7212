#include <doctest.h>

#include <random>

#include "mfewave/banded.hpp"

using namespace mfewave;

namespace {

// Dense Gaussian elimination with partial pivoting, the oracle for the band LU.
template <class T>
std::vector<T> dense_solve(std::vector<T> a, std::vector<T> b, std::size_t n) {
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[p * n + c])) p = r;
    for (std::size_t j = 0; j < n; ++j) std::swap(a[c * n + j], a[p * n + j]);
    std::swap(b[c], b[p]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const T f = a[r * n + c] / a[c * n + c];
      for (std::size_t j = c; j < n; ++j) a[r * n + j] -= f * a[c * n + j];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = n; c-- > 0;) {
    for (std::size_t j = c + 1; j < n; ++j) b[c] -= a[c * n + j] * b[j];
    b[c] /= a[c * n + c];
  }
  return b;
}

}  // namespace

TEST_CASE("band LU agrees with dense elimination") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  struct Shape {
    std::size_t n, kl, ku;
  };
  for (auto [n, kl, ku] : {Shape{12, 2, 3}, Shape{30, 5, 1}, Shape{9, 0, 0}}) {
    BandMatrix<cplx> A(n, kl, ku);
    std::vector<cplx> dense(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i <= j + kl && j <= i + ku) {
          // weak diagonal forces row exchanges
          const cplx v(u(rng), u(rng));
          A(i, j) = v;
          dense[i * n + j] = v;
        }
    std::vector<cplx> b(n);
    for (auto& x : b) x = cplx(u(rng), u(rng));
    std::vector<cplx> Ab(n);
    A.apply(b, Ab);
    const auto expect = dense_solve(dense, Ab, n);
    A.factorize();
    A.solve(Ab);
    for (std::size_t i = 0; i < n; ++i) {
      CHECK(std::abs(Ab[i] - expect[i]) < 1e-9);
      CHECK(std::abs(Ab[i] - b[i]) < 1e-8);
    }
  }
}

TEST_CASE("zero pivot raises SingularMatrixError with its row") {
  BandMatrix<double> A(3, 1, 1);
  A(0, 0) = 1.0;
  A(1, 1) = 0.0;
  A(2, 2) = 1.0;
  try {
    A.factorize();
    FAIL("expected SingularMatrixError");
  } catch (const SingularMatrixError& e) {
    CHECK(e.row() == 1);
  }
}
