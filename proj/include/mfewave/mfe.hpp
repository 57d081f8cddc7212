#pragma once

#include <atomic>
#include <functional>

#include "mfewave/direct.hpp"

namespace mfewave {

/// Truncation of the modulated Fourier expansion: harmonics k = -J*K..J*K.
struct MfeConfig {
  int K = 3;
  int J = 1;

  int span() const noexcept { return J * K; }
  int harmonics() const noexcept { return 2 * J * K + 1; }
};

/// Throws std::invalid_argument unless K >= 1 and J matches the modulation.
void validate_mfe_config(const MfeConfig& cfg, const ModulationSpec& spec);

/// Coefficient fields z_k and w_k = dz_k/dt, stored at index k + span.
struct MfeState {
  int span = 0;
  std::vector<CplxVec> z;
  std::vector<CplxVec> w;
  double t = 0.0;

  MfeState() = default;
  MfeState(int span, std::size_t m);

  CplxVec& zk(int k) { return z[static_cast<std::size_t>(k + span)]; }
  const CplxVec& zk(int k) const { return z[static_cast<std::size_t>(k + span)]; }
  CplxVec& wk(int k) { return w[static_cast<std::size_t>(k + span)]; }
  const CplxVec& wk(int k) const { return w[static_cast<std::size_t>(k + span)]; }
};

struct MfeTrajectory {
  double tau = 0.0;
  std::size_t N = 0;
  std::size_t stride = 1;
  std::vector<MfeState> states;

  double time(std::size_t k) const { return static_cast<double>(k * stride) * tau; }
};

/// The coupling operator T_A: (T z)_k = A0 z_k + rho sum_{j=1..J} Ahat_j (z_{k-j} + z_{k+j}),
/// with harmonics outside -span..span taken as zero.
class CouplingOperator {
 public:
  CouplingOperator(const Grid1D& grid, const ModulationSpec& spec, int span);

  int span() const noexcept { return span_; }
  std::size_t m() const noexcept { return A0_.size(); }
  double rho() const noexcept { return rho_; }
  const BandedSym& A0() const noexcept { return A0_; }
  const std::vector<BandedSym>& Ahat() const noexcept { return Ahat_; }

  /// y = T z (block vectors indexed by k + span).
  void apply(const std::vector<CplxVec>& z, std::vector<CplxVec>& y) const;

 private:
  int span_;
  double rho_;
  BandedSym A0_;
  std::vector<BandedSym> Ahat_;
};

/// diag(shift_k) + T_A as one banded matrix in node-major ordering
/// (index i * (2 span + 1) + k + span), LU-factorised once on construction.
/// With shift_k = (s + i k / eps)^2 this is D_K(s)^2 + T_A.
class BlockOperator {
 public:
  /// D_K(s)^2 + T_A.
  BlockOperator(const Grid1D& grid, const ModulationSpec& spec, const MfeConfig& cfg, cplx s);
  /// diag(shifts) + T_A for arbitrary per-harmonic shifts.
  BlockOperator(const Grid1D& grid, const ModulationSpec& spec, int span, CplxVec shifts);

  int span() const noexcept { return coupling_.span(); }
  std::size_t m() const noexcept { return coupling_.m(); }
  std::size_t dimension() const noexcept { return lu_.size(); }
  std::size_t bandwidth() const noexcept { return lu_.lower(); }
  const CplxVec& shifts() const noexcept { return shifts_; }
  const CouplingOperator& coupling() const noexcept { return coupling_; }

  /// y = (diag(shift) + T) z, computed from the unfactorised blocks.
  void apply(const std::vector<CplxVec>& z, std::vector<CplxVec>& y) const;
  /// Overwrites the block vector rhs with the solution.
  void solve(std::vector<CplxVec>& rhs) const;

  /// Number of block factorisations performed in this process.
  static std::size_t factorizations() noexcept { return counter_.load(); }

 private:
  std::size_t index(std::size_t i, int k) const {
    return i * static_cast<std::size_t>(2 * span() + 1) + static_cast<std::size_t>(k + span());
  }
  void build_and_factorize();

  CouplingOperator coupling_;
  CplxVec shifts_;
  BandMatrix<cplx> lu_;
  static inline std::atomic<std::size_t> counter_{0};
};

/// D_K(s)^2 + T_A, factorised. SingularMatrixError carries the failing row;
/// laplace_solve reports the offending s.
BlockOperator assemble_block(const Grid1D& grid, const ModulationSpec& spec, const MfeConfig& cfg,
                             cplx s);

enum class MfeScheme {
  /// Trapezoidal rule on (z, dz/dt); identical to trapezoidal convolution quadrature.
  trapezoidal,
  /// The two-step recurrence with forward first difference and (n+1, n)
  /// averages; first order, kept for comparison.
  printed,
};

struct MfeOptions {
  MfeScheme scheme = MfeScheme::trapezoidal;
  std::size_t stride = 1;
};

using MfeVisitor = std::function<void(std::size_t n, const MfeState&)>;

/// Marches the coupled system from zero data with one factorisation of the
/// step matrix; visit(n, state) for n = 0..N.
void mfe_march(const Grid1D& grid, const ModulationSpec& spec, const SourceSpec& src,
               const MfeConfig& cfg, double tau, std::size_t N, const MfeVisitor& visit,
               MfeScheme scheme = MfeScheme::trapezoidal);

/// Same march from given (z, w) at t = 0, for invariant studies; only the
/// trapezoidal scheme.
void mfe_march_from(const Grid1D& grid, const ModulationSpec& spec, const SourceSpec& src,
                    const MfeConfig& cfg, double tau, std::size_t N, MfeState initial,
                    const MfeVisitor& visit);

MfeTrajectory mfe_solve(const Grid1D& grid, const ModulationSpec& spec, const SourceSpec& src,
                        const MfeConfig& cfg, double tau, std::size_t N,
                        const MfeOptions& options = {});

struct Reconstruction {
  RealVec u;
  /// max_i |Im sum_k z_k e^{ikt/eps}|, zero for exactly symmetric coefficients.
  double imag_max = 0.0;
};

/// Re sum_k z_k(t) e^{i k t / eps}.
Reconstruction reconstruct(const MfeState& state, const ModulationSpec& spec);

/// max_k ||z_{-k} - conj(z_k)|| / max_k ||z_k|| (0 for the zero state).
double symmetry_defect(const MfeState& state);

/// Conserved quantity of the f = 0 coupled system,
///   sum_k ||w_k||^2 - k^2/eps^2 ||z_k||^2 + Re <z, T_A z>,
/// which for the cosine modulation reads
///   sum_k ||w_k||^2 - k^2/eps^2 ||z_k||^2 + ||grad z_k||^2 + 2 rho Re(grad z_k, grad z_{k-1}).
double mfe_invariant(const MfeState& state, const Grid1D& grid, const ModulationSpec& spec);
double mfe_invariant(const MfeState& state, const Grid1D& grid, const CouplingOperator& T,
                     double epsilon);

/// Streaming accumulation of (sum_n ||z_k(t_n)||^2)^{1/2}, k = 0..span.
class CoefficientNorms {
 public:
  CoefficientNorms(const Grid1D& grid, int span);
  void add(const MfeState& state);
  RealVec norms() const;

 private:
  double h_;
  int span_;
  RealVec sums_;
};

RealVec coefficient_norms(const MfeTrajectory& traj, const Grid1D& grid);

/// sup_n ||reconstruct(z(t_n)) - u_ref(t_n)|| over the MFE time grid; the
/// reference is subsampled. Throws std::invalid_argument if the grids do not nest.
double remainder_norm(const MfeTrajectory& mfe_traj, const WaveTrajectory& ref_traj,
                      const ModulationSpec& spec, const Grid1D& grid);

}  // namespace mfewave
