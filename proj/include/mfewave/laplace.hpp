#pragma once

#include <cstdint>

#include "mfewave/mfe.hpp"

namespace mfewave {

/// Raised when the block system at a Laplace parameter is singular.
class ResonanceError : public std::runtime_error {
 public:
  ResonanceError(const std::string& what, cplx s) : std::runtime_error(what), s_(s) {}
  cplx s() const noexcept { return s_; }

 private:
  cplx s_;
};

/// Discrete Dirichlet Laplacian (mu = 1), the operator behind R(s) = (s^2 + A)^{-1}.
BandedSym laplacian(const Grid1D& grid);

/// w = (s^2 I + A)^{-1} g. Throws ResonanceError on a singular system.
CplxVec helmholtz_apply(const Grid1D& grid, cplx s, std::span<const cplx> g);

/// Well-posedness threshold 4 rho / eps on Re s.
double well_posedness_threshold(const ModulationSpec& spec);

struct LaplaceSolveResult {
  cplx s;
  bool admissible = false;  ///< Re s > 4 rho / eps
  std::vector<CplxVec> zhat;  ///< index k + span
  RealVec grad_norms;         ///< ||grad zhat_k||, index k + span
  double d_norm = 0.0;        ///< ||D_K(s) zhat||
  double lhs = 0.0;           ///< ||D_K(s) zhat||^2 + ||grad zhat||^2
  double bound = 0.0;         ///< 4 / (Re s)^2 ||fhat||^2
  bool bound_ok = false;
};

/// Solves (D_K(s)^2 + T_A) zhat = (delta_k0 fhat). Throws ResonanceError
/// carrying s if the block factorisation fails.
LaplaceSolveResult laplace_solve(const Grid1D& grid, const ModulationSpec& spec,
                                 const MfeConfig& cfg, cplx s, std::span<const cplx> fhat);

struct DecayRow {
  int k = 0;
  double norm = 0.0;   ///< max(||grad zhat_k||, ||grad zhat_{-k}||)
  double bound = 0.0;  ///< (2 K rho/(eps Re s) + 2 rho |s| / Re s)^k (2 / Re s) ||fhat||
  bool ok = false;
};

struct DecayReport {
  cplx s;
  bool admissible = false;
  std::vector<DecayRow> rows;  ///< k = 0..span
};

DecayReport decay_diagnostic(const Grid1D& grid, const ModulationSpec& spec, const MfeConfig& cfg,
                             cplx s, std::span<const cplx> fhat);

/// Outcome of a randomised inequality check: worst observed lhs / rhs.
struct SuiteResult {
  std::string name;
  std::size_t samples = 0;
  std::size_t failures = 0;
  double worst_ratio = 0.0;

  bool passed() const noexcept { return samples > 0 && failures == 0; }
};

/// Random s with Re s in (re_min, re_max], Im s in [-im_max, im_max] and
/// random complex g; checks
///   ||R g|| <= ||g|| / (|s| Re s),         ||grad R g|| <= ||g|| / (sqrt 2 Re s),
///   ||grad R A g|| <= |s|/Re s ||grad g||,  ||R A g|| <= ||grad g|| / (sqrt 2 Re s),
///   ||R A g|| <= |s|/Re s ||g||.
struct SampleBox {
  double re_min = 0.0;
  double re_max = 10.0;
  double im_max = 50.0;
};

std::vector<SuiteResult> resolvent_suite(const Grid1D& grid, std::size_t samples,
                                         std::uint64_t seed, const SampleBox& box = {});

/// Re <D z, (D^2 + T) z> >= 1/2 Re s (||D z||^2 + ||grad z||^2) for random z and
/// s in the box (re_min is raised to the well-posedness threshold).
SuiteResult coercivity_suite(const Grid1D& grid, const ModulationSpec& spec, const MfeConfig& cfg,
                             std::size_t samples, std::uint64_t seed, SampleBox box = {});

/// Well-posedness bound for random admissible s and random fhat.
SuiteResult well_posedness_suite(const Grid1D& grid, const ModulationSpec& spec,
                                 const MfeConfig& cfg, std::size_t samples, std::uint64_t seed,
                                 SampleBox box = {});

/// max over k = +-1 of ||zhat_k - rho R(s + ik/eps)(-A) R(s) fhat|| for K = 1
/// (cosine modulation), the first Neumann-series term.
double neumann_defect(const Grid1D& grid, double epsilon, double rho, cplx s,
                      std::span<const cplx> fhat);

/// max_k ||zhat_k(conj s, conj fhat) - conj zhat_{-k}(s, fhat)|| / max_k ||zhat_k||.
double conjugation_defect(const Grid1D& grid, const ModulationSpec& spec, const MfeConfig& cfg,
                          cplx s, std::span<const cplx> fhat);

}  // namespace mfewave
