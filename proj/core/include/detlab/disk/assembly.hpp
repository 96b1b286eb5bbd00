#pragma once

#include <cstddef>
#include <vector>

#include "detlab/disk/modes.hpp"

namespace detlab {

// Product over l in [-l_max, l_max] of per-mode factors that depend on |l|,
// plus a power-law estimate of the omitted tail.
struct ModeSumResult {
  int l_max = 0;
  cplx partial{1.0, 0.0};
  double tail_estimate = 0.0;  // estimate of |full product - partial|
  cplx total{1.0, 0.0};        // partial product; the tail is reported, not applied
  bool converged = false;      // tail_estimate <= tolerance * |partial|
  double fit_exponent = 0.0;   // |log factor_l| ~ C l^{-alpha}
  double fit_constant = 0.0;
  int fit_points = 0;
};

// factors[l] for l = 0..l_max; modes l != 0 count twice.
ModeSumResult sum_modes(const std::vector<cplx>& factors, double tolerance);

struct AssemblyOptions {
  int l_max = 40;
  double tolerance = 1e-6;
  std::size_t threads = 1;
};

struct Theorem42Result {
  ModeSumResult det_ratio;       // prod det2_N / det2_D
  ModeSumResult boundary_form;   // prod (1 - b) e^{b} times exp(sum tau)
  ModeSumResult dtn_form;        // prod d e^{1 - d} times exp(sum tau)
  std::vector<ModeData> modes;   // |l| = 0..l_max
  int truncation_mode = -1;      // first l with |d - 1| < 1e-8 for three modes in a row
  double dtn_hs_sum = 0.0;       // sum over l of |d_l - 1|^2
};

Theorem42Result assemble_theorem_4_2(const DiskModeSolver& solver, const AssemblyOptions& opts);

struct Eq437Result {
  ModeSumResult det_ratio;      // prod det2_D / det2_N
  ModeSumResult boundary_form;  // prod (1 + b') e^{-b'} times exp(-sum tau')
  std::vector<cplx> b_prime;
  std::vector<cplx> tau_prime;
};

Eq437Result assemble_eq_4_37(const DiskModeSolver& solver, const AssemblyOptions& opts);

// Runs fn(l) for l = 0..l_max on up to `threads` workers; results are stored
// by l so the reduction order never depends on scheduling.
template <class T, class Fn>
std::vector<T> map_modes(int l_max, std::size_t threads, Fn fn);

}  // namespace detlab

#include "detlab/disk/assembly_impl.hpp"
