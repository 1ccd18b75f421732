#pragma once

#include <random>
#include <utility>
#include <vector>

#include "hmimo/channel.hpp"
#include "hmimo/surfaces.hpp"
#include "hmimo/types.hpp"

namespace hmimo {

/// Coordinates with |beta| below this are left unchanged by the sweeps.
inline constexpr double kDegenerateCoordinateEps = 1e-12;

struct BeamformerState {
  CMatrix F;                   // SL x I digital precoder
  CVector w;                   // SN unimodular holographic weights
  RVector theta;               // QK T-RIS phases, radians in [0, 2pi)
  std::vector<CMatrix> refs;   // per-satellite reference-wave matrices (N x L)
  bool degenerate = false;
};

enum class StopReason { tolerance, max_iters, degenerate };

struct OptimizationTrace {
  std::vector<double> mse;  // one value per outer iteration
  int iterations = 0;
  StopReason reason = StopReason::max_iters;
};

/// E ||y - x||^2 under unit-power symbols = ||H_eff F - I||_F^2 + I sigma^2.
double mse(const CMatrix& H_eff, const CMatrix& F, double noise_power);

/// Power-constrained MMSE precoder: the pseudo-inverse when it fits the power
/// budget, otherwise F(mu) = (H^H H + mu I)^-1 H^H with mu found by bisection
/// so that ||F(mu)||_F^2 = P_t. Sets *degenerate and returns zero for H = 0.
CMatrix update_precoder(const CMatrix& H_eff, double total_power, double bisection_tol,
                        bool* degenerate = nullptr);

/// One exact coordinate-descent sweep over all SN holographic weights,
/// in place on state.w. Uses state.F and the T-RIS diagonal.
void update_holographic_weights(const ChannelSet& ch, const CVector& tris_diag,
                                BeamformerState& state);

/// One exact coordinate-descent sweep over all QK T-RIS phases, in place on
/// state.theta. Uses state.F and state.w.
void update_tris_phases(const ChannelSet& ch, BeamformerState& state);

/// Random-phase initial state (w, theta from rng; F left empty) with the
/// reference-wave matrices of the given geometry.
BeamformerState make_initial_state(const ScenarioConfig& config,
                                   const GeometryRealization& geometry, std::mt19937_64& rng);

/// Alternating minimization: precoder, weight sweep, phase sweep per outer
/// iteration until the relative MSE improvement drops below rel_tol.
std::pair<BeamformerState, OptimizationTrace> optimize(const ChannelSet& ch,
                                                       const ScenarioConfig& config,
                                                       BeamformerState init);

}  // namespace hmimo
