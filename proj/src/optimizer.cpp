#include "hmimo/optimizer.hpp"

#include <cmath>
#include <stdexcept>

namespace hmimo {

double mse(const CMatrix& H_eff, const CMatrix& F, double noise_power) {
  if (H_eff.cols() != F.rows() || H_eff.rows() != F.cols())
    throw std::invalid_argument("mse: dimension mismatch");
  const Eigen::Index users = H_eff.rows();
  CMatrix residual = H_eff * F;
  residual.diagonal().array() -= 1.0;
  return residual.squaredNorm() + static_cast<double>(users) * noise_power;
}

namespace {

// F(mu) = H^H (H H^H + mu I)^-1, the small-side form of (H^H H + mu I)^-1 H^H.
CMatrix regularized_precoder(const CMatrix& H, const CMatrix& gram, double mu) {
  CMatrix shifted = gram;
  shifted.diagonal().array() += mu;
  return H.adjoint() * shifted.llt().solve(CMatrix::Identity(gram.rows(), gram.cols()));
}

}  // namespace

CMatrix update_precoder(const CMatrix& H_eff, double total_power, double bisection_tol,
                        bool* degenerate) {
  if (!(total_power > 0)) throw std::invalid_argument("update_precoder: total_power must be > 0");
  if (degenerate) *degenerate = false;
  if (H_eff.norm() == 0.0) {
    if (degenerate) *degenerate = true;
    return CMatrix::Zero(H_eff.cols(), H_eff.rows());
  }

  CMatrix pinv = Eigen::CompleteOrthogonalDecomposition<CMatrix>(H_eff).pseudoInverse();
  if (pinv.squaredNorm() <= total_power) return pinv;

  CMatrix gram = H_eff * H_eff.adjoint();
  auto power_at = [&](double mu) { return regularized_precoder(H_eff, gram, mu).squaredNorm(); };

  double lo = 1e-12;
  if (power_at(lo) <= total_power) return regularized_precoder(H_eff, gram, lo);
  double hi = 1.0;
  while (power_at(hi) > total_power) hi *= 2.0;

  // ||F(mu)||_F^2 is continuous and strictly decreasing in mu; bisect the
  // bracket down to machine resolution (well inside bisection_tol on power).
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    double p = power_at(mid);
    if (std::abs(p - total_power) <= bisection_tol * total_power && p <= total_power) {
      hi = mid;
      break;
    }
    (p > total_power ? lo : hi) = mid;
  }
  return regularized_precoder(H_eff, gram, hi);
}

namespace {

// R = blockdiag(A_s) * F, the feed signals propagated to the elements
// before the tunable per-element weights.
CMatrix stacked_reference_response(const std::vector<CMatrix>& refs, const CMatrix& F) {
  Eigen::Index total_elements = 0;
  for (const auto& a : refs) total_elements += a.rows();
  CMatrix r(total_elements, F.cols());
  Eigen::Index row = 0;
  Eigen::Index feed = 0;
  for (const auto& a : refs) {
    r.middleRows(row, a.rows()) = a * F.middleRows(feed, a.cols());
    row += a.rows();
    feed += a.cols();
  }
  return r;
}

// Exact unit-modulus minimizer of ||E_without + u * C||_F^2 over |u| = 1.
// Returns false (u untouched) when the coordinate is degenerate.
bool unimodular_coordinate_min(const CMatrix& C, const CMatrix& E_without, Complex& u) {
  Complex beta = (C.array() * E_without.conjugate().array()).sum();
  if (std::abs(beta) <= kDegenerateCoordinateEps) return false;
  u = -std::conj(beta) / std::abs(beta);
  return true;
}

}  // namespace

void update_holographic_weights(const ChannelSet& ch, const CVector& tris_diag,
                                BeamformerState& state) {
  CMatrix G = (ch.H_su * tris_diag.asDiagonal()) * ch.H_hs + ch.H_hu;  // I x SN
  CMatrix R = stacked_reference_response(state.refs, state.F);          // SN x I
  CMatrix E = G * (state.w.asDiagonal() * R);
  E.diagonal().array() -= 1.0;
  for (Eigen::Index i = 0; i < state.w.size(); ++i) {
    CMatrix C = G.col(i) * R.row(i);
    CMatrix E_without = E - state.w(i) * C;
    Complex u = state.w(i);
    if (unimodular_coordinate_min(C, E_without, u)) {
      state.w(i) = u;
      E = E_without + u * C;
    }
  }
}

void update_tris_phases(const ChannelSet& ch, BeamformerState& state) {
  CMatrix holo = assemble_holographic_matrix(state.w, state.refs);
  CMatrix mf = holo * state.F;        // SN x I
  CMatrix D = ch.H_hs * mf;           // QK x I
  CVector u = tris_diagonal(state.theta);
  CMatrix E = ch.H_hu * mf + ch.H_su * (u.asDiagonal() * D);
  E.diagonal().array() -= 1.0;
  for (Eigen::Index k = 0; k < state.theta.size(); ++k) {
    CMatrix C = ch.H_su.col(k) * D.row(k);
    CMatrix E_without = E - u(k) * C;
    Complex uk = u(k);
    if (unimodular_coordinate_min(C, E_without, uk)) {
      u(k) = uk;
      double phase = std::arg(uk);
      if (phase < 0) phase += 2.0 * kPi;
      state.theta(k) = phase;
      E = E_without + uk * C;
    }
  }
}

BeamformerState make_initial_state(const ScenarioConfig& config,
                                   const GeometryRealization& geometry, std::mt19937_64& rng) {
  BeamformerState state;
  const double lambda = wavelength(config.carrier_freq);
  for (const auto& rhs : geometry.rhs)
    state.refs.push_back(reference_wave_matrix(rhs, config.guided_index, lambda));

  std::uniform_real_distribution<double> phase_draw(0.0, 2.0 * kPi);
  const Eigen::Index sn =
      static_cast<Eigen::Index>(config.num_satellites) * config.rhs_elements;
  const Eigen::Index qk = static_cast<Eigen::Index>(config.num_ris_abs) * config.tris_elements;
  state.w.resize(sn);
  for (Eigen::Index i = 0; i < sn; ++i) state.w(i) = std::polar(1.0, phase_draw(rng));
  state.theta.resize(qk);
  for (Eigen::Index k = 0; k < qk; ++k) state.theta(k) = phase_draw(rng);
  state.F = CMatrix::Zero(static_cast<Eigen::Index>(config.num_satellites) * config.rhs_feeds,
                          config.num_users);
  return state;
}

std::pair<BeamformerState, OptimizationTrace> optimize(const ChannelSet& ch,
                                                       const ScenarioConfig& config,
                                                       BeamformerState init) {
  const double noise_power = NoiseModel::from(config).noise_power;
  const Eigen::Index users = ch.H_su.rows();
  BeamformerState state = std::move(init);
  OptimizationTrace trace;

  // H_eff vanishes for every (w, theta) iff the direct path is zero and the
  // cascaded path is broken: no iteration can make progress.
  bool cascade_zero = ch.H_su.norm() == 0.0 || ch.H_hs.norm() == 0.0;
  if (cascade_zero && ch.H_hu.norm() == 0.0) {
    state.F.setZero();
    state.degenerate = true;
    trace.mse.push_back(static_cast<double>(users) * (1.0 + noise_power));
    trace.iterations = 0;
    trace.reason = StopReason::degenerate;
    return {std::move(state), std::move(trace)};
  }

  double prev = std::numeric_limits<double>::infinity();
  for (int iter = 0; iter < config.max_outer_iters; ++iter) {
    CVector upsilon = tris_diagonal(state.theta);
    CMatrix holo = assemble_holographic_matrix(state.w, state.refs);
    CMatrix h_eff = effective_channel(ch, upsilon, holo);
    bool degenerate = false;
    state.F = update_precoder(h_eff, config.total_power, config.bisection_tol, &degenerate);
    if (degenerate) {
      state.degenerate = true;
      trace.mse.push_back(mse(h_eff, state.F, noise_power));
      trace.iterations = iter;
      trace.reason = StopReason::degenerate;
      return {std::move(state), std::move(trace)};
    }

    update_holographic_weights(ch, upsilon, state);
    update_tris_phases(ch, state);

    holo = assemble_holographic_matrix(state.w, state.refs);
    h_eff = effective_channel(ch, tris_diagonal(state.theta), holo);
    double value = mse(h_eff, state.F, noise_power);
    trace.mse.push_back(value);
    trace.iterations = iter + 1;
    if (prev - value < config.rel_tol * std::abs(prev)) {
      trace.reason = StopReason::tolerance;
      return {std::move(state), std::move(trace)};
    }
    prev = value;
  }
  trace.reason = StopReason::max_iters;
  return {std::move(state), std::move(trace)};
}

}  // namespace hmimo
