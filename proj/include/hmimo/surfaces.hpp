#pragma once

#include <vector>

#include "hmimo/channel.hpp"
#include "hmimo/scenario.hpp"
#include "hmimo/types.hpp"

namespace hmimo {

/// Fixed feed-to-element propagation inside one RHS aperture:
/// entry (n, l) = exp(-j 2 pi n_g |p_n - q_l| / lambda), N x L, unimodular.
CMatrix reference_wave_matrix(const SurfaceSpec& spec, double guided_index, double lambda);

/// Block-diagonal holographic map, SN x SL; block s = diag(w_s) * A_s.
CMatrix assemble_holographic_matrix(const CVector& weights, const std::vector<CMatrix>& refs);

/// exp(j theta) as a vector, the diagonal of the T-RIS matrix.
CVector tris_diagonal(const RVector& theta);

/// Upsilon = diag(exp(j theta)), QK x QK unitary.
CMatrix assemble_tris_matrix(const RVector& theta);

/// H_eff = (H_su * Upsilon * H_hs + H_hu) * M, I x SL.
CMatrix effective_channel(const ChannelSet& ch, const CMatrix& tris_matrix, const CMatrix& holo);

/// Same composition with Upsilon given by its diagonal (avoids the QK x QK dense product).
CMatrix effective_channel(const ChannelSet& ch, const CVector& tris_diag, const CMatrix& holo);

}  // namespace hmimo
