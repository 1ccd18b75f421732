#include "hmimo/surfaces.hpp"

#include <cmath>
#include <stdexcept>

namespace hmimo {

CMatrix reference_wave_matrix(const SurfaceSpec& spec, double guided_index, double lambda) {
  if (spec.feed_positions.empty())
    throw std::invalid_argument("reference_wave_matrix: surface has no feeds");
  const double k_guided = 2.0 * kPi * guided_index / lambda;
  CMatrix a(spec.element_positions.size(), spec.feed_positions.size());
  for (Eigen::Index l = 0; l < a.cols(); ++l)
    for (Eigen::Index n = 0; n < a.rows(); ++n) {
      double d = (spec.element_positions[static_cast<std::size_t>(n)] -
                  spec.feed_positions[static_cast<std::size_t>(l)])
                     .norm();
      a(n, l) = std::polar(1.0, -k_guided * d);
    }
  return a;
}

CMatrix assemble_holographic_matrix(const CVector& weights, const std::vector<CMatrix>& refs) {
  Eigen::Index total_elements = 0;
  Eigen::Index total_feeds = 0;
  for (const auto& a : refs) {
    total_elements += a.rows();
    total_feeds += a.cols();
  }
  if (weights.size() != total_elements)
    throw std::invalid_argument("assemble_holographic_matrix: weight count mismatch");
  CMatrix m = CMatrix::Zero(total_elements, total_feeds);
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  for (const auto& a : refs) {
    m.block(row, col, a.rows(), a.cols()) =
        weights.segment(row, a.rows()).asDiagonal() * a;
    row += a.rows();
    col += a.cols();
  }
  return m;
}

CVector tris_diagonal(const RVector& theta) {
  CVector d(theta.size());
  for (Eigen::Index k = 0; k < theta.size(); ++k) d(k) = std::polar(1.0, theta(k));
  return d;
}

CMatrix assemble_tris_matrix(const RVector& theta) {
  return CMatrix(tris_diagonal(theta).asDiagonal());
}

CMatrix effective_channel(const ChannelSet& ch, const CMatrix& tris_matrix, const CMatrix& holo) {
  if (ch.H_su.cols() != tris_matrix.rows() || tris_matrix.cols() != ch.H_hs.rows() ||
      ch.H_hs.cols() != holo.rows() || ch.H_hu.cols() != holo.rows())
    throw std::invalid_argument("effective_channel: dimension mismatch");
  return ((ch.H_su * tris_matrix) * ch.H_hs + ch.H_hu) * holo;
}

CMatrix effective_channel(const ChannelSet& ch, const CVector& tris_diag, const CMatrix& holo) {
  if (ch.H_su.cols() != tris_diag.size() || tris_diag.size() != ch.H_hs.rows() ||
      ch.H_hs.cols() != holo.rows() || ch.H_hu.cols() != holo.rows())
    throw std::invalid_argument("effective_channel: dimension mismatch");
  return ((ch.H_su * tris_diag.asDiagonal()) * ch.H_hs + ch.H_hu) * holo;
}

}  // namespace hmimo
