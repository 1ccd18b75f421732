#include <doctest.h>

#include <cmath>
#include <random>

#include "hmimo/rng.hpp"
#include "hmimo/surfaces.hpp"

using namespace hmimo;

namespace {

CMatrix random_cmatrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c)
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = Complex(gauss(rng), gauss(rng));
  return m;
}

CVector random_phases(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 2.0 * kPi);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = std::polar(1.0, unif(rng));
  return v;
}

}  // namespace

TEST_CASE("reference_wave_matrix") {
  double lambda = 0.025;
  double n_g = 1.5;
  SurfaceSpec spec;
  spec.element_positions = {Vec3::Zero(), Vec3(lambda / (2.0 * n_g), 0, 0), Vec3(0.01, 0.003, 0)};
  spec.feed_positions = {Vec3::Zero()};

  CMatrix a = reference_wave_matrix(spec, n_g, lambda);
  REQUIRE(a.rows() == 3);
  REQUIRE(a.cols() == 1);

  for (Eigen::Index n = 0; n < 3; ++n) CHECK(std::abs(a(n, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  // Element coincident with the feed: zero path length.
  CHECK(std::abs(a(0, 0) - Complex(1, 0)) < 1e-12);
  // Element at lambda/(2 n_g): half-cycle guided phase.
  CHECK(std::abs(a(1, 0) - Complex(-1, 0)) < 1e-12);

  SurfaceSpec no_feeds = spec;
  no_feeds.feed_positions.clear();
  CHECK_THROWS(reference_wave_matrix(no_feeds, n_g, lambda));
}

TEST_CASE("assemble_holographic_matrix") {
  std::mt19937_64 rng(1);
  const int n = 4, l = 2, s = 2;
  std::vector<CMatrix> refs;
  for (int i = 0; i < s; ++i) {
    CMatrix a = random_cmatrix(n, l, rng);
    a = (a.array() / a.array().abs()).matrix();  // unimodular like a real reference matrix
    refs.push_back(a);
  }
  CVector w = random_phases(s * n, rng);
  CMatrix m = assemble_holographic_matrix(w, refs);
  REQUIRE(m.rows() == s * n);
  REQUIRE(m.cols() == s * l);

  SUBCASE("single block is diag(w) * A") {
    CVector w1 = w.head(n);
    CMatrix m1 = assemble_holographic_matrix(w1, {refs[0]});
    CMatrix expected = w1.asDiagonal() * refs[0];
    CHECK((m1 - expected).norm() < 1e-15);
  }
  SUBCASE("identity weights reproduce the reference blocks") {
    CVector ones = CVector::Ones(s * n);
    CMatrix m1 = assemble_holographic_matrix(ones, refs);
    CHECK((m1.block(0, 0, n, l) - refs[0]).norm() < 1e-15);
    CHECK((m1.block(n, l, n, l) - refs[1]).norm() < 1e-15);
  }
  SUBCASE("cross-satellite coupling is exactly zero") {
    CHECK(m.block(0, l, n, l).norm() == 0.0);
    CHECK(m.block(n, 0, n, l).norm() == 0.0);
  }
  SUBCASE("S N L nonzero unimodular entries") {
    int nonzero = 0;
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      for (Eigen::Index r = 0; r < m.rows(); ++r)
        if (m(r, c) != Complex(0, 0)) {
          ++nonzero;
          CHECK(std::abs(m(r, c)) == doctest::Approx(1.0).epsilon(1e-12));
        }
    CHECK(nonzero == s * n * l);
  }
  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS(assemble_holographic_matrix(w.head(3), refs));
  }
}

TEST_CASE("assemble_tris_matrix") {
  SUBCASE("zero phases give the identity") {
    CMatrix u = assemble_tris_matrix(RVector::Zero(5));
    CHECK((u - CMatrix::Identity(5, 5)).norm() == 0.0);
  }
  SUBCASE("unitary for any phases") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> unif(0.0, 2.0 * kPi);
    RVector theta(8);
    for (int k = 0; k < 8; ++k) theta(k) = unif(rng);
    CMatrix u = assemble_tris_matrix(theta);
    CHECK((u.adjoint() * u - CMatrix::Identity(8, 8)).norm() < 1e-12);
  }
  SUBCASE("pi phase gives -1") {
    RVector theta = RVector::Zero(3);
    theta(0) = kPi;
    CMatrix u = assemble_tris_matrix(theta);
    CHECK(std::abs(u(0, 0) - Complex(-1, 0)) < 1e-12);
  }
}

namespace {

ChannelSet random_channels(int users, int qk, int sn, std::mt19937_64& rng) {
  ChannelSet ch;
  ch.H_hs = random_cmatrix(qk, sn, rng);
  ch.H_su = random_cmatrix(users, qk, rng);
  ch.H_hu = random_cmatrix(users, sn, rng);
  return ch;
}

}  // namespace

TEST_CASE("effective_channel") {
  std::mt19937_64 rng(3);
  const int users = 2, qk = 4, sn = 4, sl = 2;
  auto ch = random_channels(users, qk, sn, rng);
  CMatrix m = random_cmatrix(sn, sl, rng);

  SUBCASE("identity T-RIS and no direct path degenerates to the cascade") {
    ChannelSet nodirect = ch;
    nodirect.H_hu.setZero();
    CMatrix h = effective_channel(nodirect, CMatrix(CMatrix::Identity(qk, qk)), m);
    CHECK((h - ch.H_su * ch.H_hs * m).norm() < 1e-12 * h.norm());
  }
  SUBCASE("no cascade leaves the direct path") {
    ChannelSet direct = ch;
    direct.H_su.setZero();
    CMatrix h = effective_channel(direct, CMatrix(CMatrix::Identity(qk, qk)), m);
    CHECK((h - ch.H_hu * m).norm() < 1e-13 * h.norm());
  }
  SUBCASE("matches a scalar triple-loop evaluation") {
    RVector theta(qk);
    std::uniform_real_distribution<double> unif(0.0, 2.0 * kPi);
    for (int k = 0; k < qk; ++k) theta(k) = unif(rng);
    CMatrix upsilon = assemble_tris_matrix(theta);
    CMatrix h = effective_channel(ch, upsilon, m);
    // Entry-by-entry scalar arithmetic, no matrix products.
    for (int i = 0; i < users; ++i)
      for (int f = 0; f < sl; ++f) {
        Complex acc(0, 0);
        for (int n = 0; n < sn; ++n) {
          Complex g = ch.H_hu(i, n);
          for (int k = 0; k < qk; ++k)
            g += ch.H_su(i, k) * upsilon(k, k) * ch.H_hs(k, n);
          acc += g * m(n, f);
        }
        CHECK(std::abs(h(i, f) - acc) < 1e-12 * std::abs(acc));
      }
    // Diagonal-form overload agrees with the dense form.
    CMatrix h2 = effective_channel(ch, tris_diagonal(theta), m);
    CHECK((h - h2).norm() < 1e-12 * h.norm());
  }
  SUBCASE("linear in each channel term") {
    CMatrix upsilon = CMatrix::Identity(qk, qk);
    auto perturbed = ch;
    perturbed.H_su = 2.0 * ch.H_su;
    CMatrix base = effective_channel(ch, upsilon, m);
    ChannelSet only_cascade = ch;
    only_cascade.H_hu.setZero();
    CMatrix cascade = effective_channel(only_cascade, upsilon, m);
    CMatrix scaled = effective_channel(perturbed, upsilon, m);
    CHECK((scaled - base - cascade).norm() < 1e-9 * base.norm());
  }
  SUBCASE("Frobenius consistency bound") {
    CMatrix upsilon = CMatrix::Identity(qk, qk);
    CMatrix h = effective_channel(ch, upsilon, m);
    double m2 = m.jacobiSvd().singularValues()(0);
    double bound = ch.H_su.norm() * ch.H_hs.norm() * m2 + ch.H_hu.norm() * m2;
    CHECK(h.norm() <= bound * (1.0 + 1e-12));
  }
  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS(effective_channel(ch, CMatrix(CMatrix::Identity(qk + 1, qk + 1)), m));
  }
}
