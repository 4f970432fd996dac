// SPDX-License-Identifier: Apache-2.0
#include "owcrs/error.hpp"
#include "owcrs/rsma.hpp"
#include "support/reference.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace owcrs;

namespace {

ChannelMatrix identity2() {
  ChannelMatrix cm;
  cm.h = Eigen::MatrixXd::Identity(2, 2);
  cm.sigma2 = 1.0;
  return cm;
}

ChannelMatrix random_channel(std::mt19937_64& rng, int k, int l) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  ChannelMatrix cm;
  cm.h.resize(k, l);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < l; ++j) cm.h(i, j) = u(rng);
  }
  cm.sigma2 = 1.0;
  return cm;
}

}  // namespace

TEST_CASE("power split") {
  auto ps = power_split(10, 1.0, 10);
  CHECK(ps.common == 0.0);
  CHECK(ps.per_private == doctest::Approx(1.0));
  ps = power_split(10, 0.0, 10);
  CHECK(ps.common == 10.0);
  CHECK(ps.per_private == 0.0);
  ps = power_split(10, 0.5, 2);
  CHECK(ps.common == 5.0);
  CHECK(ps.per_private == 2.5);

  CHECK_THROWS_AS(power_split(10, -0.01, 2), InvalidArgument);
  CHECK_THROWS_AS(power_split(10, 1.01, 2), InvalidArgument);
  CHECK_THROWS_AS(power_split(10, std::nan(""), 2), InvalidArgument);
  CHECK_THROWS_AS(power_split(0, 0.5, 2), InvalidArgument);
  CHECK_THROWS_AS(power_split(10, 0.5, 0), InvalidArgument);
}

TEST_CASE("private precoders") {
  const Eigen::MatrixXd w = private_precoders(identity2(), 0.0);
  CHECK((w - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-15);

  std::mt19937_64 rng(21);
  const ChannelMatrix square = random_channel(rng, 4, 4);
  const Eigen::MatrixXd cross = square.h * private_precoders(square, 0.0);
  for (int k = 0; k < 4; ++k) {
    for (int j = 0; j < 4; ++j) {
      if (j != k) CHECK(std::abs(cross(k, j)) <= 1e-9 * std::abs(cross(k, k)));
    }
  }

  const ChannelMatrix wide = random_channel(rng, 10, 4);
  const Eigen::MatrixXd wo = private_precoders(wide, default_regularization(wide, 100.0));
  CHECK(wo.rows() == 4);
  CHECK(wo.cols() == 10);
  CHECK(wo.allFinite());
  for (int k = 0; k < 10; ++k) CHECK(wo.col(k).norm() == doctest::Approx(1.0).epsilon(1e-12));

  CHECK_THROWS_WITH_AS(private_precoders(wide, 0.0), doctest::Contains("regularization"), InvalidArgument);
  CHECK_THROWS_AS(private_precoders(square, -1.0), InvalidArgument);

  ChannelMatrix zero_row = square;
  zero_row.h.row(2).setZero();
  const Eigen::MatrixXd wz = private_precoders(zero_row, 0.1);
  for (int k = 0; k < 4; ++k) CHECK(wz.col(k).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("common precoder") {
  ChannelMatrix one;
  one.h.resize(1, 3);
  one.h << 1.0, 2.0, 2.0;
  CHECK((common_precoder(one) - Eigen::Vector3d(1, 2, 2) / 3.0).cwiseAbs().maxCoeff() <= 1e-15);

  const Eigen::VectorXd wc = common_precoder(identity2());
  CHECK(wc(0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(wc(1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

  std::mt19937_64 rng(22);
  for (int i = 0; i < 1000; ++i) {
    const ChannelMatrix cm = random_channel(rng, 1 + i % 10, 1 + i % 4);
    REQUIRE(std::abs(common_precoder(cm).norm() - 1.0) <= 1e-9);
  }

  ChannelMatrix zero;
  zero.h = Eigen::MatrixXd::Zero(2, 2);
  CHECK_THROWS_AS(common_precoder(zero), InvalidArgument);
}

TEST_CASE("SINRs on the identity fixture") {
  const ChannelMatrix cm = identity2();
  const Precoders pre = make_precoders(cm, 10.0, 0.0);
  const Eigen::VectorXd gc = sinr_common(cm, pre, power_split(10, 0.5, 2));
  CHECK(gc(0) == doctest::Approx(0.714285714285714).epsilon(1e-12));
  CHECK(gc(1) == doctest::Approx(0.714285714285714).epsilon(1e-12));
  const Eigen::VectorXd gp = sinr_private(cm, pre, power_split(10, 0.5, 2));
  CHECK(gp(0) == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(gp(1) == doctest::Approx(2.5).epsilon(1e-12));

  CHECK(sinr_common(cm, pre, power_split(10, 1.0, 2)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(sinr_private(cm, pre, power_split(10, 0.0, 2)).cwiseAbs().maxCoeff() == 0.0);

  ChannelMatrix noiseless = cm;
  noiseless.sigma2 = 0.0;
  CHECK_THROWS_AS(sinr_common(noiseless, pre, power_split(10, 0.5, 2)), InvalidArgument);
  CHECK_THROWS_AS(sinr_private(noiseless, pre, power_split(10, 0.5, 2)), InvalidArgument);
}

TEST_CASE("single-user private SINR has no interference") {
  ChannelMatrix cm;
  cm.h.resize(1, 4);
  cm.h << 0.2, 0.1, 0.4, 0.3;
  cm.sigma2 = 0.5;
  const Precoders pre = make_precoders(cm, 3.0);
  const double gp = sinr_private(cm, pre, power_split(3.0, 0.6, 1))(0);
  CHECK(gp == doctest::Approx(1.8 * cm.h.row(0).squaredNorm() / 0.5).epsilon(1e-12));
}

TEST_CASE("rates on the identity fixture") {
  const ChannelMatrix cm = identity2();
  const RsKernel kernel(cm, make_precoders(cm, 10.0, 0.0));
  const RsEvaluation ev = kernel.evaluate(power_split(10, 0.5, 2));
  CHECK(ev.rate_common == doctest::Approx(0.777607578663552).epsilon(1e-12));
  CHECK(ev.rate_private == doctest::Approx(3.614709844115208).epsilon(1e-12));
  CHECK(ev.sum_rate == doctest::Approx(4.392317422778760).epsilon(1e-12));
  CHECK(ev.sum_rate == ev.rate_common + ev.rate_private);

  // Default regularization keeps identity directions on this channel.
  CHECK(rs_sum_rate(cm, 0.5, 10).sum_rate == doctest::Approx(4.392317422778760).epsilon(1e-12));

  const RsEvaluation common_only = rs_sum_rate(cm, 0.0, 10);
  CHECK(common_only.rate_private == 0.0);
  CHECK(common_only.sum_rate == common_only.rate_common);
  const RsEvaluation private_only = rs_sum_rate(cm, 1.0, 10);
  CHECK(private_only.rate_common == 0.0);
  CHECK(private_only.sum_rate == private_only.rate_private);
}

TEST_CASE("alpha search") {
  const ChannelMatrix cm = identity2();
  const std::vector<double> single{0.37};
  CHECK(optimize_alpha(cm, 10, single).alpha == 0.37);
  CHECK_THROWS_AS(optimize_alpha(cm, 10, std::vector<double>{}), InvalidArgument);
  CHECK_THROWS_AS(optimize_alpha(cm, 10, std::vector<double>{1.5}), InvalidArgument);

  std::mt19937_64 rng(23);
  for (int i = 0; i < 50; ++i) {
    const ChannelMatrix h = random_channel(rng, 10, 4);
    const auto grid = default_alpha_grid(10);
    const AlphaSearch best = optimize_alpha(h, 30.0, grid);
    for (double a : grid) CHECK(best.evaluation.sum_rate >= rs_sum_rate(h, a, 30.0).sum_rate);
    CHECK(best.evaluation.sum_rate >= conventional_rs_rate(h, 30.0).sum_rate);
  }

  // One user: every split gives the same rate in exact arithmetic.
  ChannelMatrix one;
  one.h.resize(1, 4);
  one.h << 0.3, 0.9, 0.1, 0.5;
  one.sigma2 = 1.0;
  const auto grid = default_alpha_grid(1);
  const AlphaSearch best = optimize_alpha(one, 5.0, grid);
  const double full_private = rs_sum_rate(one, 1.0, 5.0).sum_rate;
  CHECK(best.evaluation.sum_rate == doctest::Approx(full_private).epsilon(1e-12));
  CHECK(full_private == doctest::Approx(std::log2(1.0 + 5.0 * one.h.squaredNorm())).epsilon(1e-12));
}

TEST_CASE("default alpha grid") {
  const auto g10 = default_alpha_grid(10);
  CHECK(g10.size() == 102);
  CHECK(std::is_sorted(g10.begin(), g10.end()));
  CHECK(std::find(g10.begin(), g10.end(), 10.0 / 11.0) != g10.end());
  CHECK(g10.front() == 0.0);
  CHECK(g10.back() == 1.0);
  CHECK(default_alpha_grid(1).size() == 101);  // 1/2 is already on the grid
  CHECK_THROWS_AS(default_alpha_grid(3, 1), InvalidArgument);
}

TEST_CASE("conventional rate splitting") {
  CHECK(conventional_alpha(1) == 0.5);
  const auto ps = power_split(11.0, conventional_alpha(10), 10);
  CHECK(ps.common == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ps.per_private == doctest::Approx(1.0).epsilon(1e-12));
  const ChannelMatrix cm = identity2();
  CHECK(conventional_rs_rate(cm, 10).split.alpha == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("orthogonal multiple access") {
  CHECK(oma_sum_rate(identity2(), 10) == doctest::Approx(3.459431618637297).epsilon(1e-12));

  ChannelMatrix one;
  one.h.resize(1, 2);
  one.h << 0.6, 0.8;
  one.sigma2 = 2.0;
  CHECK(oma_sum_rate(one, 4.0) == doctest::Approx(std::log2(3.0)).epsilon(1e-12));

  ChannelMatrix doubled;
  doubled.h.resize(2, 2);
  doubled.h << 0.6, 0.8, 0.6, 0.8;
  doubled.sigma2 = 2.0;
  CHECK(oma_sum_rate(doubled, 4.0) == doctest::Approx(oma_sum_rate(one, 4.0)).epsilon(1e-15));
  CHECK_THROWS_AS(oma_sum_rate(one, 0.0), InvalidArgument);
}

TEST_CASE("agreement with the 2x2 reference") {
  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> u(0.05, 1.0), a(0.0, 1.0), p(0.1, 300.0);
  for (int i = 0; i < 200; ++i) {
    const ChannelMatrix cm = random_channel(rng, 2, 2);
    const double h[2][2] = {{cm.h(0, 0), cm.h(0, 1)}, {cm.h(1, 0), cm.h(1, 1)}};
    const double pt = p(rng), alpha = a(rng);
    const RsEvaluation ev = rs_sum_rate(cm, alpha, pt);
    const ref::Rates want = ref::rs_2x2(h, cm.sigma2, pt, alpha, 2.0 * cm.sigma2 / pt);
    CHECK(ref::close(ev.rate_common, want.common, 1e-12));
    CHECK(ref::close(ev.rate_private, want.priv, 1e-12));
    CHECK(ref::close(ev.sum_rate, want.sum, 1e-12));
  }
}

TEST_CASE("SINRs are invariant to a common channel and noise scaling") {
  std::mt19937_64 rng(25);
  std::uniform_real_distribution<double> logc(-6.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const ChannelMatrix cm = random_channel(rng, 10, 4);
    const double c = std::pow(10.0, logc(rng));
    ChannelMatrix scaled = cm;
    scaled.h *= c;
    scaled.sigma2 *= c * c;
    const Precoders pre = make_precoders(cm, 20.0);
    const Precoders pre_s = make_precoders(scaled, 20.0);
    const auto ps = power_split(20.0, 0.7, 10);
    const Eigen::VectorXd a = sinr_common(cm, pre, ps), b = sinr_common(scaled, pre_s, ps);
    const Eigen::VectorXd pa = sinr_private(cm, pre, ps), pb = sinr_private(scaled, pre_s, ps);
    for (int k = 0; k < 10; ++k) {
      CHECK(std::abs(a(k) - b(k)) <= 1e-12 * a(k));
      CHECK(std::abs(pa(k) - pb(k)) <= 1e-12 * pa(k));
    }
  }
}

TEST_CASE("sum rate grows with transmit power for fixed precoders") {
  std::mt19937_64 rng(26);
  for (int i = 0; i < 50; ++i) {
    const ChannelMatrix cm = random_channel(rng, 6, 4);
    const RsKernel kernel(cm, make_precoders(cm, 10.0));
    double prev = 0.0;
    for (double pt = 0.1; pt < 1e4; pt *= 1.5) {
      const double r = kernel.evaluate(power_split(pt, 0.8, 6)).sum_rate;
      CHECK(r >= prev);
      prev = r;
    }
  }
}
