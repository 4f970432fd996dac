// SPDX-License-Identifier: Apache-2.0
#include "owcrs/oracle.hpp"

#include "owcrs/beam_optics.hpp"
#include "owcrs/channel.hpp"
#include "owcrs/rsma.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace owcrs::oracle {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr unsigned kMaxDepth = 12;
constexpr double kTol = 1e-11;

std::string sci(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

}  // namespace

double disc_capture(double power_w, double beam_radius_m, double aperture_radius_m, double offset_m) {
  const double w2 = beam_radius_m * beam_radius_m;
  const double peak = 2.0 * power_w / (std::numbers::pi * w2);
  auto radial = [&](double phi) {
    auto f = [&](double rho) {
      const double r2 = offset_m * offset_m + rho * rho + 2.0 * offset_m * rho * std::cos(phi);
      return peak * std::exp(-2.0 * r2 / w2) * rho;
    };
    return gauss_kronrod<double, 31>::integrate(f, 0.0, aperture_radius_m, kMaxDepth, kTol);
  };
  return gauss_kronrod<double, 31>::integrate(radial, 0.0, 2.0 * std::numbers::pi, kMaxDepth, kTol);
}

std::vector<Check> validation_checks() {
  std::vector<Check> checks;
  const double r_m = std::sqrt(5e-6 / std::numbers::pi);
  const double d = 2.15;

  for (const double waist_um : {5.0, 10.0, 20.0, 30.0}) {
    VcselParams p;
    p.waist_m = waist_um * 1e-6;
    p.power_w = 1.0;
    const double w_d = beam_radius(p, d);
    const double closed = received_power_centered(p, r_m, w_d);
    const double quad = disc_capture(1.0, w_d, r_m, 0.0);
    const double rel = std::abs(closed - quad) / quad;
    checks.push_back({"quadrature centred capture W0=" + std::to_string(int(waist_um)) + "um", rel <= 1e-9,
                      "closed=" + sci(closed) + " quad=" + sci(quad) + " rel=" + sci(rel)});
  }

  {
    VcselParams p;
    p.power_w = 1.0;
    const double w_d = beam_radius(p, d);
    const double approx = received_power_offaxis(p, w_d, r_m, w_d, 1.0);
    const double quad = disc_capture(1.0, w_d, r_m, w_d);
    const double rel = std::abs(approx - quad) / quad;
    checks.push_back({"quadrature off-axis capture r=W_d", rel <= 1e-2,
                      "model=" + sci(approx) + " quad=" + sci(quad) + " rel=" + sci(rel)});
  }

  {
    VcselParams p;
    const double got = rayleigh_distance(p);
    const double hand = std::numbers::pi * 25e-12 / 8.5e-7;
    const double rel = std::abs(got - hand) / hand;
    checks.push_back({"rayleigh distance W0=5um", rel <= 1e-6, "d_Ra=" + sci(got)});
  }

  {
    std::mt19937_64 rng(20240917);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double worst = 0.0;
    bool finite = true;
    for (int trial = 0; trial < 100; ++trial) {
      ChannelMatrix cm;
      cm.h.resize(4, 4);
      for (Eigen::Index i = 0; i < 16; ++i) cm.h.data()[i] = u(rng);
      const Eigen::MatrixXd eff = cm.h * private_precoders(cm, 0.0);
      for (int k = 0; k < 4; ++k) {
        for (int j = 0; j < 4; ++j) {
          if (j == k) continue;
          const double r = std::abs(eff(k, j)) / std::abs(eff(k, k));
          finite = finite && std::isfinite(r);
          worst = std::max(worst, r);
        }
      }
    }
    checks.push_back({"zero-forcing cross terms (100 random 4x4)", finite && worst <= 1e-9,
                      "worst off/diag=" + sci(worst)});
  }

  {
    ChannelMatrix cm;
    cm.h = Eigen::MatrixXd::Identity(2, 2);
    cm.sigma2 = 1.0;
    const Precoders pre = make_precoders(cm, 10.0, 0.0);
    const RsEvaluation ev = RsKernel(cm, pre).evaluate(power_split(10.0, 0.5, 2));
    checks.push_back({"identity fixture R_RS", std::abs(ev.sum_rate - 4.3923) <= 1e-4,
                      "R_c=" + sci(ev.rate_common) + " R_p=" + sci(ev.rate_private) + " R_RS=" + sci(ev.sum_rate)});
  }
  return checks;
}

}  // namespace owcrs::oracle
