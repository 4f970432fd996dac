// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "owcrs/beam_optics.hpp"
#include "owcrs/scene.hpp"

#include <Eigen/Core>

#include <cstddef>

namespace owcrs {

struct NoiseParams {
  double psd_a_per_rthz = 4.47e-12;  // receiver noise current spectral density
  double bandwidth_hz = 5e9;
  bool include_shot = true;
  double electron_charge_c = 1.602176634e-19;

  void validate() const;
};

/// K x L electrical gains (A per unit transmitted signal) and the noise
/// variance seen by the receivers. Row k is user k's channel vector.
struct ChannelMatrix {
  Eigen::MatrixXd h;
  double sigma2 = 1.0;
  double scale = 1.0;  // divisor applied by normalize_channel

  Eigen::Index users() const { return h.rows(); }
  Eigen::Index aps() const { return h.cols(); }
};

/// Radius of one circular photodiode of area A_rec / M.
double photodiode_radius(const AdrConfig& adr);

struct LinkGain {
  double gain = 0.0;              // electrical gain per unit transmit signal
  double received_power_w = 0.0;  // optical power at the selected photodiode
  int photodiode = -1;            // selected photodiode, -1 if none sees the AP
};

/// Select-best photodiode link from AP `ap_index` to `user`.
LinkGain link_gain(const Vec3& user, const ApLayout& aps, std::size_t ap_index, const AdrConfig& adr,
                   const VcselParams& vcsel);

double channel_gain(const Vec3& user, const ApLayout& aps, std::size_t ap_index, const AdrConfig& adr,
                    const VcselParams& vcsel);

/// Thermal noise plus, optionally, shot noise of the received optical power.
double noise_variance(const NoiseParams& noise, double received_power_w, double responsivity);

/// sigma2 is the worst (largest) per-user variance, each user's shot noise
/// driven by its aggregate received power over all APs.
ChannelMatrix build_channel_matrix(const Scene& scene, const AdrConfig& adr, const VcselParams& vcsel,
                                   const NoiseParams& noise);

/// Divides h by its largest row norm and sets sigma2 = 1, so that transmit
/// SNR P_T / sigma2 equals P_T for the strongest user. Throws on an all-zero
/// matrix.
ChannelMatrix normalize_channel(const ChannelMatrix& cm);

}  // namespace owcrs
