// SPDX-License-Identifier: Apache-2.0
#include "owcrs/channel.hpp"

#include "owcrs/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace owcrs {

void NoiseParams::validate() const {
  if (!(psd_a_per_rthz > 0.0)) throw InvalidArgument("noise spectral density must be positive");
  if (!(bandwidth_hz > 0.0)) throw InvalidArgument("noise bandwidth must be positive");
  if (!(electron_charge_c > 0.0)) throw InvalidArgument("electron charge must be positive");
}

double photodiode_radius(const AdrConfig& adr) {
  adr.validate();
  return std::sqrt(adr.photodiode_area_m2() / std::numbers::pi);
}

LinkGain link_gain(const Vec3& user, const ApLayout& aps, std::size_t ap_index, const AdrConfig& adr,
                   const VcselParams& vcsel) {
  vcsel.validate();
  const BeamLink link = beam_link(user, aps, ap_index);
  const double w_d = beam_radius(vcsel, link.distance);
  const double r_m = photodiode_radius(adr);

  LinkGain best;
  const auto normals = photodiode_normals(adr);
  for (std::size_t m = 0; m < normals.size(); ++m) {
    const FovResult fov = fov_accept(normals[m], link.incoming_dir, adr.fov_deg);
    if (!fov.accepted) continue;
    const double cos_inc = std::clamp(fov.cos_incidence, 0.0, 1.0);
    const double p_rx = received_power_offaxis(vcsel, link.r_offset, r_m, w_d, cos_inc);
    const double gain = adr.responsivity * adr.filter_gain * p_rx / vcsel.power_w;
    if (gain > best.gain || best.photodiode < 0) {
      best.gain = gain;
      best.received_power_w = p_rx;
      best.photodiode = static_cast<int>(m);
    }
  }
  return best;
}

double channel_gain(const Vec3& user, const ApLayout& aps, std::size_t ap_index, const AdrConfig& adr,
                    const VcselParams& vcsel) {
  return link_gain(user, aps, ap_index, adr, vcsel).gain;
}

double noise_variance(const NoiseParams& noise, double received_power_w, double responsivity) {
  noise.validate();
  if (!(received_power_w >= 0.0)) throw InvalidArgument("received power must be >= 0");
  const double thermal = noise.psd_a_per_rthz * noise.psd_a_per_rthz * noise.bandwidth_hz;
  if (!noise.include_shot) return thermal;
  const double shot = 2.0 * noise.electron_charge_c * responsivity * received_power_w * noise.bandwidth_hz;
  return thermal + shot;
}

ChannelMatrix build_channel_matrix(const Scene& scene, const AdrConfig& adr, const VcselParams& vcsel,
                                   const NoiseParams& noise) {
  scene.aps.validate(scene.room);
  adr.validate();
  const auto k_users = static_cast<Eigen::Index>(scene.users.size());
  const auto l_aps = static_cast<Eigen::Index>(scene.aps.size());
  if (k_users < 1) throw InvalidArgument("channel needs at least one user");

  ChannelMatrix cm;
  cm.h.resize(k_users, l_aps);
  cm.sigma2 = 0.0;
  for (Eigen::Index k = 0; k < k_users; ++k) {
    double total_rx = 0.0;
    for (Eigen::Index l = 0; l < l_aps; ++l) {
      const LinkGain g = link_gain(scene.users.positions[static_cast<std::size_t>(k)], scene.aps,
                                   static_cast<std::size_t>(l), adr, vcsel);
      cm.h(k, l) = g.gain;
      total_rx += g.received_power_w;
    }
    cm.sigma2 = std::max(cm.sigma2, noise_variance(noise, total_rx, adr.responsivity));
  }
  cm.scale = 1.0;
  return cm;
}

ChannelMatrix normalize_channel(const ChannelMatrix& cm) {
  const double g_max = cm.h.size() == 0 ? 0.0 : cm.h.rowwise().norm().maxCoeff();
  if (!(g_max > 0.0)) throw InvalidArgument("normalize_channel: channel matrix is all zero");
  ChannelMatrix out;
  out.h = cm.h / g_max;
  out.sigma2 = 1.0;
  out.scale = g_max;
  return out;
}

}  // namespace owcrs
