// SPDX-License-Identifier: Apache-2.0
#include "owcrs/beam_optics.hpp"

#include "owcrs/error.hpp"

#include <cmath>
#include <numbers>

namespace owcrs {

void VcselParams::validate() const {
  if (!(waist_m > 0.0)) throw InvalidArgument("VCSEL beam waist must be positive");
  if (!(wavelength_m > 0.0)) throw InvalidArgument("VCSEL wavelength must be positive");
  if (!(refractive_index >= 1.0)) throw InvalidArgument("refractive index must be >= 1");
  if (!(power_w > 0.0)) throw InvalidArgument("VCSEL optical power must be positive");
  if (!(bandwidth_hz > 0.0)) throw InvalidArgument("VCSEL bandwidth must be positive");
}

double rayleigh_distance(const VcselParams& p) {
  p.validate();
  return std::numbers::pi * p.waist_m * p.waist_m * p.refractive_index / p.wavelength_m;
}

double beam_radius(const VcselParams& p, double distance_m) {
  if (!(distance_m >= 0.0)) throw InvalidArgument("beam_radius: distance must be >= 0");
  const double ratio = distance_m / rayleigh_distance(p);
  return p.waist_m * std::sqrt(1.0 + ratio * ratio);
}

BeamAtPlane beam_at(const VcselParams& p, double distance_m) {
  return {beam_radius(p, distance_m), distance_m, rayleigh_distance(p)};
}

double intensity(const VcselParams& p, double r_m, double beam_radius_m) {
  if (!(beam_radius_m > 0.0)) throw InvalidArgument("intensity: beam radius must be positive");
  if (!(r_m >= 0.0)) throw InvalidArgument("intensity: radial distance must be >= 0");
  const double w2 = beam_radius_m * beam_radius_m;
  return 2.0 * p.power_w / (std::numbers::pi * w2) * std::exp(-2.0 * r_m * r_m / w2);
}

double received_power_centered(const VcselParams& p, double aperture_radius_m, double beam_radius_m) {
  if (!(beam_radius_m > 0.0)) throw InvalidArgument("received_power_centered: beam radius must be positive");
  if (!(aperture_radius_m >= 0.0)) throw InvalidArgument("received_power_centered: aperture radius must be >= 0");
  // expm1 keeps full precision when the aperture is tiny against the spot.
  const double x = 2.0 * aperture_radius_m * aperture_radius_m / (beam_radius_m * beam_radius_m);
  return -p.power_w * std::expm1(-x);
}

double received_power_offaxis(const VcselParams& p, double r_offset_m, double aperture_radius_m,
                              double beam_radius_m, double cos_incidence) {
  if (!(r_offset_m >= 0.0)) throw InvalidArgument("received_power_offaxis: offset must be >= 0");
  if (!(aperture_radius_m >= 0.0)) throw InvalidArgument("received_power_offaxis: aperture radius must be >= 0");
  if (!(cos_incidence >= 0.0) || !(cos_incidence <= 1.0)) {
    throw InvalidArgument("received_power_offaxis: cos_incidence must lie in [0, 1]");
  }
  // Centred capture attenuated by the Gaussian profile at the aperture centre;
  // exact at zero offset and equal to I(r) * area to first order in the aperture.
  const double fall_off = std::exp(-2.0 * r_offset_m * r_offset_m / (beam_radius_m * beam_radius_m));
  return received_power_centered(p, aperture_radius_m, beam_radius_m) * fall_off * cos_incidence;
}

}  // namespace owcrs
