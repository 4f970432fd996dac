// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace owcrs {

/// One VCSEL modelled as a fundamental-mode Gaussian emitter.
struct VcselParams {
  double waist_m = 5e-6;          // W_0
  double wavelength_m = 850e-9;
  double refractive_index = 1.0;  // air
  double power_w = 10e-3;         // optical power of the serving beam
  double bandwidth_hz = 5e9;

  void validate() const;
};

struct BeamAtPlane {
  double radius_m = 0.0;    // W_d
  double distance_m = 0.0;  // d
  double rayleigh_m = 0.0;  // d_Ra
};

/// pi * W_0^2 * n / lambda.
double rayleigh_distance(const VcselParams& p);

/// W_0 * sqrt(1 + (d / d_Ra)^2). Throws on negative d.
double beam_radius(const VcselParams& p, double distance_m);

BeamAtPlane beam_at(const VcselParams& p, double distance_m);

/// Gaussian irradiance (W/m^2) at radial distance r for a beam of radius W_d.
double intensity(const VcselParams& p, double r_m, double beam_radius_m);

/// Power captured by a circular aperture of radius r_m centred on the beam:
/// P_t * (1 - exp(-2 r_m^2 / W_d^2)).
double received_power_centered(const VcselParams& p, double aperture_radius_m, double beam_radius_m);

/// Off-axis capture: the centred capture scaled by the relative irradiance at
/// the aperture centre and by the projected-area factor. Exact at zero offset;
/// off axis it is accurate while the aperture is small against the spot.
double received_power_offaxis(const VcselParams& p, double r_offset_m, double aperture_radius_m,
                              double beam_radius_m, double cos_incidence);

}  // namespace owcrs
