// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace owcrs::oracle {

/// Power of a Gaussian beam (total power `power_w`, radius W_d) falling on a
/// disc of radius `aperture_radius_m` whose centre sits `offset_m` from the
/// beam axis. Nested adaptive Gauss-Kronrod over the disc in polar
/// coordinates; shares no code with the closed forms in beam_optics.
double disc_capture(double power_w, double beam_radius_m, double aperture_radius_m, double offset_m);

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Independent numerical checks run by `owcrs validate`.
std::vector<Check> validation_checks();

}  // namespace owcrs::oracle
