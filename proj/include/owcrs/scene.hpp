// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <vector>

namespace owcrs {

using Vec3 = Eigen::Vector3d;

/// Room with its corner at the origin; z is height above ground.
struct RoomConfig {
  double width_m = 5.0;         // x extent
  double length_m = 5.0;        // y extent
  double height_m = 3.0;        // ceiling plane
  double floor_height_m = 0.85; // communication floor

  void validate() const;
  bool contains_xy(double x, double y) const;
};

/// Axis-aligned floor rectangle that one AP's VCSEL array can put a beam spot on.
struct Footprint {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  bool contains(double x, double y) const;
  Eigen::Vector2d nearest_point(double x, double y) const;
};

enum class Illumination {
  // Each AP is a VCSEL array whose beam spots tile its footprint; the element
  // whose spot is nearest to a user serves that user.
  kCellArray,
  // One Gaussian beam per AP, fixed along the AP boresight.
  kBoresight,
};

struct ApLayout {
  std::vector<Vec3> positions;
  std::vector<Vec3> boresights;    // unit vectors, default straight down
  std::vector<Footprint> footprints;
  Illumination illumination = Illumination::kCellArray;

  std::size_t size() const { return positions.size(); }
  void validate(const RoomConfig& room) const;
};

struct UserDrop {
  std::vector<Vec3> positions;
  std::uint64_t seed = 0;

  std::size_t size() const { return positions.size(); }
};

/// Angle-diversity receiver: one zenith photodiode plus M-1 tilted ones.
struct AdrConfig {
  int photodiodes = 4;
  double area_m2 = 20e-6;       // total detection area A_rec
  double fov_deg = 45.0;        // half-angle field of view
  double responsivity = 0.4;    // A/W
  double tilt_deg = 45.0;       // elevation tilt of the off-axis photodiodes
  double filter_gain = 1.0;

  double photodiode_area_m2() const { return area_m2 / photodiodes; }
  void validate() const;
};

struct Scene {
  RoomConfig room;
  ApLayout aps;
  UserDrop users;
};

/// Symmetric ceiling layouts. L = 1 is the room centre, L = 4 the 2x2 grid at
/// the quarter points; each AP covers its own cell of the floor. Any other L
/// throws InvalidArgument ("unsupported layout").
ApLayout default_ap_positions(const RoomConfig& room, int count);

/// K users i.i.d. uniform over the floor rectangle, strictly inside it, at
/// z = floor_height_m. Bit-for-bit reproducible for a given seed on any
/// platform.
UserDrop sample_user_positions(std::uint64_t seed, int count, const RoomConfig& room);

std::vector<Vec3> photodiode_normals(const AdrConfig& adr);

struct RayGeometry {
  double d_vertical = 0.0;  // distance along the (downward) boresight
  double r_offset = 0.0;    // radial distance from the beam axis
  Vec3 incoming_dir;        // unit vector from AP to user
};

/// Geometry of a user relative to a straight-down AP. Throws if the user is
/// not strictly below the AP.
RayGeometry ray_geometry(const Vec3& user, const Vec3& ap);

/// Same, for an arbitrary unit boresight.
RayGeometry ray_geometry(const Vec3& user, const Vec3& ap, const Vec3& boresight);

struct FovResult {
  bool accepted = false;
  double cos_incidence = 0.0;
};

/// Boundary inclusive: a ray exactly at the FOV half-angle is accepted.
FovResult fov_accept(const Vec3& pd_normal, const Vec3& incoming_dir, double fov_deg);

/// Beam geometry for the link from AP `ap_index` to a user under the
/// layout's illumination model.
struct BeamLink {
  double distance = 0.0;  // propagation distance from emitter to the spot plane
  double r_offset = 0.0;  // user distance from the serving spot centre
  Vec3 incoming_dir;      // unit vector from AP to user
};

BeamLink beam_link(const Vec3& user, const ApLayout& aps, std::size_t ap_index);

}  // namespace owcrs
