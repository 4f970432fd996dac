// SPDX-License-Identifier: Apache-2.0
#include "owcrs/scene.hpp"

#include "owcrs/error.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace owcrs {

namespace {

constexpr double kUnitTolerance = 1e-9;
// Slack on the inclusive FOV boundary so a ray built at exactly the
// half-angle is not rejected by rounding in cos().
constexpr double kFovBoundarySlack = 1e-12;

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

void require_unit(const Vec3& v, const char* what) {
  if (!(std::abs(v.norm() - 1.0) <= kUnitTolerance)) {
    throw InvalidArgument(std::string(what) + " must be a unit vector");
  }
}

// Open interval (0, 1) from the top 53 bits; independent of the standard
// library's distribution implementation.
double unit_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

void RoomConfig::validate() const {
  if (!(width_m > 0.0) || !(length_m > 0.0) || !(height_m > 0.0)) {
    throw InvalidArgument("room dimensions must be positive");
  }
  if (!(floor_height_m >= 0.0) || !(floor_height_m < height_m)) {
    throw InvalidArgument("floor_height_m must lie in [0, height_m)");
  }
}

bool RoomConfig::contains_xy(double x, double y) const {
  return x > 0.0 && x < width_m && y > 0.0 && y < length_m;
}

bool Footprint::contains(double x, double y) const {
  return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
}

Eigen::Vector2d Footprint::nearest_point(double x, double y) const {
  return {std::clamp(x, x_min, x_max), std::clamp(y, y_min, y_max)};
}

void ApLayout::validate(const RoomConfig& room) const {
  room.validate();
  if (positions.empty()) throw InvalidArgument("AP layout needs at least one AP");
  if (boresights.size() != positions.size() || footprints.size() != positions.size()) {
    throw InvalidArgument("AP layout: positions, boresights and footprints differ in length");
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (std::abs(positions[i].z() - room.height_m) > 1e-9) {
      throw InvalidArgument("AP " + std::to_string(i) + " is not on the ceiling plane");
    }
    require_unit(boresights[i], "AP boresight");
    const auto& f = footprints[i];
    if (!(f.x_min <= f.x_max) || !(f.y_min <= f.y_max)) {
      throw InvalidArgument("AP " + std::to_string(i) + " has an empty footprint");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if ((positions[i] - positions[j]).norm() == 0.0) {
        throw InvalidArgument("AP positions must be pairwise distinct");
      }
    }
  }
}

void AdrConfig::validate() const {
  if (photodiodes < 1) throw InvalidArgument("ADR needs at least one photodiode");
  if (!(fov_deg > 0.0) || !(fov_deg <= 90.0)) throw InvalidArgument("ADR fov_deg must lie in (0, 90]");
  if (!(area_m2 > 0.0)) throw InvalidArgument("ADR detection area must be positive");
  if (!(responsivity > 0.0)) throw InvalidArgument("ADR responsivity must be positive");
  if (!(filter_gain > 0.0)) throw InvalidArgument("ADR filter gain must be positive");
  if (!(tilt_deg >= 0.0) || !(tilt_deg <= 90.0)) throw InvalidArgument("ADR tilt_deg must lie in [0, 90]");
}

ApLayout default_ap_positions(const RoomConfig& room, int count) {
  room.validate();
  ApLayout layout;
  const double w = room.width_m;
  const double l = room.length_m;
  const double z = room.height_m;
  if (count == 1) {
    layout.positions.emplace_back(w / 2.0, l / 2.0, z);
    layout.footprints.push_back({0.0, w, 0.0, l});
  } else if (count == 4) {
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        layout.positions.emplace_back(w / 4.0 + i * w / 2.0, l / 4.0 + j * l / 2.0, z);
        layout.footprints.push_back({i * w / 2.0, (i + 1) * w / 2.0, j * l / 2.0, (j + 1) * l / 2.0});
      }
    }
  } else {
    throw InvalidArgument("unsupported layout: default AP positions exist for L = 1 or 4, got L = " +
                          std::to_string(count));
  }
  layout.boresights.assign(layout.positions.size(), Vec3(0.0, 0.0, -1.0));
  return layout;
}

UserDrop sample_user_positions(std::uint64_t seed, int count, const RoomConfig& room) {
  room.validate();
  if (count < 1) throw InvalidArgument("user count must be at least 1");
  std::mt19937_64 rng(seed);
  UserDrop drop;
  drop.seed = seed;
  drop.positions.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double x = room.width_m * unit_open(rng);
    const double y = room.length_m * unit_open(rng);
    drop.positions.emplace_back(x, y, room.floor_height_m);
  }
  return drop;
}

std::vector<Vec3> photodiode_normals(const AdrConfig& adr) {
  if (adr.photodiodes < 1) throw InvalidArgument("ADR needs at least one photodiode");
  std::vector<Vec3> normals;
  normals.reserve(static_cast<std::size_t>(adr.photodiodes));
  normals.emplace_back(0.0, 0.0, 1.0);
  const int off_axis = adr.photodiodes - 1;
  const double tilt = deg_to_rad(adr.tilt_deg);
  for (int k = 0; k < off_axis; ++k) {
    const double azimuth = 2.0 * std::numbers::pi * k / off_axis;
    normals.emplace_back(std::sin(tilt) * std::cos(azimuth), std::sin(tilt) * std::sin(azimuth),
                         std::cos(tilt));
  }
  return normals;
}

RayGeometry ray_geometry(const Vec3& user, const Vec3& ap) {
  if (!(ap.z() > user.z())) throw InvalidArgument("ray_geometry: user must be strictly below the AP");
  const Vec3 v = user - ap;
  RayGeometry g;
  g.d_vertical = ap.z() - user.z();
  g.r_offset = std::hypot(v.x(), v.y());
  g.incoming_dir = v.normalized();
  return g;
}

RayGeometry ray_geometry(const Vec3& user, const Vec3& ap, const Vec3& boresight) {
  require_unit(boresight, "boresight");
  const Vec3 v = user - ap;
  const double along = v.dot(boresight);
  if (!(along > 0.0)) throw InvalidArgument("ray_geometry: user must lie in front of the AP");
  RayGeometry g;
  g.d_vertical = along;
  g.r_offset = (v - along * boresight).norm();
  g.incoming_dir = v.normalized();
  return g;
}

FovResult fov_accept(const Vec3& pd_normal, const Vec3& incoming_dir, double fov_deg) {
  require_unit(pd_normal, "photodiode normal");
  require_unit(incoming_dir, "incoming direction");
  FovResult r;
  r.cos_incidence = pd_normal.dot(-incoming_dir);
  r.accepted = r.cos_incidence >= std::cos(deg_to_rad(fov_deg)) - kFovBoundarySlack;
  return r;
}

BeamLink beam_link(const Vec3& user, const ApLayout& aps, std::size_t ap_index) {
  const Vec3& ap = aps.positions.at(ap_index);
  if (!(ap.z() > user.z())) throw InvalidArgument("beam_link: user must be strictly below the AP");
  BeamLink link;
  link.incoming_dir = (user - ap).normalized();
  if (aps.illumination == Illumination::kBoresight) {
    const RayGeometry g = ray_geometry(user, ap, aps.boresights.at(ap_index));
    link.distance = g.d_vertical;
    link.r_offset = g.r_offset;
    return link;
  }
  const Eigen::Vector2d spot = aps.footprints.at(ap_index).nearest_point(user.x(), user.y());
  const Vec3 spot3(spot.x(), spot.y(), user.z());
  link.distance = (spot3 - ap).norm();
  link.r_offset = std::hypot(user.x() - spot.x(), user.y() - spot.y());
  return link;
}

}  // namespace owcrs
