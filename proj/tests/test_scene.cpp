// SPDX-License-Identifier: Apache-2.0
#include "owcrs/error.hpp"
#include "owcrs/scene.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace owcrs;

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;

bool has_point(const std::vector<Vec3>& pts, const Vec3& p) {
  return std::any_of(pts.begin(), pts.end(), [&](const Vec3& q) { return (q - p).norm() < 1e-12; });
}
}  // namespace

TEST_CASE("default AP layouts") {
  const RoomConfig room;
  const ApLayout one = default_ap_positions(room, 1);
  REQUIRE(one.size() == 1);
  CHECK((one.positions[0] - Vec3(2.5, 2.5, 3.0)).norm() == 0.0);

  const ApLayout four = default_ap_positions(room, 4);
  REQUIRE(four.size() == 4);
  for (const Vec3& p : {Vec3(1.25, 1.25, 3), Vec3(1.25, 3.75, 3), Vec3(3.75, 1.25, 3), Vec3(3.75, 3.75, 3)}) {
    CHECK(has_point(four.positions, p));
  }
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(four.footprints[i].contains(four.positions[i].x(), four.positions[i].y()));
    CHECK(four.boresights[i].isApprox(Vec3(0, 0, -1)));
  }
  CHECK_NOTHROW(four.validate(room));

  RoomConfig flat = room;
  flat.height_m = 0.0;
  CHECK_THROWS_AS(default_ap_positions(flat, 4), InvalidArgument);
  CHECK_THROWS_WITH(default_ap_positions(room, 3), doctest::Contains("unsupported layout"));
}

TEST_CASE("AP layout validation") {
  const RoomConfig room;
  ApLayout layout = default_ap_positions(room, 4);
  layout.positions[1] = layout.positions[0];
  CHECK_THROWS_AS(layout.validate(room), InvalidArgument);
  layout = default_ap_positions(room, 4);
  layout.positions[2].z() = 2.9;
  CHECK_THROWS_AS(layout.validate(room), InvalidArgument);
  CHECK_THROWS_AS(ApLayout{}.validate(room), InvalidArgument);
}

TEST_CASE("user sampling is deterministic and stays on the floor") {
  const RoomConfig room;
  const UserDrop a = sample_user_positions(7, 10, room);
  const UserDrop b = sample_user_positions(7, 10, room);
  REQUIRE(a.size() == 10);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a.positions[k] == b.positions[k]);
    CHECK(a.positions[k].z() == 0.85);
    CHECK(room.contains_xy(a.positions[k].x(), a.positions[k].y()));
  }
  CHECK(sample_user_positions(8, 10, room).positions[0] != a.positions[0]);

  const UserDrop many = sample_user_positions(7, 10000, room);
  double mean_x = 0.0;
  for (const auto& p : many.positions) {
    mean_x += p.x();
    CHECK(room.contains_xy(p.x(), p.y()));
  }
  mean_x /= 10000.0;
  CHECK(std::abs(mean_x - 2.5) <= 0.05);

  CHECK_THROWS_AS(sample_user_positions(1, 0, room), InvalidArgument);
}

TEST_CASE("photodiode normals") {
  AdrConfig adr;
  adr.photodiodes = 1;
  auto n = photodiode_normals(adr);
  REQUIRE(n.size() == 1);
  CHECK(n[0] == Vec3(0, 0, 1));

  adr.photodiodes = 4;
  adr.tilt_deg = 45.0;
  n = photodiode_normals(adr);
  REQUIRE(n.size() == 4);
  CHECK(n[0] == Vec3(0, 0, 1));
  for (int k = 1; k < 4; ++k) {
    CHECK(n[k].z() == doctest::Approx(0.70710678118654752).epsilon(1e-12));
    const double az = std::atan2(n[k].y(), n[k].x());
    const double want = (k - 1) * 120.0 * kDeg;
    CHECK(std::remainder(az - want, 2 * std::numbers::pi) == doctest::Approx(0.0).epsilon(1e-12));
  }

  adr.photodiodes = 7;
  adr.tilt_deg = 30.0;
  n = photodiode_normals(adr);
  for (const auto& v : n) CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
  for (int k = 1; k < 7; ++k) {
    const int next = k == 6 ? 1 : k + 1;
    const double a0 = std::atan2(n[k].y(), n[k].x());
    const double a1 = std::atan2(n[next].y(), n[next].x());
    CHECK(std::abs(std::remainder(a1 - a0 - 2 * std::numbers::pi / 6, 2 * std::numbers::pi)) <= 1e-12);
  }
}

TEST_CASE("ray geometry") {
  auto g = ray_geometry(Vec3(2.5, 2.5, 0.85), Vec3(2.5, 2.5, 3.0));
  CHECK(g.d_vertical == doctest::Approx(2.15));
  CHECK(g.r_offset == 0.0);
  CHECK(g.incoming_dir.isApprox(Vec3(0, 0, -1)));

  g = ray_geometry(Vec3(1.25, 2.25, 0.85), Vec3(1.25, 1.25, 3.0));
  CHECK(g.d_vertical == doctest::Approx(2.15));
  CHECK(g.r_offset == doctest::Approx(1.0));
  CHECK(std::abs(g.incoming_dir.norm() - 1.0) < 1e-12);

  CHECK_THROWS_AS(ray_geometry(Vec3(1, 1, 3.0), Vec3(2, 2, 3.0)), InvalidArgument);
  CHECK_THROWS_AS(ray_geometry(Vec3(1, 1, 3.5), Vec3(2, 2, 3.0)), InvalidArgument);

  // r_offset is zero exactly when the user sits under the AP.
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int i = 0; i < 200; ++i) {
    const Vec3 ap(u(rng), u(rng), 3.0);
    CHECK(ray_geometry(Vec3(ap.x(), ap.y(), 0.85), ap).r_offset == 0.0);
    const Vec3 user(u(rng), u(rng), 0.85);
    CHECK(ray_geometry(user, ap).r_offset > 0.0);
  }
}

TEST_CASE("field of view acceptance") {
  const Vec3 up(0, 0, 1);
  auto r = fov_accept(up, Vec3(0, 0, -1), 45.0);
  CHECK(r.accepted);
  CHECK(r.cos_incidence == doctest::Approx(1.0));

  r = fov_accept(up, Vec3(std::sin(60 * kDeg), 0, -std::cos(60 * kDeg)), 45.0);
  CHECK_FALSE(r.accepted);
  CHECK(r.cos_incidence == doctest::Approx(0.5));

  r = fov_accept(up, Vec3(std::sin(45 * kDeg), 0, -std::cos(45 * kDeg)), 45.0);
  CHECK(r.accepted);
  CHECK(r.cos_incidence == doctest::Approx(0.70710678118654752));

  CHECK_THROWS_AS(fov_accept(Vec3(0, 0, 2), Vec3(0, 0, -1), 45.0), InvalidArgument);
  CHECK_THROWS_AS(fov_accept(up, Vec3(0, 0, -1.00001), 45.0), InvalidArgument);

  // Shrinking the incidence angle never turns an accepted ray into a rejected one.
  for (int deg = 0; deg <= 90; ++deg) {
    const auto outer = fov_accept(up, Vec3(std::sin(deg * kDeg), 0, -std::cos(deg * kDeg)), 40.0);
    for (int smaller = 0; smaller < deg; ++smaller) {
      const auto inner = fov_accept(up, Vec3(std::sin(smaller * kDeg), 0, -std::cos(smaller * kDeg)), 40.0);
      if (outer.accepted) CHECK(inner.accepted);
    }
  }
}

TEST_CASE("beam link geometry") {
  const RoomConfig room;
  ApLayout layout = default_ap_positions(room, 4);

  // Inside AP 0's cell the serving spot is centred on the user.
  const Vec3 inside(0.4, 2.0, 0.85);
  auto link = beam_link(inside, layout, 0);
  CHECK(link.r_offset == 0.0);
  CHECK(link.distance == doctest::Approx((inside - layout.positions[0]).norm()));

  // Outside the cell the nearest spot sits on the cell edge.
  const Vec3 outside(3.0, 1.0, 0.85);
  link = beam_link(outside, layout, 0);
  CHECK(link.r_offset == doctest::Approx(0.5));
  CHECK(link.distance == doctest::Approx((Vec3(2.5, 1.0, 0.85) - layout.positions[0]).norm()));
  CHECK(link.incoming_dir.isApprox((outside - layout.positions[0]).normalized()));

  layout.illumination = Illumination::kBoresight;
  link = beam_link(outside, layout, 0);
  const auto g = ray_geometry(outside, layout.positions[0]);
  CHECK(link.distance == doctest::Approx(g.d_vertical));
  CHECK(link.r_offset == doctest::Approx(g.r_offset));
}
