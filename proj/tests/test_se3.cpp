// Copyright 2026 The Skillkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "skillkit/se3.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "skillkit/rng.hpp"

using namespace skillkit;

namespace {

Pose random_pose(Rng& rng, double pos_scale = 1.0) {
  Vec3 p(rng.uniform(-pos_scale, pos_scale), rng.uniform(-pos_scale, pos_scale),
         rng.uniform(-pos_scale, pos_scale));
  // Uniform-ish random quaternion from four normals.
  Quat q(rng.normal(), rng.normal(), rng.normal(), rng.normal());
  return Pose(p, q);
}

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("compose identity and inverse laws") {
  Rng rng(101);
  Pose p = random_pose(rng);
  CHECK(pose_distance(compose(Pose::identity(), p), p) < 1e-12);
  CHECK(pose_distance(compose(p, Pose::identity()), p) < 1e-12);
  CHECK(approx_equal(compose(p, invert(p)), Pose::identity(), 1e-9));
  CHECK(approx_equal(compose(invert(p), p), Pose::identity(), 1e-9));

  Pose t = compose(Pose::translation(1, 0, 0), Pose::translation(0, 2, 0));
  CHECK(pose_distance(t, Pose::translation(1, 2, 0)) < 1e-12);
}

TEST_CASE("compose is associative") {
  Rng rng(102);
  for (int i = 0; i < 1000; ++i) {
    Pose a = random_pose(rng), b = random_pose(rng), c = random_pose(rng);
    CHECK(approx_equal(compose(compose(a, b), c), compose(a, compose(b, c)),
                       1e-9));
  }
}

TEST_CASE("invert matches quaternion conjugate oracle") {
  CHECK(pose_distance(invert(Pose::identity()), Pose::identity()) < 1e-12);
  CHECK(pose_distance(invert(Pose::translation(1, 2, 3)),
                      Pose::translation(-1, -2, -3)) < 1e-12);
  // rotZ(90 deg)^-1 == rotZ(-90 deg); oracle: conjugate of the quaternion.
  Pose r = Pose::rot_z(kPi / 2);
  Pose expected(Vec3::Zero(), r.orientation.conjugate());
  CHECK(pose_distance(invert(r), expected) < 1e-12);
  CHECK(pose_distance(invert(r), Pose::rot_z(-kPi / 2)) < 1e-12);
}

TEST_CASE("pose_distance examples") {
  Rng rng(103);
  Pose p = random_pose(rng);
  CHECK(pose_distance(p, p) == 0.0);

  CHECK(pose_distance(Pose::identity(), Pose::translation(1, 0, 0)) ==
        Catch::Approx(1.0));

  // Identity vs rotZ(90 deg): quaternion dot = cos(45 deg),
  // acos = pi/4, normalized by pi -> 0.25.
  CHECK(pose_distance(Pose::identity(), Pose::rot_z(kPi / 2)) ==
        Catch::Approx(0.25).margin(1e-12));

  // Max-form variant on the same pair.
  CHECK(pose_distance_max(Pose::identity(), Pose::rot_z(kPi / 2)) ==
        Catch::Approx(0.25).margin(1e-12));
  Pose both = compose(Pose::translation(0.5, 0, 0), Pose::rot_z(kPi / 2));
  CHECK(pose_distance(Pose::identity(), both) ==
        Catch::Approx(0.75).margin(1e-12));
  CHECK(pose_distance_max(Pose::identity(), both) ==
        Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("pose_distance is a pseudometric") {
  Rng rng(104);
  for (int i = 0; i < 1000; ++i) {
    Pose a = random_pose(rng), b = random_pose(rng), c = random_pose(rng);
    double dab = pose_distance(a, b);
    double dba = pose_distance(b, a);
    CHECK(dab == Catch::Approx(dba).margin(1e-12));
    CHECK(dab >= 0.0);
    // Triangle inequality with floating slack.
    CHECK(dab <= pose_distance(a, c) + pose_distance(c, b) + 1e-9);
  }
  // Identity of indiscernibles up to quaternion sign.
  Pose a = random_pose(rng);
  Pose flipped(a.position, Quat(-a.orientation.w(), -a.orientation.x(),
                                -a.orientation.y(), -a.orientation.z()));
  CHECK(pose_distance(a, flipped) < 1e-12);
}

TEST_CASE("axis-angle round trips") {
  CHECK(to_axis_angle(Pose::identity()).norm() == 0.0);

  AxisAngle6 v = to_axis_angle(Pose::rot_z(kPi / 2));
  CHECK(v.head<3>().norm() == 0.0);
  CHECK(v[3] == Catch::Approx(0.0).margin(1e-12));
  CHECK(v[4] == Catch::Approx(0.0).margin(1e-12));
  CHECK(v[5] == Catch::Approx(kPi / 2).margin(1e-12));

  Rng rng(105);
  for (int i = 0; i < 1000; ++i) {
    Pose p = random_pose(rng);
    Pose q = from_axis_angle(to_axis_angle(p));
    CHECK(approx_equal(p, q, 1e-9));
  }

  // Canonical rotation sub-vector never exceeds pi in magnitude.
  for (int i = 0; i < 1000; ++i) {
    Pose p = random_pose(rng);
    CHECK(to_axis_angle(p).tail<3>().norm() <= kPi + 1e-12);
  }

  // Angle-pi rotations survive the round trip up to pose equality.
  Pose half_turn(Vec3::Zero(), Quat(0.0, std::sqrt(0.5), std::sqrt(0.5), 0.0));
  CHECK(approx_equal(from_axis_angle(to_axis_angle(half_turn)), half_turn,
                     1e-9));
}

TEST_CASE("interpolate_pose endpoints and midpoint") {
  Rng rng(106);
  Pose a = random_pose(rng), b = random_pose(rng);
  CHECK(pose_distance(interpolate_pose(a, b, 0.0), a) < 1e-12);
  CHECK(approx_equal(interpolate_pose(a, b, 1.0), b, 1e-9));

  Pose t0 = Pose::translation(0, 0, 0), t1 = Pose::translation(2, 4, 6);
  CHECK(pose_distance(interpolate_pose(t0, t1, 0.5),
                      Pose::translation(1, 2, 3)) < 1e-12);

  // Closed-form slerp oracle: halfway between identity and rotZ(90) is
  // rotZ(45).
  Pose mid = interpolate_pose(Pose::identity(), Pose::rot_z(kPi / 2), 0.5);
  CHECK(approx_equal(mid, Pose::rot_z(kPi / 4), 1e-9));

  // Shortest arc: interpolation between q and -q stays put.
  Pose c = random_pose(rng);
  Pose c_neg(c.position, Quat(-c.orientation.w(), -c.orientation.x(),
                              -c.orientation.y(), -c.orientation.z()));
  CHECK(approx_equal(interpolate_pose(c, c_neg, 0.37), c, 1e-9));
}

TEST_CASE("add_pose_noise basics") {
  Rng rng(107);
  Pose p = random_pose(rng);
  Rng noise_rng(55);
  CHECK(pose_distance(add_pose_noise(p, 0.0, noise_rng), p) == 0.0);

  Rng r1(55), r2(55);
  Pose n1 = add_pose_noise(p, 0.02, r1);
  Pose n2 = add_pose_noise(p, 0.02, r2);
  CHECK(pose_distance(n1, p) > 0.0);
  CHECK(pose_distance(n1, n2) == 0.0);  // deterministic given the seed
}

TEST_CASE("add_pose_noise sample statistics") {
  // Monte-Carlo check of the sampler: per-component std of the position
  // noise at sigma = 0.01 over 10,000 samples.
  const double sigma = 0.01;
  const int n = 10000;
  Pose base = Pose::translation(0.1, -0.2, 0.3);
  Rng rng(7);
  Vec3 sum = Vec3::Zero(), sumsq = Vec3::Zero();
  AxisAngle6 mean6 = AxisAngle6::Zero();
  for (int i = 0; i < n; ++i) {
    Pose noised = add_pose_noise(base, sigma, rng);
    Vec3 d = noised.position - base.position;
    sum += d;
    sumsq += d.cwiseProduct(d);
    mean6 += to_axis_angle(noised) / n;
  }
  for (int k = 0; k < 3; ++k) {
    double var = sumsq[k] / n - (sum[k] / n) * (sum[k] / n);
    double stddev = std::sqrt(var);
    CHECK(stddev > 0.009);
    CHECK(stddev < 0.011);
  }
  // Expectation of the noised 6-vector matches the original within MC error.
  AxisAngle6 base6 = to_axis_angle(base);
  for (int k = 0; k < 6; ++k) {
    CHECK(mean6[k] == Catch::Approx(base6[k]).margin(4 * sigma / std::sqrt(n) +
                                                     1e-6));
  }
}

TEST_CASE("quaternion canonicalization") {
  Pose p(Vec3::Zero(), Quat(-0.5, 0.5, 0.5, 0.5));
  CHECK(p.orientation.w() == Catch::Approx(0.5));
  CHECK(p.orientation.x() == Catch::Approx(-0.5));

  // w == 0: first nonzero component becomes nonnegative.
  Pose q(Vec3::Zero(), Quat(0.0, -std::sqrt(0.5), 0.0, -std::sqrt(0.5)));
  CHECK(q.orientation.x() == Catch::Approx(std::sqrt(0.5)));
  CHECK(q.orientation.z() == Catch::Approx(std::sqrt(0.5)));

  Rng rng(108);
  for (int i = 0; i < 100; ++i) {
    Pose r = random_pose(rng);
    CHECK(std::abs(r.orientation.norm() - 1.0) < 1e-9);
    CHECK(r.orientation.w() >= 0.0);
  }
}

TEST_CASE("pose serialization array round trip") {
  Rng rng(109);
  Pose p = random_pose(rng);
  Pose q = Pose::from_array(p.to_array());
  CHECK(pose_distance(p, q) < 1e-15);
}

TEST_CASE("named rng substreams are stable and independent") {
  Rng a = Rng::named(42, "reset/0");
  Rng b = Rng::named(42, "reset/0");
  Rng c = Rng::named(42, "reset/1");
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.next_u64() != c.next_u64());

  Rng root(42);
  Rng s1 = root.sub("cem").sub("gen3");
  Rng s2 = root.sub("cem").sub("gen3");
  CHECK(s1.next_u64() == s2.next_u64());
}
