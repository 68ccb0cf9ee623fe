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

#ifndef SKILLKIT_SE3_HPP_
#define SKILLKIT_SE3_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/Geometry>

#include "skillkit/rng.hpp"

namespace skillkit {

using Vec3 = Eigen::Vector3d;
using Quat = Eigen::Quaterniond;

// 6-vector: 3 position components (meters) followed by 3 rotation components
// (rotation vector / axis-angle, radians). The rotation sub-vector of a
// canonical value has magnitude <= pi.
using AxisAngle6 = Eigen::Matrix<double, 6, 1>;

// Rigid-body pose: position + unit quaternion (w, x, y, z).
//
// Quaternions are kept normalized and sign-canonicalized (w >= 0; if w == 0,
// the first nonzero vector component is >= 0) so that equality and
// serialization are well-defined.
struct Pose {
  Vec3 position{Vec3::Zero()};
  Quat orientation{Quat::Identity()};

  Pose() = default;
  Pose(const Vec3& p, const Quat& q) : position(p), orientation(q) {
    canonicalize();
  }

  static Pose identity() { return Pose(); }

  static Pose translation(double x, double y, double z) {
    return Pose(Vec3(x, y, z), Quat::Identity());
  }

  static Pose rot_z(double yaw) {
    return Pose(Vec3::Zero(), Quat(Eigen::AngleAxisd(yaw, Vec3::UnitZ())));
  }

  void canonicalize() {
    orientation.normalize();
    const double* c = orientation.coeffs().data();  // x, y, z, w
    double lead = c[3];
    for (int i = 0; lead == 0.0 && i < 3; ++i) lead = c[i];
    if (lead < 0.0) orientation.coeffs() = -orientation.coeffs();
  }

  std::array<double, 7> to_array() const {
    return {position.x(), position.y(), position.z(), orientation.w(),
            orientation.x(), orientation.y(), orientation.z()};
  }

  static Pose from_array(const std::array<double, 7>& a) {
    return Pose(Vec3(a[0], a[1], a[2]), Quat(a[3], a[4], a[5], a[6]));
  }
};

// Matrix product of the equivalent homogeneous transforms.
inline Pose compose(const Pose& a, const Pose& b) {
  return Pose(a.position + a.orientation * b.position,
              a.orientation * b.orientation);
}

inline Pose invert(const Pose& p) {
  Quat qi = p.orientation.conjugate();
  return Pose(-(qi * p.position), qi);
}

// Quaternion-space angle min{acos(q1.q2), acos(-q1.q2)}, normalized by pi.
// Evaluated through the half-chord asin form, which is the same quantity but
// stays exact at zero instead of amplifying last-bit rounding the way a
// clamped acos of the dot product does. Result lies in [0, 1/2].
inline double quat_distance(const Quat& a, const Quat& b) {
  double chord_minus = (a.coeffs() - b.coeffs()).norm();
  double chord_plus = (a.coeffs() + b.coeffs()).norm();
  double half = 0.5 * std::min(chord_minus, chord_plus);
  return 2.0 * std::asin(std::clamp(half, 0.0, 1.0)) / std::numbers::pi;
}

// Sum-form pose distance: Euclidean position distance plus the normalized
// quaternion angle: d = |p1 - p2| + min{acos(q1.q2), acos(-q1.q2)} / pi.
inline double pose_distance(const Pose& a, const Pose& b) {
  return (a.position - b.position).norm() +
         quat_distance(a.orientation, b.orientation);
}

// Max-form variant: maximum of the two terms instead of their sum. Kept as a
// separate operation for the ablation harness; the replanning rule uses the
// sum form above.
inline double pose_distance_max(const Pose& a, const Pose& b) {
  return std::max((a.position - b.position).norm(),
                  quat_distance(a.orientation, b.orientation));
}

// Pose -> position (+) rotation-vector. The canonical quaternion (w >= 0)
// yields an angle in [0, pi]; at exactly pi the axis sign follows the
// quaternion canonicalization rule.
inline AxisAngle6 to_axis_angle(const Pose& p) {
  AxisAngle6 v;
  v.head<3>() = p.position;
  Vec3 im(p.orientation.x(), p.orientation.y(), p.orientation.z());
  double s = im.norm();
  double w = p.orientation.w();
  if (s < 1e-12) {
    v.tail<3>() = 2.0 * im;  // first-order: q ~ (1, r/2)
  } else {
    double angle = 2.0 * std::atan2(s, w);
    v.tail<3>() = (angle / s) * im;
  }
  return v;
}

inline Pose from_axis_angle(const AxisAngle6& v) {
  Vec3 r = v.tail<3>();
  double angle = r.norm();
  Quat q;
  if (angle < 1e-12) {
    q = Quat(1.0, 0.5 * r.x(), 0.5 * r.y(), 0.5 * r.z());
  } else {
    double half = 0.5 * angle;
    double k = std::sin(half) / angle;
    q = Quat(std::cos(half), k * r.x(), k * r.y(), k * r.z());
  }
  return Pose(Vec3(v[0], v[1], v[2]), q);
}

// Linear position, shortest-arc spherical orientation. t in [0, 1].
inline Pose interpolate_pose(const Pose& a, const Pose& b, double t) {
  return Pose((1.0 - t) * a.position + t * b.position,
              a.orientation.slerp(t, b.orientation));
}

// Perturbs the pose by i.i.d. N(0, sigma^2) noise per component of its
// 6-dim position (+) axis-angle form. sigma = 0 returns the input unchanged.
inline Pose add_pose_noise(const Pose& p, double sigma, Rng& rng) {
  if (sigma == 0.0) return p;
  AxisAngle6 v = to_axis_angle(p);
  for (int i = 0; i < 6; ++i) v[i] += rng.normal(0.0, sigma);
  return from_axis_angle(v);
}

// Component-wise pose equality: position within tol on every axis and
// quaternion within tol up to sign. Preferred over pose_distance for
// exactness checks, since the acos in the rotation term amplifies
// last-bit quaternion rounding to ~1e-8.
inline bool approx_equal(const Pose& a, const Pose& b, double tol) {
  if (((a.position - b.position).cwiseAbs().maxCoeff()) > tol) return false;
  double plus = (a.orientation.coeffs() + b.orientation.coeffs())
                    .cwiseAbs()
                    .maxCoeff();
  double minus = (a.orientation.coeffs() - b.orientation.coeffs())
                     .cwiseAbs()
                     .maxCoeff();
  return std::min(plus, minus) <= tol;
}

// Rotation angle (radians) between the two orientations, in [0, pi].
inline double orientation_angle(const Quat& a, const Quat& b) {
  double dot = std::abs(a.coeffs().dot(b.coeffs()));
  return 2.0 * std::acos(std::clamp(dot, -1.0, 1.0));
}

inline double yaw_of(const Quat& q) {
  Vec3 x = q * Vec3::UnitX();
  return std::atan2(x.y(), x.x());
}

inline double wrap_angle(double a) {
  a = std::fmod(a + std::numbers::pi, 2.0 * std::numbers::pi);
  if (a < 0) a += 2.0 * std::numbers::pi;
  return a - std::numbers::pi;
}

}  // namespace skillkit

#endif  // SKILLKIT_SE3_HPP_
