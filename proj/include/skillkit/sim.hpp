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

#ifndef SKILLKIT_SIM_HPP_
#define SKILLKIT_SIM_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skillkit/errors.hpp"
#include "skillkit/rng.hpp"
#include "skillkit/se3.hpp"
#include "skillkit/trajectory.hpp"

namespace skillkit {

// ---------------------------------------------------------------------------
// Deterministic kinematic tabletop world.
//
// A free-flying gripper moves above a table plane (z = 0). Objects are boxes;
// some carry a socket machined into their top face that accepts a specific
// other object. A held object may only descend into a socket when laterally
// aligned within the socket clearance and rotationally aligned within the yaw
// clearance; otherwise it rests on the owner's top face. Once inside a
// socket, lateral motion is confined to the socket axis. Released objects
// settle straight down onto the highest support under their center. There is
// no dynamics, friction, or contact force model.
// ---------------------------------------------------------------------------

struct ResetRange {
  double cx{0}, cy{0};       // range center on the table
  double half_x{0.15}, half_y{0.15};
  double yaw_half{std::numbers::pi};
};

struct SocketSpec {
  std::string accepts;        // object id that seats here
  double local_x{0}, local_y{0};  // socket axis in the owner's frame
  double clearance{0.004};    // lateral capture radius for entry
  double yaw_clearance{0.15}; // orientation alignment for entry (radians)
  double depth{0.01};         // seat depth below the owner's top face
};

struct ObjectSpec {
  std::string id;
  Vec3 half_extents{0.02, 0.02, 0.02};
  bool graspable{false};
  Vec3 grasp_local{0, 0, 0};  // handle point in the object frame
  ResetRange reset;
  std::vector<SocketSpec> sockets;
};

enum class StageKind : int { kGrasp = 0, kPlace = 1 };

// One task stage. Grasp stages attach `moved_object`; place stages carry it
// to a goal anchored to `oracle_anchor`'s current pose. The oracle predicate
// is a pure function of WorldState.
struct StageSpec {
  std::string reference_object;  // anchors adaptation and initiation poses
  StageKind kind{StageKind::kGrasp};
  std::string moved_object;
  std::string oracle_anchor;     // place stages: object whose frame holds the goal
  Pose goal_local;               // moved object's goal pose in the anchor frame
  Pose skill_goal_local;         // contact target in the reference object's frame
  double tol_pos{0.01};
  double tol_rot{0.1};
  double hover{0.06};            // skill initiation height above the contact target
};

struct Workspace {
  Vec3 lo{-0.4, -0.4, 0.005};
  Vec3 hi{0.4, 0.4, 0.5};
};

struct SimParams {
  double grasp_tolerance = 0.02;
  double action_limit_pos = 0.05;   // per-component, meters
  double action_limit_rot = 0.2;    // per-component, radians
  double sigma_near = 0.002;        // observation noise floor
  double sigma_far = 0.02;          // observation noise at/beyond d_ref
  double d_ref = 0.3;
  int connect_budget = 200;
  int skill_budget = 100;
  double transit_height = 0.25;
  Workspace workspace;
  Pose ee_home{Vec3(0.0, -0.30, 0.30), Quat::Identity()};
};

struct TaskSpec {
  std::string name;
  std::vector<ObjectSpec> objects;
  std::vector<StageSpec> stages;
  SimParams params;

  const ObjectSpec& object(const std::string& id) const {
    for (const auto& o : objects)
      if (o.id == id) return o;
    throw ConfigError("task '" + name + "' has no object '" + id + "'");
  }
  int stage_count() const { return static_cast<int>(stages.size()); }
};

struct WorldState {
  Pose ee_pose;
  bool gripper_closed{false};
  std::map<std::string, Pose> object_poses;
  std::optional<std::string> attached;
  Pose grasp_transform;  // object pose in the ee frame while attached
  long step_count{0};
};

struct Observation {
  Pose ee_pose;              // exact
  bool gripper_closed{false};
  std::map<std::string, Pose> object_pose_estimates;  // noise-corrupted
  int stage_index{0};
};

struct StepResult {
  Observation observation;
  int reward{0};
  bool done{false};
};

namespace detail {

// 2D oriented-box overlap via the separating axis test, used for
// collision-free reset placement.
inline bool obb_overlap_2d(const Pose& pa, const Vec3& ha, const Pose& pb,
                           const Vec3& hb) {
  double axy[2] = {pa.position.x(), pa.position.y()};
  double bxy[2] = {pb.position.x(), pb.position.y()};
  double ya = yaw_of(pa.orientation), yb = yaw_of(pb.orientation);
  double axes[4][2] = {{std::cos(ya), std::sin(ya)},
                       {-std::sin(ya), std::cos(ya)},
                       {std::cos(yb), std::sin(yb)},
                       {-std::sin(yb), std::cos(yb)}};
  double ea[2] = {ha.x(), ha.y()};
  double eb[2] = {hb.x(), hb.y()};
  for (auto& ax : axes) {
    double centers = std::abs((bxy[0] - axy[0]) * ax[0] + (bxy[1] - axy[1]) * ax[1]);
    double ra = 0, rb = 0;
    for (int k = 0; k < 2; ++k) {
      double ka[2] = {std::cos(ya + k * std::numbers::pi / 2),
                      std::sin(ya + k * std::numbers::pi / 2)};
      double kb[2] = {std::cos(yb + k * std::numbers::pi / 2),
                      std::sin(yb + k * std::numbers::pi / 2)};
      ra += ea[k] * std::abs(ka[0] * ax[0] + ka[1] * ax[1]);
      rb += eb[k] * std::abs(kb[0] * ax[0] + kb[1] * ax[1]);
    }
    if (centers > ra + rb) return false;
  }
  return true;
}

}  // namespace detail

// The environment. One instance per worker; all randomness flows through the
// seed given at construction (placement from "reset", observation noise from
// "obs"), so identical (seed, action sequence) pairs replay bit-exactly.
class Env {
 public:
  Env(TaskSpec task, std::uint64_t seed)
      : task_(std::move(task)),
        reset_rng_(Rng::named(seed, "reset")),
        obs_rng_(Rng::named(seed, "obs")) {}

  const TaskSpec& task() const { return task_; }
  const SimParams& params() const { return task_.params; }
  const WorldState& state() const { return state_; }  // privileged access
  int stage_index() const { return stage_index_; }
  void set_stage(int i) { stage_index_ = i; }

  // Samples object placements uniformly in their reset ranges, rejecting
  // overlapping layouts. Throws PlacementInfeasible after 1000 attempts.
  Observation reset() {
    const int kMaxAttempts = 1000;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      std::map<std::string, Pose> placed;
      for (const auto& obj : task_.objects) {
        double x = reset_rng_.uniform(obj.reset.cx - obj.reset.half_x,
                                      obj.reset.cx + obj.reset.half_x);
        double y = reset_rng_.uniform(obj.reset.cy - obj.reset.half_y,
                                      obj.reset.cy + obj.reset.half_y);
        double yaw = reset_rng_.uniform(-obj.reset.yaw_half, obj.reset.yaw_half);
        placed[obj.id] = Pose(Vec3(x, y, obj.half_extents.z()),
                              Quat(Eigen::AngleAxisd(yaw, Vec3::UnitZ())));
      }
      bool collides = false;
      for (size_t i = 0; i < task_.objects.size() && !collides; ++i) {
        for (size_t j = i + 1; j < task_.objects.size() && !collides; ++j) {
          const auto& a = task_.objects[i];
          const auto& b = task_.objects[j];
          collides = detail::obb_overlap_2d(placed[a.id], a.half_extents,
                                            placed[b.id], b.half_extents);
        }
      }
      if (!collides) return install(placed);
    }
    throw PlacementInfeasible("reset: no collision-free placement for task '" +
                              task_.name + "' after 1000 attempts");
  }

  // Installs an explicit scene, e.g. to replay a stored demo.
  Observation reset_to(const std::map<std::string, Pose>& object_poses) {
    return install(object_poses);
  }

  StepResult step(const Action& action) {
    const SimParams& p = task_.params;
    AxisAngle6 d = action.delta;
    for (int i = 0; i < 3; ++i)
      d[i] = std::clamp(d[i], -p.action_limit_pos, p.action_limit_pos);
    for (int i = 3; i < 6; ++i)
      d[i] = std::clamp(d[i], -p.action_limit_rot, p.action_limit_rot);

    Pose desired = compose(state_.ee_pose, from_axis_angle(d));
    desired.position = desired.position.cwiseMax(p.workspace.lo)
                           .cwiseMin(p.workspace.hi);

    if (state_.attached) {
      move_attached(desired);
    } else {
      state_.ee_pose = desired;
    }

    apply_gripper(action.gripper);
    state_.step_count += 1;

    bool success = task_success();
    return StepResult{observe(), success ? 1 : 0, success};
  }

  // Noise-corrupted view of the state. Estimate noise for an object at
  // distance d from the end-effector has scale
  //   sigma(d) = sigma_far * clamp(d / d_ref, sigma_near/sigma_far, 1),
  // so estimates sharpen as the gripper approaches.
  Observation observe() { return make_observation(&obs_rng_); }

  // Exact-pose view (sigma = 0 everywhere); no stream consumed.
  Observation observation_from_state() const {
    Observation obs;
    obs.ee_pose = state_.ee_pose;
    obs.gripper_closed = state_.gripper_closed;
    obs.object_pose_estimates = state_.object_poses;
    obs.stage_index = stage_index_;
    return obs;
  }

  bool stage_termination(int stage) const {
    return oracle_stage_termination(state_, task_, stage);
  }

  bool task_success() const { return oracle_task_success(state_, task_); }

  // Pure oracle predicates -------------------------------------------------

  static Pose stage_goal_world(const WorldState& s, const TaskSpec& task,
                               int stage) {
    const StageSpec& st = task.stages.at(stage);
    return compose(s.object_poses.at(st.oracle_anchor), st.goal_local);
  }

  static bool oracle_stage_termination(const WorldState& s,
                                       const TaskSpec& task, int stage) {
    const StageSpec& st = task.stages.at(stage);
    if (st.kind == StageKind::kGrasp) {
      return s.attached.has_value() && *s.attached == st.moved_object;
    }
    Pose goal = stage_goal_world(s, task, stage);
    const Pose& obj = s.object_poses.at(st.moved_object);
    return (obj.position - goal.position).norm() <= st.tol_pos &&
           orientation_angle(obj.orientation, goal.orientation) <= st.tol_rot;
  }

  // Conjunction of all place-stage predicates.
  static bool oracle_task_success(const WorldState& s, const TaskSpec& task) {
    for (int i = 0; i < task.stage_count(); ++i) {
      if (task.stages[i].kind == StageKind::kPlace &&
          !oracle_stage_termination(s, task, i))
        return false;
    }
    return true;
  }

  // Grasp handle pose for an object: handle point, object orientation.
  static Pose grasp_ee_pose(const ObjectSpec& obj, const Pose& obj_pose) {
    return compose(obj_pose, Pose(obj.grasp_local, Quat::Identity()));
  }

 private:
  Observation install(const std::map<std::string, Pose>& object_poses) {
    state_ = WorldState{};
    state_.ee_pose = task_.params.ee_home;
    state_.object_poses = object_poses;
    stage_index_ = 0;
    return observe();
  }

  Observation make_observation(Rng* rng) {
    Observation obs;
    obs.ee_pose = state_.ee_pose;
    obs.gripper_closed = state_.gripper_closed;
    obs.stage_index = stage_index_;
    const SimParams& p = task_.params;
    for (const auto& [id, pose] : state_.object_poses) {
      double d = (state_.ee_pose.position - pose.position).norm();
      double lo = p.sigma_far > 0 ? p.sigma_near / p.sigma_far : 0.0;
      double sigma =
          p.sigma_far * std::clamp(p.d_ref > 0 ? d / p.d_ref : 1.0, lo, 1.0);
      obs.object_pose_estimates[id] =
          rng ? add_pose_noise(pose, sigma, *rng) : pose;
    }
    return obs;
  }

  // Highest support below the moved object's center: the table, another
  // object's top face, or a socket seat when entry alignment holds.
  double support_height(const std::string& moved_id, const Vec3& xy,
                        const Quat& orient) const {
    const ObjectSpec& moved = task_.object(moved_id);
    double floor_z = moved.half_extents.z();  // table
    for (const auto& spec : task_.objects) {
      if (spec.id == moved_id) continue;
      const Pose& owner = state_.object_poses.at(spec.id);
      Vec3 local = owner.orientation.conjugate() * (xy - owner.position);
      if (std::abs(local.x()) > spec.half_extents.x() ||
          std::abs(local.y()) > spec.half_extents.y())
        continue;
      double top = owner.position.z() + spec.half_extents.z();
      double rest = top + moved.half_extents.z();
      for (const auto& sock : spec.sockets) {
        if (sock.accepts != moved_id) continue;
        double dx = local.x() - sock.local_x, dy = local.y() - sock.local_y;
        bool aligned = std::hypot(dx, dy) <= sock.clearance &&
                       orientation_angle(orient, owner.orientation) <=
                           sock.yaw_clearance;
        if (aligned) rest = top - sock.depth + moved.half_extents.z();
      }
      floor_z = std::max(floor_z, rest);
    }
    return floor_z;
  }

  // Socket currently containing the object, if any: strictly below the
  // owner's rest height and within the capture radius.
  struct SocketRef {
    const ObjectSpec* owner_spec;
    const SocketSpec* socket;
    Pose owner_pose;
  };
  std::optional<SocketRef> containing_socket(const std::string& moved_id,
                                             const Pose& pose) const {
    const ObjectSpec& moved = task_.object(moved_id);
    for (const auto& spec : task_.objects) {
      if (spec.id == moved_id) continue;
      const Pose& owner = state_.object_poses.at(spec.id);
      double top = owner.position.z() + spec.half_extents.z();
      if (pose.position.z() >= top + moved.half_extents.z() - 1e-9) continue;
      Vec3 local = invert(owner).orientation * (pose.position - owner.position);
      for (const auto& sock : spec.sockets) {
        if (sock.accepts != moved_id) continue;
        double dx = local.x() - sock.local_x, dy = local.y() - sock.local_y;
        if (std::hypot(dx, dy) <= sock.clearance + 1e-9)
          return SocketRef{&spec, &sock, owner};
      }
    }
    return std::nullopt;
  }

  void move_attached(const Pose& desired_ee) {
    const std::string& id = *state_.attached;
    Pose desired_obj = compose(desired_ee, state_.grasp_transform);
    Pose current_obj = state_.object_poses.at(id);

    double floor_z = support_height(id, desired_obj.position,
                                    desired_obj.orientation);
    Pose final_ee = desired_ee;
    Pose final_obj = desired_obj;

    if (desired_obj.position.z() < floor_z - 1e-12) {
      auto sock = containing_socket(id, current_obj);
      if (sock) {
        // Inside a socket: lateral motion is confined to the socket axis.
        Pose owner = sock->owner_pose;
        Vec3 axis_world =
            owner.position + owner.orientation * Vec3(sock->socket->local_x,
                                                      sock->socket->local_y, 0);
        Vec3 offset = desired_obj.position - axis_world;
        offset.z() = 0;
        double r = offset.norm();
        if (r > sock->socket->clearance)
          offset *= sock->socket->clearance / r;
        Vec3 pos(axis_world.x() + offset.x(), axis_world.y() + offset.y(),
                 desired_obj.position.z());
        double seat = support_height(id, pos, desired_obj.orientation);
        pos.z() = std::max(pos.z(), seat);
        final_obj = Pose(pos, desired_obj.orientation);
      } else {
        Vec3 pos = desired_obj.position;
        pos.z() = floor_z;
        final_obj = Pose(pos, desired_obj.orientation);
      }
      // The gripper yields vertically by however much the object was blocked.
      Vec3 ee_pos = desired_ee.position;
      ee_pos.z() += final_obj.position.z() - desired_obj.position.z();
      ee_pos.x() += final_obj.position.x() - desired_obj.position.x();
      ee_pos.y() += final_obj.position.y() - desired_obj.position.y();
      final_ee = Pose(ee_pos, desired_ee.orientation);
    }

    state_.ee_pose = final_ee;
    state_.object_poses.at(id) = final_obj;
  }

  void apply_gripper(GripperCmd cmd) {
    if (cmd == GripperCmd::kClose) {
      if (!state_.gripper_closed) {
        state_.gripper_closed = true;
        try_attach();
      }
    } else if (cmd == GripperCmd::kOpen) {
      state_.gripper_closed = false;
      if (state_.attached) {
        const std::string id = *state_.attached;
        state_.attached.reset();
        settle(id);
      }
    }
  }

  void try_attach() {
    const SimParams& p = task_.params;
    std::optional<std::string> best;
    double best_d = p.grasp_tolerance;
    for (const auto& spec : task_.objects) {
      if (!spec.graspable) continue;
      Pose handle = grasp_ee_pose(spec, state_.object_poses.at(spec.id));
      double d = (state_.ee_pose.position - handle.position).norm();
      if (d <= best_d) {
        best_d = d;
        best = spec.id;
      }
    }
    if (best) {
      state_.attached = best;
      state_.grasp_transform =
          compose(invert(state_.ee_pose), state_.object_poses.at(*best));
    }
  }

  void settle(const std::string& id) {
    Pose pose = state_.object_poses.at(id);
    double z = support_height(id, pose.position, pose.orientation);
    pose.position.z() = z;
    state_.object_poses.at(id) = Pose(pose.position, pose.orientation);
  }

  TaskSpec task_;
  WorldState state_;
  Rng reset_rng_;
  Rng obs_rng_;
  int stage_index_{0};
};

// ---------------------------------------------------------------------------
// Task catalog.
// ---------------------------------------------------------------------------

// Two-stage task: grasp a needle, insert it through the slot of a block.
inline TaskSpec make_peg_thread_task() {
  TaskSpec t;
  t.name = "peg-thread";

  ObjectSpec needle;
  needle.id = "needle";
  needle.half_extents = Vec3(0.008, 0.008, 0.04);
  needle.graspable = true;
  needle.grasp_local = Vec3(0, 0, 0.03);
  needle.reset = ResetRange{-0.15, 0.0, 0.15, 0.15, std::numbers::pi};

  ObjectSpec block;
  block.id = "block";
  block.half_extents = Vec3(0.05, 0.05, 0.05);
  block.graspable = false;
  block.reset = ResetRange{0.15, 0.0, 0.15, 0.15, std::numbers::pi};
  block.sockets.push_back(SocketSpec{"needle", 0.0, 0.0, 0.004, 0.15, 0.05});

  t.objects = {needle, block};

  StageSpec grasp;
  grasp.reference_object = "needle";
  grasp.kind = StageKind::kGrasp;
  grasp.moved_object = "needle";
  grasp.hover = 0.06;

  StageSpec insert;
  insert.reference_object = "block";
  insert.kind = StageKind::kPlace;
  insert.moved_object = "needle";
  insert.oracle_anchor = "block";
  // Seat: block top (z = +0.05 local) minus socket depth plus needle half.
  insert.goal_local = Pose(Vec3(0, 0, 0.04), Quat::Identity());
  insert.skill_goal_local = insert.goal_local;
  insert.tol_pos = 0.01;
  insert.tol_rot = 0.1;
  insert.hover = 0.07;

  t.stages = {grasp, insert};
  return t;
}

// Four-stage task: grasp/place two pieces with a stacking dependency. The
// piece-1 placement oracle is deliberately loose: it accepts edge placements
// (resting on the base's top face near the socket), which doom the piece-2
// placement because piece 2 stacks onto piece 1 while its oracle goal is
// anchored to the base.
inline TaskSpec make_two_piece_task() {
  TaskSpec t;
  t.name = "two-piece";

  ObjectSpec base;
  base.id = "base";
  base.half_extents = Vec3(0.06, 0.06, 0.02);
  base.graspable = false;
  base.reset = ResetRange{0.18, 0.0, 0.15, 0.15, std::numbers::pi};
  base.sockets.push_back(SocketSpec{"piece1", 0.0, 0.0, 0.004, 0.15, 0.01});

  ObjectSpec piece1;
  piece1.id = "piece1";
  piece1.half_extents = Vec3(0.02, 0.02, 0.02);
  piece1.graspable = true;
  piece1.grasp_local = Vec3(0, 0, 0.012);
  piece1.reset = ResetRange{-0.20, -0.08, 0.15, 0.15, std::numbers::pi};
  piece1.sockets.push_back(SocketSpec{"piece2", 0.0, 0.0, 0.004, 0.15, 0.008});

  ObjectSpec piece2;
  piece2.id = "piece2";
  piece2.half_extents = Vec3(0.015, 0.015, 0.015);
  piece2.graspable = true;
  piece2.grasp_local = Vec3(0, 0, 0.009);
  piece2.reset = ResetRange{-0.20, 0.08, 0.15, 0.15, std::numbers::pi};

  t.objects = {base, piece1, piece2};

  StageSpec grasp1;
  grasp1.reference_object = "piece1";
  grasp1.kind = StageKind::kGrasp;
  grasp1.moved_object = "piece1";
  grasp1.hover = 0.06;

  StageSpec place1;
  place1.reference_object = "base";
  place1.kind = StageKind::kPlace;
  place1.moved_object = "piece1";
  place1.oracle_anchor = "base";
  // Seat: base top (z = +0.02 local) - depth 0.01 + piece1 half 0.02.
  place1.goal_local = Pose(Vec3(0, 0, 0.03), Quat::Identity());
  place1.skill_goal_local = place1.goal_local;
  place1.tol_pos = 0.035;  // loose: accepts edge placements
  place1.tol_rot = 0.3;
  place1.hover = 0.05;

  StageSpec grasp2;
  grasp2.reference_object = "piece2";
  grasp2.kind = StageKind::kGrasp;
  grasp2.moved_object = "piece2";
  grasp2.hover = 0.06;

  StageSpec place2;
  place2.reference_object = "piece1";  // trajectories track piece 1
  place2.kind = StageKind::kPlace;
  place2.moved_object = "piece2";
  place2.oracle_anchor = "base";       // but the goal is base-anchored
  // Seat atop a correctly-seated piece 1: 0.03 + 0.02 - 0.008 + 0.015.
  place2.goal_local = Pose(Vec3(0, 0, 0.057), Quat::Identity());
  // Seat in piece 1's own socket: top 0.02 - depth 0.008 + piece2 half 0.015.
  place2.skill_goal_local = Pose(Vec3(0, 0, 0.027), Quat::Identity());
  place2.tol_pos = 0.01;
  place2.tol_rot = 0.1;
  place2.hover = 0.05;

  t.stages = {grasp1, place1, grasp2, place2};
  return t;
}

inline TaskSpec task_by_name(const std::string& name) {
  if (name == "peg-thread") return make_peg_thread_task();
  if (name == "two-piece") return make_two_piece_task();
  throw ConfigError("unknown task '" + name + "'");
}

}  // namespace skillkit

#endif  // SKILLKIT_SIM_HPP_
