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

#ifndef SKILLKIT_TRAJECTORY_HPP_
#define SKILLKIT_TRAJECTORY_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "skillkit/se3.hpp"

namespace skillkit {

enum class GripperCmd : int { kOpen = 0, kClose = 1, kHold = 2 };

// End-effector pose increment (local frame, per-component clamped) plus a
// gripper command.
struct Action {
  AxisAngle6 delta{AxisAngle6::Zero()};
  GripperCmd gripper{GripperCmd::kHold};

  static Action hold() { return Action{}; }
  static Action gripper_only(GripperCmd g) { return Action{AxisAngle6::Zero(), g}; }
};

enum class Phase : int { kConnect = 0, kSkill = 1 };

// One phase of one stage: end-effector poses with aligned gripper commands.
// ee_poses[t] is the pose *after* gripper_commands[t] and the motion into it
// were applied; replaying a segment re-derives delta actions from the poses.
struct Segment {
  std::vector<Pose> ee_poses;
  std::vector<GripperCmd> gripper_commands;
  Phase phase{Phase::kConnect};
  int stage_index{0};
};

// Per-stage annotation: the reference object, its pose at the moment the
// stage's skill began, and the skill initiation end-effector pose.
struct StageAnnotation {
  std::string reference_object;
  Pose reference_pose;
  Pose initiation_pose;
};

// A stage-annotated trajectory. Segments alternate connect, skill per stage,
// in stage order.
struct Demo {
  std::string task;
  std::map<std::string, Pose> initial_object_poses;
  std::vector<Segment> segments;
  std::vector<StageAnnotation> stages;

  const Segment& connect_segment(int stage) const {
    return segments.at(2 * stage);
  }
  const Segment& skill_segment(int stage) const {
    return segments.at(2 * stage + 1);
  }
  int stage_count() const { return static_cast<int>(stages.size()); }
};

struct DatasetProvenance {
  std::string generator;
  std::uint64_t seed{0};
  std::vector<std::uint64_t> source_seeds;
  int attempts{0};
  int successes{0};
  bool stitched{false};
  std::string config_hash;
};

// Persisted collection of validated demos.
struct Dataset {
  std::vector<Demo> demos;
  DatasetProvenance provenance;
};

}  // namespace skillkit

#endif  // SKILLKIT_TRAJECTORY_HPP_
