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

#ifndef SKILLKIT_DEMONSTRATOR_HPP_
#define SKILLKIT_DEMONSTRATOR_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "skillkit/errors.hpp"
#include "skillkit/planner.hpp"
#include "skillkit/sim.hpp"
#include "skillkit/trajectory.hpp"

namespace skillkit {

// Scripted source-demonstration generator, standing in for human
// teleoperation. Runs with privileged state access, annotates stage
// boundaries as they are crossed, and injects small seeded waypoint jitter so
// that different seeds produce distinct sources.
//
// Segment convention: ee_poses[0] is the pose at segment start;
// gripper_commands[t] is the command executed together with the motion into
// ee_poses[t] (gripper_commands[0] is a placeholder kHold). A skill segment
// ends at the first frame where the stage's ground-truth termination fires;
// the release that follows an accepted placement is executive behavior, not
// part of the recorded segment.
inline Demo scripted_demonstrator(const TaskSpec& task, std::uint64_t seed) {
  Env env(task, seed);
  Rng jitter = Rng::named(seed, "demo-jitter");
  env.reset();

  Demo demo;
  demo.task = task.name;
  demo.initial_object_poses = env.state().object_poses;

  const double descend_step = 0.015;

  auto begin_segment = [&](Phase phase, int stage) {
    Segment seg;
    seg.phase = phase;
    seg.stage_index = stage;
    seg.ee_poses.push_back(env.state().ee_pose);
    seg.gripper_commands.push_back(GripperCmd::kHold);
    return seg;
  };
  auto record_step = [&](Segment& seg, const Action& a) {
    env.step(a);
    seg.ee_poses.push_back(env.state().ee_pose);
    seg.gripper_commands.push_back(a.gripper);
  };

  for (int i = 0; i < task.stage_count(); ++i) {
    const StageSpec& stage = task.stages[i];
    env.set_stage(i);
    const Pose ref_pose = env.state().object_poses.at(stage.reference_object);

    // Skill initiation pose: hover above the contact target.
    Pose contact_ee;
    if (stage.kind == StageKind::kGrasp) {
      contact_ee = Env::grasp_ee_pose(task.object(stage.moved_object),
                                      env.state().object_poses.at(stage.moved_object));
    } else {
      Pose contact_obj = compose(ref_pose, stage.skill_goal_local);
      contact_ee = compose(contact_obj, invert(env.state().grasp_transform));
    }
    Pose initiation = contact_ee;
    initiation.position.z() += stage.hover;
    initiation.position.x() += jitter.normal(0.0, 0.003);
    initiation.position.y() += jitter.normal(0.0, 0.003);
    initiation.position.z() += jitter.normal(0.0, 0.003);

    Segment connect = begin_segment(Phase::kConnect, i);
    for (const Action& a :
         plan_via_transit(env.state().ee_pose, initiation, task.params, &jitter))
      record_step(connect, a);
    if (static_cast<int>(connect.ee_poses.size()) > task.params.connect_budget)
      throw DemonstrationFailed("connect budget exceeded on stage " +
                                std::to_string(i));
    demo.segments.push_back(connect);

    demo.stages.push_back(
        StageAnnotation{stage.reference_object, ref_pose, env.state().ee_pose});

    Segment skill = begin_segment(Phase::kSkill, i);
    if (stage.kind == StageKind::kGrasp) {
      for (const Action& a :
           plan_to_pose(env.state().ee_pose, contact_ee,
                        with_step_cap(task.params, descend_step))) {
        Action open = a;
        open.gripper = GripperCmd::kOpen;
        record_step(skill, open);
      }
      record_step(skill, Action::gripper_only(GripperCmd::kClose));
      if (!env.stage_termination(i))
        throw DemonstrationFailed("grasp missed on stage " + std::to_string(i));
    } else {
      // Descend toward the seat until the stage oracle fires.
      Pose seat_ee = compose(compose(ref_pose, stage.skill_goal_local),
                             invert(env.state().grasp_transform));
      int steps = 0;
      while (!env.stage_termination(i)) {
        if (++steps > task.params.skill_budget)
          throw DemonstrationFailed("placement missed on stage " +
                                    std::to_string(i));
        Vec3 to_seat = seat_ee.position - env.state().ee_pose.position;
        double n = to_seat.norm();
        if (n < 1e-9)
          throw DemonstrationFailed("reached seat without termination on stage " +
                                    std::to_string(i));
        Vec3 move = to_seat * std::min(1.0, descend_step / n);
        Action a;
        a.delta.head<3>() =
            env.state().ee_pose.orientation.conjugate() * move;
        record_step(skill, a);
      }
    }
    demo.segments.push_back(skill);

    // Executive transition: an accepted placement releases the object.
    if (stage.kind == StageKind::kPlace && env.state().attached)
      env.step(Action::gripper_only(GripperCmd::kOpen));
  }

  if (!env.task_success())
    throw DemonstrationFailed("episode did not reach task success");
  return demo;
}

inline SimParams with_step_cap(SimParams params, double cap) {
  params.action_limit_pos = std::min(params.action_limit_pos, cap);
  return params;
}

// Ten seeded sources per task is the default source bundle.
inline std::vector<Demo> scripted_sources(const TaskSpec& task,
                                          std::uint64_t root_seed, int count) {
  std::vector<Demo> demos;
  demos.reserve(count);
  for (int k = 0; k < count; ++k) {
    std::uint64_t seed = Rng::named(root_seed, "demo/" + std::to_string(k)).next_u64();
    demos.push_back(scripted_demonstrator(task, seed));
  }
  return demos;
}

}  // namespace skillkit

#endif  // SKILLKIT_DEMONSTRATOR_HPP_
