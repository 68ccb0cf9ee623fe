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

#ifndef SKILLKIT_PLANNER_HPP_
#define SKILLKIT_PLANNER_HPP_

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "skillkit/errors.hpp"
#include "skillkit/rng.hpp"
#include "skillkit/se3.hpp"
#include "skillkit/sim.hpp"
#include "skillkit/trajectory.hpp"

namespace skillkit {

// Straight-line plan: interpolate_pose sampling with per-step deltas within
// the action limits. target == start yields an empty plan.
inline std::vector<Action> plan_to_pose(const Pose& start, const Pose& target,
                                        const SimParams& params) {
  const Vec3& lo = params.workspace.lo;
  const Vec3& hi = params.workspace.hi;
  if ((target.position.array() < lo.array()).any() ||
      (target.position.array() > hi.array()).any()) {
    throw TargetOutOfWorkspace("plan_to_pose: target [" +
                               std::to_string(target.position.x()) + ", " +
                               std::to_string(target.position.y()) + ", " +
                               std::to_string(target.position.z()) +
                               "] outside workspace bounds");
  }
  double dist = (target.position - start.position).norm();
  double angle = orientation_angle(start.orientation, target.orientation);
  // Straight-line world motion has per-step local delta norms equal to the
  // per-step chord, so sizing by the norm keeps every component in limits.
  int n = std::max(
      static_cast<int>(std::ceil(dist / (0.999 * params.action_limit_pos))),
      static_cast<int>(std::ceil(angle / (0.999 * params.action_limit_rot))));
  std::vector<Action> plan;
  plan.reserve(n);
  Pose prev = start;
  for (int k = 1; k <= n; ++k) {
    Pose next = interpolate_pose(start, target, static_cast<double>(k) / n);
    Action a;
    a.delta = to_axis_angle(compose(invert(prev), next));
    a.gripper = GripperCmd::kHold;
    plan.push_back(a);
    prev = next;
  }
  return plan;
}

// Connect-phase plan: rise to transit height, traverse, descend. The desk
// world has no obstacles besides the table plane, so transfers are lifted to
// a fixed height rather than collision-checked. Optional rng perturbs the
// intermediate waypoints (used by the scripted demonstrator to diversify
// source demos); the final target is never jittered.
inline std::vector<Action> plan_via_transit(const Pose& start,
                                            const Pose& target,
                                            const SimParams& params,
                                            Rng* jitter_rng = nullptr,
                                            double jitter = 0.004) {
  double zt = std::max({params.transit_height, start.position.z(),
                        target.position.z()});
  Pose w1(Vec3(start.position.x(), start.position.y(), zt), start.orientation);
  Pose w2(Vec3(target.position.x(), target.position.y(), zt),
          target.orientation);
  if (jitter_rng) {
    w1.position.z() += jitter_rng->normal(0.0, jitter);
    w2.position.x() += jitter_rng->normal(0.0, jitter);
    w2.position.y() += jitter_rng->normal(0.0, jitter);
    w2.position.z() += jitter_rng->normal(0.0, jitter);
  }
  std::vector<Action> plan;
  Pose prev = start;
  for (const Pose& wp : {w1, w2, target}) {
    if (pose_distance(prev, wp) < 1e-12) continue;
    auto leg = plan_to_pose(prev, wp, params);
    plan.insert(plan.end(), leg.begin(), leg.end());
    prev = wp;
  }
  return plan;
}

struct ReplanEvent {
  int step{0};
  Pose old_target;
  Pose new_target;
  double distance{0};
};

struct ConnectResult {
  Observation observation;    // after the final connect step
  Pose final_target;          // last accepted initiation prediction
  int steps{0};
  int replan_count{0};
  bool budget_exhausted{false};
  std::vector<ReplanEvent> events;
};

struct ConnectOptions {
  double epsilon_pose{0.05};
  bool replan_enabled{true};
  int replan_limit{20};
  int step_budget{200};
  bool use_max_distance{false};  // ablation: max-form pose difference
};

// Executes a connect phase under the real-time replanning rule: the plan is
// consumed one action at a time; after every step the initiation pose is
// re-predicted from the fresh observation, and when its distance to the
// current target exceeds epsilon_pose the target is updated and planning
// restarts from the current pose. Terminates when the current plan is
// exhausted and no replan triggers.
inline ConnectResult execute_connect(
    Env& env, const Observation& start_obs,
    const std::function<Pose(const Observation&)>& predictor,
    const ConnectOptions& opt) {
  ConnectResult res;
  res.observation = start_obs;
  res.final_target = predictor(start_obs);

  auto distance = [&](const Pose& a, const Pose& b) {
    return opt.use_max_distance ? pose_distance_max(a, b) : pose_distance(a, b);
  };

  std::vector<Action> plan =
      plan_via_transit(env.state().ee_pose, res.final_target, env.params());
  size_t idx = 0;
  while (idx < plan.size()) {
    if (res.steps >= opt.step_budget) {
      res.budget_exhausted = true;
      return res;
    }
    StepResult sr = env.step(plan[idx++]);
    res.observation = sr.observation;
    res.steps += 1;
    if (!opt.replan_enabled) continue;
    Pose fresh = predictor(res.observation);
    double d = distance(res.final_target, fresh);
    if (d > opt.epsilon_pose) {
      res.replan_count += 1;
      if (res.replan_count > opt.replan_limit) {
        throw ReplanLimitExceeded(
            "execute_connect: more than " + std::to_string(opt.replan_limit) +
            " replans; predictor is thrashing");
      }
      res.events.push_back(ReplanEvent{res.steps, res.final_target, fresh, d});
      res.final_target = fresh;
      plan = plan_via_transit(env.state().ee_pose, res.final_target,
                              env.params());
      idx = 0;
    }
  }
  return res;
}

}  // namespace skillkit

#endif  // SKILLKIT_PLANNER_HPP_
