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

#ifndef SKILLKIT_ERRORS_HPP_
#define SKILLKIT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace skillkit {

// Base for all library failures; `name()` is stable and machine-readable.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

#define SKILLKIT_DEFINE_ERROR(Type)                    \
  class Type : public Error {                          \
   public:                                             \
    explicit Type(const std::string& what)             \
        : Error(#Type, what) {}                        \
  }

SKILLKIT_DEFINE_ERROR(PlacementInfeasible);
SKILLKIT_DEFINE_ERROR(DemonstrationFailed);
SKILLKIT_DEFINE_ERROR(BudgetExhausted);
SKILLKIT_DEFINE_ERROR(DimensionMismatch);
SKILLKIT_DEFINE_ERROR(DegenerateLabels);
SKILLKIT_DEFINE_ERROR(TargetOutOfWorkspace);
SKILLKIT_DEFINE_ERROR(ReplanLimitExceeded);
SKILLKIT_DEFINE_ERROR(FormatError);
SKILLKIT_DEFINE_ERROR(ConfigError);

#undef SKILLKIT_DEFINE_ERROR

}  // namespace skillkit

#endif  // SKILLKIT_ERRORS_HPP_
