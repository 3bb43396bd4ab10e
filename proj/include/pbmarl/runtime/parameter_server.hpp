// Copyright 2026 The pbmarl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PBMARL_RUNTIME_PARAMETER_SERVER_HPP_
#define PBMARL_RUNTIME_PARAMETER_SERVER_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "pbmarl/oracle/q_learning.hpp"
#include "pbmarl/policy/tabular_policy.hpp"

namespace pbmarl {

struct VersionedBlob {
  std::shared_ptr<const ParameterBlob> blob;
  std::uint64_t version = 0;
};

struct ParameterAuditEntry {
  enum class Op { kPush, kFreeze, kRejectedPush };
  std::uint64_t sequence = 0;
  Op op = Op::kPush;
  PolicyId policy_id;
  std::uint64_t version = 0;
};

// Latest-wins versioned store shared by learners (push) and actors (pull).
// Every operation is linearizable per policy id.
class ParameterServer : public ParameterSink {
 public:
  // Throws InvalidArgument when `version` is not above the stored version or
  // the policy is frozen.
  void push(const PolicyId& policy_id, const ParameterBlob& blob, std::uint64_t version) override;
  VersionedBlob pull(const PolicyId& policy_id) const;
  std::uint64_t version(const PolicyId& policy_id) const;
  bool contains(const PolicyId& policy_id) const;

  // After freezing, pushes for the id are rejected.
  void freeze(const PolicyId& policy_id);
  bool is_frozen(const PolicyId& policy_id) const;

  std::vector<ParameterAuditEntry> audit_log() const;

 private:
  mutable std::mutex mu_;
  std::map<PolicyId, VersionedBlob> entries_;
  std::set<PolicyId> frozen_;
  std::vector<ParameterAuditEntry> log_;
};

// True when the log shows no accepted push after a freeze of the same id.
bool audit_no_push_after_freeze(const std::vector<ParameterAuditEntry>& log);

}  // namespace pbmarl

#endif  // PBMARL_RUNTIME_PARAMETER_SERVER_HPP_
