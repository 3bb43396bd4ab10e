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

#include "pbmarl/runtime/parameter_server.hpp"

namespace pbmarl {

void ParameterServer::push(const PolicyId& policy_id, const ParameterBlob& blob,
                           std::uint64_t version) {
  auto copy = std::make_shared<const ParameterBlob>(blob);
  std::lock_guard<std::mutex> lock(mu_);
  const std::uint64_t seq = log_.size();
  if (frozen_.count(policy_id)) {
    log_.push_back({seq, ParameterAuditEntry::Op::kRejectedPush, policy_id, version});
    throw InvalidArgument("parameter server: policy " + policy_id + " is frozen");
  }
  auto it = entries_.find(policy_id);
  if (it != entries_.end() && version <= it->second.version) {
    log_.push_back({seq, ParameterAuditEntry::Op::kRejectedPush, policy_id, version});
    throw InvalidArgument("parameter server: version " + std::to_string(version) + " for " +
                          policy_id + " does not exceed stored version " +
                          std::to_string(it->second.version));
  }
  entries_[policy_id] = VersionedBlob{std::move(copy), version};
  log_.push_back({seq, ParameterAuditEntry::Op::kPush, policy_id, version});
}

VersionedBlob ParameterServer::pull(const PolicyId& policy_id) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto it = entries_.find(policy_id);
  if (it == entries_.end()) throw NotFound("parameter server: unknown policy " + policy_id);
  return it->second;
}

std::uint64_t ParameterServer::version(const PolicyId& policy_id) const {
  return pull(policy_id).version;
}

bool ParameterServer::contains(const PolicyId& policy_id) const {
  std::lock_guard<std::mutex> lock(mu_);
  return entries_.count(policy_id) != 0;
}

void ParameterServer::freeze(const PolicyId& policy_id) {
  std::lock_guard<std::mutex> lock(mu_);
  if (!entries_.count(policy_id)) throw NotFound("parameter server: unknown policy " + policy_id);
  auto it = entries_.find(policy_id);
  frozen_.insert(policy_id);
  log_.push_back({log_.size(), ParameterAuditEntry::Op::kFreeze, policy_id, it->second.version});
}

bool ParameterServer::is_frozen(const PolicyId& policy_id) const {
  std::lock_guard<std::mutex> lock(mu_);
  return frozen_.count(policy_id) != 0;
}

std::vector<ParameterAuditEntry> ParameterServer::audit_log() const {
  std::lock_guard<std::mutex> lock(mu_);
  return log_;
}

bool audit_no_push_after_freeze(const std::vector<ParameterAuditEntry>& log) {
  std::set<PolicyId> frozen;
  for (const ParameterAuditEntry& e : log) {
    if (e.op == ParameterAuditEntry::Op::kFreeze) frozen.insert(e.policy_id);
    if (e.op == ParameterAuditEntry::Op::kPush && frozen.count(e.policy_id)) return false;
  }
  return true;
}

}  // namespace pbmarl
