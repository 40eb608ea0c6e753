// Copyright 2026 The EdgeGate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "edgegate/auth/policy_cache.hpp"

#include "edgegate/core/error.hpp"

namespace edgegate::auth {

void PolicyCache::Table::put(CacheEntry entry, std::size_t capacity) {
  const Uid uid = entry.uid();
  erase(uid);
  if (entries.size() >= capacity) {
    entries.erase(order.front());
    order.pop_front();
  }
  order.push_back(uid);
  entries.emplace(uid, std::make_pair(std::move(entry), std::prev(order.end())));
}

void PolicyCache::Table::erase(const Uid& uid) {
  const auto it = entries.find(uid);
  if (it == entries.end()) return;
  order.erase(it->second.second);
  entries.erase(it);
}

PolicyCache::PolicyCache(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw Error(ErrorCode::kInvalidArgument, "cache capacity must be > 0");
}

std::optional<CacheEntry> PolicyCache::lookup(const Uid& uid, Timestamp now) {
  const auto it = live_.entries.find(uid);
  if (it == live_.entries.end()) return std::nullopt;
  CacheEntry entry = it->second.first;
  if (entry.expired_at(now)) {
    live_.erase(uid);
    stale_.put(std::move(entry), capacity_);
    return std::nullopt;
  }
  return entry;
}

void PolicyCache::update(const AccessPolicy& policy, Timestamp now, Millis ttl) {
  if (ttl <= Millis::zero()) throw Error(ErrorCode::kInvalidArgument, "ttl must be > 0");
  stale_.erase(policy.uid());
  live_.put(CacheEntry{policy, now, ttl}, capacity_);
}

std::optional<CacheEntry> PolicyCache::stale(const Uid& uid) const {
  const auto it = stale_.entries.find(uid);
  if (it == stale_.entries.end()) return std::nullopt;
  return it->second.first;
}

}  // namespace edgegate::auth
