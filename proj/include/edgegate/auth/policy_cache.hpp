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

#pragma once

#include <cstddef>
#include <list>
#include <optional>
#include <unordered_map>

#include "edgegate/core/time.hpp"
#include "edgegate/core/types.hpp"

namespace edgegate::auth {

struct CacheEntry {
  AccessPolicy policy;
  Timestamp inserted_at;
  Millis ttl;

  const Uid& uid() const { return policy.uid(); }
  bool expired_at(Timestamp now) const { return now > inserted_at + ttl; }
};

// Bounded uid -> policy cache with TTL expiry and oldest-inserted eviction.
//
// Entries removed because their TTL lapsed are kept in a separate bounded
// "stale" table. They are never returned by lookup(); the fallback policy may
// consult them when the cloud is unreachable.
class PolicyCache {
 public:
  explicit PolicyCache(std::size_t capacity = 256);

  // Hit iff present and unexpired. Expired entries are evicted here.
  std::optional<CacheEntry> lookup(const Uid& uid, Timestamp now);

  // Inserts or refreshes. A refresh restarts the TTL and counts as the newest
  // insertion for eviction order.
  void update(const AccessPolicy& policy, Timestamp now, Millis ttl);

  // Most recent expired entry for uid, if one was evicted on expiry.
  std::optional<CacheEntry> stale(const Uid& uid) const;

  std::size_t size() const { return live_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool contains(const Uid& uid) const { return live_.count(uid) != 0; }

 private:
  struct Table {
    std::list<Uid> order;  // front = oldest insertion
    std::unordered_map<Uid, std::pair<CacheEntry, std::list<Uid>::iterator>> entries;

    void put(CacheEntry entry, std::size_t capacity);
    void erase(const Uid& uid);
    std::size_t count(const Uid& uid) const { return entries.count(uid); }
    std::size_t size() const { return entries.size(); }
  };

  std::size_t capacity_;
  Table live_;
  Table stale_;
};

}  // namespace edgegate::auth
