// Copyright 2026 The MFEE Authors
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

#include "mfee/response_cache.hpp"

#include <stdexcept>

#include "mfee/hash.hpp"

namespace mfee {

ResponseCache::ResponseCache(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) {
    throw std::invalid_argument("cache capacity must be positive");
  }
}

std::string ResponseCache::make_key(std::string_view canonical_key,
                                    std::uint64_t fingerprint) {
  std::string key;
  key.reserve(canonical_key.size() + 17);
  key.append(canonical_key);
  key.push_back('\x1f');
  key.append(hex16(fingerprint));
  return key;
}

std::optional<std::string> ResponseCache::lookup(std::string_view canonical_key,
                                                 std::uint64_t fingerprint) {
  const std::string key = make_key(canonical_key, fingerprint);
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = index_.find(key);
  if (it == index_.end()) {
    ++misses_;
    return std::nullopt;
  }
  lru_.splice(lru_.begin(), lru_, it->second);
  ++hits_;
  return it->second->output;
}

void ResponseCache::store(std::string_view canonical_key,
                          std::uint64_t fingerprint, std::string_view output) {
  std::string key = make_key(canonical_key, fingerprint);
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = index_.find(key);
  if (it != index_.end()) {
    it->second->output.assign(output);
    lru_.splice(lru_.begin(), lru_, it->second);
    return;
  }
  if (lru_.size() >= capacity_) {
    const Entry& oldest = lru_.back();
    index_.erase(oldest.composite_key);
    lru_.pop_back();
  }
  lru_.push_front(Entry{std::move(key), std::string(output)});
  index_.emplace(lru_.front().composite_key, lru_.begin());
}

std::size_t ResponseCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return lru_.size();
}

void ResponseCache::clear() {
  std::lock_guard<std::mutex> lock(mutex_);
  lru_.clear();
  index_.clear();
}

std::uint64_t ResponseCache::hit_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return hits_;
}

std::uint64_t ResponseCache::miss_count() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return misses_;
}

}  // namespace mfee
