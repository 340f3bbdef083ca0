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

#pragma once

#include <cstdint>
#include <list>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace mfee {

inline constexpr std::size_t kDefaultCacheCapacity = 65536;

// Bounded LRU cache of rendered outputs, keyed by (canonical prompt,
// config fingerprint). A hit is proof that this exact meaning was already
// served under this exact generation config, so replaying the stored bytes
// is equivalent to re-executing. Thread safe; each operation is atomic.
class ResponseCache {
 public:
  explicit ResponseCache(std::size_t capacity = kDefaultCacheCapacity);

  ResponseCache(const ResponseCache&) = delete;
  ResponseCache& operator=(const ResponseCache&) = delete;

  // Returns the stored output and refreshes the entry's recency.
  std::optional<std::string> lookup(std::string_view canonical_key,
                                    std::uint64_t fingerprint);

  // Inserts or overwrites (last writer wins). At capacity the least
  // recently used entry is evicted first.
  void store(std::string_view canonical_key, std::uint64_t fingerprint,
             std::string_view output);

  std::size_t size() const;
  std::size_t capacity() const noexcept { return capacity_; }
  void clear();

  std::uint64_t hit_count() const;
  std::uint64_t miss_count() const;

 private:
  struct Entry {
    std::string composite_key;
    std::string output;
  };

  static std::string make_key(std::string_view canonical_key,
                              std::uint64_t fingerprint);

  const std::size_t capacity_;
  mutable std::mutex mutex_;
  std::list<Entry> lru_;  // front = most recently used
  std::unordered_map<std::string, std::list<Entry>::iterator> index_;
  std::uint64_t hits_ = 0;
  std::uint64_t misses_ = 0;
};

}  // namespace mfee
