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

#include <doctest.h>

#include <string>
#include <thread>
#include <vector>

#include "mfee/response_cache.hpp"

using mfee::ResponseCache;

TEST_CASE("cache stores and retrieves by key and fingerprint") {
  ResponseCache cache(4);
  cache.store("what is 2+2", 111, "4");
  CHECK(cache.lookup("what is 2+2", 111) == "4");
  CHECK(!cache.lookup("what is 2+2", 222).has_value());
  CHECK(!cache.lookup("what is 3+3", 111).has_value());
  CHECK(cache.hit_count() == 1);
  CHECK(cache.miss_count() == 2);
}

TEST_CASE("same key under different fingerprints stays isolated") {
  ResponseCache cache(4);
  cache.store("k", 1, "model-a answer");
  cache.store("k", 2, "model-b answer");
  CHECK(cache.lookup("k", 1) == "model-a answer");
  CHECK(cache.lookup("k", 2) == "model-b answer");
  CHECK(cache.size() == 2);
}

TEST_CASE("store overwrites an existing entry") {
  ResponseCache cache(2);
  cache.store("k", 1, "old");
  cache.store("k", 1, "new");
  CHECK(cache.size() == 1);
  CHECK(cache.lookup("k", 1) == "new");
}

TEST_CASE("eviction removes the least recently used entry") {
  ResponseCache cache(2);
  cache.store("a", 0, "A");
  cache.store("b", 0, "B");
  CHECK(cache.lookup("a", 0) == "A");  // refresh a; b is now LRU
  cache.store("c", 0, "C");
  CHECK(cache.size() == 2);
  CHECK(!cache.lookup("b", 0).has_value());
  CHECK(cache.lookup("a", 0) == "A");
  CHECK(cache.lookup("c", 0) == "C");
}

TEST_CASE("clear empties the cache but keeps capacity") {
  ResponseCache cache(3);
  cache.store("a", 0, "A");
  cache.clear();
  CHECK(cache.size() == 0);
  CHECK(cache.capacity() == 3);
  CHECK(!cache.lookup("a", 0).has_value());
}

TEST_CASE("cache tolerates concurrent readers and writers") {
  ResponseCache cache(128);
  for (int i = 0; i < 64; ++i) {
    cache.store("key" + std::to_string(i), 0, std::to_string(i));
  }
  std::vector<std::thread> workers;
  for (int t = 0; t < 4; ++t) {
    workers.emplace_back([&cache, t] {
      for (int round = 0; round < 2000; ++round) {
        const int i = (round * 7 + t) % 64;
        const auto hit = cache.lookup("key" + std::to_string(i), 0);
        if (hit) CHECK(*hit == std::to_string(i));
        if (round % 17 == 0) {
          cache.store("key" + std::to_string(i), 0, std::to_string(i));
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  CHECK(cache.size() <= 128);
}
