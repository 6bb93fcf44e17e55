/*
 * Copyright 2026 The mdproj Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>
#include <vector>

#include "mdproj/parallel.hpp"
#include "mdproj/random.hpp"

using namespace mdproj;

TEST_CASE("seed derivation") {
  CHECK(derive_seed(1, 64, 3, StreamRole::Theta) == derive_seed(1, 64, 3, StreamRole::Theta));
  std::set<std::uint64_t> seen;
  for (std::uint64_t master : {0ull, 1ull, 2ull}) {
    for (std::uint64_t n : {2ull, 64ull}) {
      for (std::uint64_t r = 0; r < 50; ++r) {
        for (auto role : {StreamRole::Theta, StreamRole::Paths, StreamRole::Design}) {
          seen.insert(derive_seed(master, n, r, role));
        }
      }
    }
  }
  CHECK(seen.size() == 3 * 2 * 50 * 3);
}

TEST_CASE("stream variates") {
  Stream a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  Stream rng(7);
  double sum = 0.0, sum2 = 0.0, sum4 = 0.0, rsum = 0.0;
  const int draws = 200000;
  for (int i = 0; i < draws; ++i) {
    const double u = rng.uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
    sum4 += z * z * z * z;
    const double r = rng.rademacher();
    CHECK(std::abs(r) == 1.0);
    rsum += r;
  }
  CHECK(std::abs(sum / draws) < 0.01);
  CHECK(std::abs(sum2 / draws - 1.0) < 0.01);
  CHECK(std::abs(sum4 / draws - 3.0) < 0.05);
  CHECK(std::abs(rsum / draws) < 0.01);
}

TEST_CASE("parallel_for visits every index once") {
  for (int threads : {1, 2, 4, 7}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), threads, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) CHECK(h.load() == 1);
  }
  parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); });
}

TEST_CASE("parallel_for rethrows the lowest failing index") {
  for (int threads : {1, 4}) {
    try {
      parallel_for(200, threads, [](std::size_t i) {
        if (i == 37 || i == 150) throw std::runtime_error(std::to_string(i));
      });
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "37");
    }
  }
}

TEST_CASE("thread count resolution") {
  CHECK(resolve_threads(3) == 3);
  ::setenv("MPL_THREADS", "5", 1);
  CHECK(resolve_threads(0) == 5);
  ::unsetenv("MPL_THREADS");
  CHECK(resolve_threads(0) >= 1);
}
