#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include "seriation/rng.hpp"

using namespace seriation;

TEST_CASE("counter access is stateless and order-free") {
  const std::uint64_t seed = 0xDEADBEEFCAFE1234ULL;
  const std::uint64_t a = rng::at(seed, 17);
  const std::uint64_t b = rng::at(seed, 3);
  CHECK(rng::at(seed, 3) == b);
  CHECK(rng::at(seed, 17) == a);
  CHECK(a != b);
}

TEST_CASE("stream replays the counter sequence") {
  rng::Stream stream(42);
  std::vector<std::uint64_t> first;
  for (int i = 0; i < 10; ++i) first.push_back(stream.next());
  for (int i = 0; i < 10; ++i) {
    CHECK(first[static_cast<std::size_t>(i)] ==
          rng::at(42, static_cast<std::uint64_t>(i)));
  }
}

TEST_CASE("uniform01 lies in [0,1) and is roughly uniform") {
  double sum = 0.0;
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    const double u = rng::uniform01(7, static_cast<std::uint64_t>(i));
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    sum += u;
  }
  // Mean of 1e5 uniforms: sd ~ 0.0009, allow 5 sigma.
  CHECK(std::abs(sum / trials - 0.5) < 0.005);
}

TEST_CASE("derive separates streams with different tags") {
  const std::uint64_t base = 99;
  std::set<std::uint64_t> seeds;
  for (std::uint64_t tag = 0; tag < 1000; ++tag) {
    seeds.insert(rng::derive(base, tag));
  }
  CHECK(seeds.size() == 1000);
  CHECK(rng::derive(base, 5) == rng::derive(base, 5));
}

TEST_CASE("next_below is unbiased over small bounds") {
  rng::Stream stream(2024);
  std::vector<int> counts(10, 0);
  const int trials = 100000;
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t v = stream.next_below(10);
    REQUIRE(v < 10);
    ++counts[static_cast<std::size_t>(v)];
  }
  for (int c : counts) {
    // Binomial(1e5, 0.1): sd ~ 95, allow 5 sigma.
    CHECK(std::abs(c - trials / 10) < 500);
  }
}

TEST_CASE("shuffle is a permutation and depends on the seed") {
  std::vector<int> v(100);
  std::iota(v.begin(), v.end(), 0);
  std::vector<int> a = v, b = v, c = v;
  rng::shuffle(a, 1);
  rng::shuffle(b, 1);
  rng::shuffle(c, 2);
  CHECK(a == b);
  CHECK(a != c);
  std::sort(a.begin(), a.end());
  CHECK(a == v);
}

TEST_CASE("shuffle visits permutations uniformly on a small set") {
  // 3! = 6 outcomes; chi-square style tolerance over 60000 draws.
  std::map<std::vector<int>, int> counts;
  for (std::uint64_t s = 0; s < 60000; ++s) {
    std::vector<int> v{0, 1, 2};
    rng::shuffle(v, rng::derive(31337, s));
    ++counts[v];
  }
  CHECK(counts.size() == 6);
  for (const auto& [perm, count] : counts) {
    CHECK(std::abs(count - 10000) < 500);  // sd ~ 91
  }
}
