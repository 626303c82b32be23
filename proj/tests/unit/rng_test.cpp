#include <doctest.h>

#include <cmath>

#include "sfcaas/rng.hpp"

using sfcaas::Rng;

TEST_CASE("same seed reproduces the stream") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different seeds and substreams diverge") {
  Rng a(1), b(2);
  CHECK(a.next_u64() != b.next_u64());

  Rng root(7);
  Rng s1 = root.substream("topology");
  Rng s2 = root.substream("workload");
  CHECK(s1.next_u64() != s2.next_u64());

  // substreams depend only on the root seed, not on draws already made
  Rng again(7);
  again.next_u64();
  CHECK(again.substream("topology").next_u64() == Rng(7).substream("topology").next_u64());
}

TEST_CASE("uniform01 stays in [0,1)") {
  Rng r(3);
  for (int i = 0; i < 10000; ++i) {
    double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform_int covers the inclusive range") {
  Rng r(5);
  bool saw_lo = false, saw_hi = false;
  for (int i = 0; i < 5000; ++i) {
    auto v = r.uniform_int(2, 6);
    CHECK(v >= 2);
    CHECK(v <= 6);
    saw_lo = saw_lo || v == 2;
    saw_hi = saw_hi || v == 6;
  }
  CHECK(saw_lo);
  CHECK(saw_hi);
}

TEST_CASE("exponential and poisson means land near their targets") {
  Rng r(11);
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) sum += r.exponential(35.0);
  CHECK(std::abs(sum / n - 35.0) / 35.0 < 0.05);

  long psum = 0;
  for (int i = 0; i < n; ++i) psum += r.poisson(6.0);
  CHECK(std::abs(static_cast<double>(psum) / n - 6.0) / 6.0 < 0.05);
}
