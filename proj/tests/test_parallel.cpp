#include <cstdlib>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "coulomb_momentum/parallel.hpp"

using namespace coulomb_momentum::parallel;

TEST(MapIndexed, PreservesOrder) {
  for (unsigned workers : {1u, 2u, 7u}) {
    const auto out = map_indexed(100, [](std::size_t i) { return static_cast<double>(i * i); }, workers);
    ASSERT_EQ(out.size(), 100u);
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], static_cast<double>(i * i));
  }
  EXPECT_TRUE(map_indexed(0, [](std::size_t) { return 1; }).empty());
}

TEST(MapIndexed, RethrowsLowestFailingIndex) {
  auto f = [](std::size_t i) -> int {
    if (i == 17 || i == 60) throw std::runtime_error(std::to_string(i));
    return 0;
  };
  for (unsigned workers : {1u, 4u}) {
    try {
      map_indexed(80, f, workers);
      FAIL() << "expected a throw";
    } catch (const std::runtime_error& e) {
      EXPECT_STREQ(e.what(), "17");
    }
  }
}

TEST(WorkerCount, EnvironmentCap) {
  ::setenv(kThreadsEnv, "1", 1);
  EXPECT_EQ(worker_count(), 1u);
  ::setenv(kThreadsEnv, "garbage", 1);
  EXPECT_GE(worker_count(), 1u);
  ::setenv(kThreadsEnv, "0", 1);
  EXPECT_GE(worker_count(), 1u);
  ::unsetenv(kThreadsEnv);
  EXPECT_GE(worker_count(), 1u);
}
