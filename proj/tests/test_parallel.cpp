#include "fbmono/parallel.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace fbmono;

TEST(Parallel, SumIsIndependentOfWorkerCount)
{
    auto term = [](std::size_t i) { return std::sin(0.37 * static_cast<double>(i)) * 1e-3 + 1.0 / (1.0 + i); };
    const int saved = parallelism_width();
    set_parallelism_width(1);
    const double one = deterministic_sum<double>(10007, term, 0.0);
    set_parallelism_width(4);
    const double four = deterministic_sum<double>(10007, term, 0.0);
    set_parallelism_width(saved);
    EXPECT_EQ(one, four);
}

TEST(Parallel, BlocksCoverRangeOnce)
{
    std::vector<int> hits(1000, 0);
    parallel_blocks(hits.size(), 64, [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i) ++hits[i];
    });
    for (int h : hits) EXPECT_EQ(h, 1);
}

TEST(Parallel, EmptyRange)
{
    EXPECT_EQ(deterministic_sum<double>(0, [](std::size_t) { return 1.0; }, 0.0), 0.0);
}
