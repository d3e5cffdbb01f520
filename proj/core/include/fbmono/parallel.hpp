#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace fbmono {

/// Worker count for parallel loops. Initialized from FBMONO_THREADS, else the
/// hardware concurrency.
int parallelism_width();
void set_parallelism_width(int width);

/// Runs body(begin, end) over fixed-size blocks of [0, n). Block boundaries do
/// not depend on the worker count, so per-block results are reproducible.
void parallel_blocks(std::size_t n, std::size_t block, const std::function<void(std::size_t, std::size_t)>& body);

/// Sum of f(i) over [0, n), reduced block-wise in a fixed order.
template <typename T, typename F>
T deterministic_sum(std::size_t n, F&& f, T zero = T{})
{
    constexpr std::size_t kBlock = 64;
    const std::size_t blocks = (n + kBlock - 1) / kBlock;
    std::vector<T> partial(blocks, zero);
    parallel_blocks(n, kBlock, [&](std::size_t b, std::size_t e) {
        T acc = zero;
        for (std::size_t i = b; i < e; ++i) acc += f(i);
        partial[b / kBlock] = acc;
    });
    T total = zero;
    for (const T& p : partial) total += p;
    return total;
}

}  // namespace fbmono
