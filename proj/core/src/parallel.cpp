#include "fbmono/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

namespace fbmono {

namespace {

int initial_width()
{
    if (const char* env = std::getenv("FBMONO_THREADS")) {
        try {
            const int w = std::stoi(env);
            if (w > 0) return w;
        } catch (const std::exception&) {
        }
    }
    return std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
}

std::atomic<int>& width_slot()
{
    static std::atomic<int> width{initial_width()};
    return width;
}

}  // namespace

int parallelism_width() { return width_slot().load(); }

void set_parallelism_width(int width) { width_slot().store(std::max(1, width)); }

void parallel_blocks(std::size_t n, std::size_t block, const std::function<void(std::size_t, std::size_t)>& body)
{
    const std::size_t blocks = (n + block - 1) / block;
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(parallelism_width()), blocks);
    if (workers <= 1) {
        for (std::size_t b = 0; b < blocks; ++b) body(b * block, std::min(n, (b + 1) * block));
        return;
    }
    std::atomic<std::size_t> next{0};
    auto run = [&] {
        for (std::size_t b = next++; b < blocks; b = next++) body(b * block, std::min(n, (b + 1) * block));
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
    run();
}

}  // namespace fbmono
