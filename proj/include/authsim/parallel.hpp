#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace authsim {

// Splits [0, total) into `workers` contiguous chunks and runs fn(begin, end,
// chunk_index) on each, joining before returning. Chunk boundaries depend
// only on (total, workers); callers keep determinism by writing results into
// per-index slots or per-chunk slots reduced in index order.
template <typename Fn>
void parallel_for_chunks(std::size_t total, int workers, Fn&& fn) {
    if (workers < 1) workers = 1;
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(workers),
                                                total == 0 ? 1 : total);
    if (w <= 1) {
        fn(std::size_t{0}, total, 0u);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(w);
    const std::size_t chunk = (total + w - 1) / w;
    for (std::size_t c = 0; c < w; ++c) {
        const std::size_t begin = c * chunk;
        const std::size_t end = std::min(total, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, begin, end, c] { fn(begin, end, static_cast<unsigned>(c)); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace authsim
