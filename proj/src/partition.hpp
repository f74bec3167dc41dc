#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace xsplane::detail {

// Runs fn(part_index, unit_count) over fixed-size partitions of `total`
// units and folds the tallies with merge(acc, tally). The partition set
// depends only on (total, part_size) and merge must be commutative, so
// the result is identical for every thread count.
template <class Tally, class Fn, class Merge>
Tally run_partitioned(std::uint64_t total, std::uint64_t part_size,
                      int threads, Fn fn, Merge merge) {
    Tally result{};
    if (total == 0) return result;
    const std::uint64_t parts = (total + part_size - 1) / part_size;
    auto part_count = [&](std::uint64_t j) {
        return std::min(part_size, total - j * part_size);
    };

    if (threads <= 1 || parts <= 1) {
        for (std::uint64_t j = 0; j < parts; ++j) {
            Tally tally = fn(j, part_count(j));
            merge(result, tally);
        }
        return result;
    }

    const int workers = static_cast<int>(
        std::min<std::uint64_t>(static_cast<std::uint64_t>(threads), parts));
    std::atomic<std::uint64_t> next{0};
    std::vector<Tally> per_thread(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            Tally local{};
            for (;;) {
                const std::uint64_t j = next.fetch_add(1);
                if (j >= parts) break;
                Tally tally = fn(j, part_count(j));
                merge(local, tally);
            }
            per_thread[static_cast<std::size_t>(t)] = std::move(local);
        });
    }
    for (auto& th : pool) th.join();
    for (auto& local : per_thread) merge(result, local);
    return result;
}

}  // namespace xsplane::detail
