#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace pdgraph {

inline unsigned resolve_threads(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// Runs fn(replicate, acc) for replicate in [0, n), accumulating into one Acc
// per fixed-size chunk, then merges the chunk results in index order. The
// reduction order is therefore independent of the number of worker threads,
// which keeps floating-point aggregates bit-identical across thread counts.
template <typename Acc, typename PerReplicate, typename Merge>
Acc parallel_accumulate(std::uint64_t n, const Acc& init, PerReplicate fn, Merge merge,
                        unsigned threads = 0, std::uint64_t chunk_size = 1024) {
    const std::uint64_t n_chunks = (n + chunk_size - 1) / chunk_size;
    std::vector<Acc> partials(n_chunks, init);
    const unsigned workers =
        static_cast<unsigned>(std::min<std::uint64_t>(resolve_threads(threads), std::max<std::uint64_t>(n_chunks, 1)));

    std::atomic<std::uint64_t> next_chunk{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};

    auto work = [&]() {
        while (true) {
            const std::uint64_t c = next_chunk.fetch_add(1);
            if (c >= n_chunks || failed.load()) return;
            const std::uint64_t lo = c * chunk_size;
            const std::uint64_t hi = std::min(n, lo + chunk_size);
            try {
                for (std::uint64_t r = lo; r < hi; ++r) fn(r, partials[c]);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) std::rethrow_exception(error);

    Acc total = init;
    for (const auto& part : partials) merge(total, part);
    return total;
}

}  // namespace pdgraph
