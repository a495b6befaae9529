#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace holderlab {

/// Number of worker threads used by parallel kernels. 0 = auto
/// (HOLDERLAB_THREADS environment variable, else hardware concurrency).
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs fn(begin, end) over [0, count) split into fixed-size chunks pulled
/// from a shared counter. Chunk boundaries depend only on `count`, never on
/// the worker count, so any per-chunk results are reproducible.
void parallel_for_chunks(std::size_t count, std::size_t chunk,
                         const std::function<void(std::size_t, std::size_t)>& fn);

/// Map-reduce with a deterministic reduction order: partial results are
/// stored per chunk and folded sequentially in chunk order.
template <typename T, typename Map, typename Fold>
T parallel_reduce(std::size_t count, std::size_t chunk, T init, Map map, Fold fold) {
    if (count == 0) return init;
    const std::size_t chunks = (count + chunk - 1) / chunk;
    std::vector<T> partial(chunks, init);
    parallel_for_chunks(count, chunk, [&](std::size_t begin, std::size_t end) {
        partial[begin / chunk] = map(begin, end);
    });
    T acc = init;
    for (const T& p : partial) acc = fold(acc, p);
    return acc;
}

}  // namespace holderlab
