#include <holderlab/parallel.hpp>

#include <atomic>
#include <cstdlib>
#include <thread>

namespace holderlab {

namespace {
std::atomic<unsigned> g_threads{0};

unsigned resolve_threads() {
    unsigned n = g_threads.load();
    if (n != 0) return n;
    if (const char* env = std::getenv("HOLDERLAB_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}
}  // namespace

void set_thread_count(unsigned n) { g_threads.store(n); }

unsigned thread_count() { return resolve_threads(); }

void parallel_for_chunks(std::size_t count, std::size_t chunk,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
    if (count == 0) return;
    if (chunk == 0) chunk = 1;
    const std::size_t chunks = (count + chunk - 1) / chunk;
    const unsigned workers = std::min<std::size_t>(resolve_threads(), chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c)
            fn(c * chunk, std::min(count, (c + 1) * chunk));
        return;
    }
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= chunks) return;
            fn(c * chunk, std::min(count, (c + 1) * chunk));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (unsigned i = 0; i + 1 < workers; ++i) pool.emplace_back(body);
    body();
    for (auto& t : pool) t.join();
}

}  // namespace holderlab
