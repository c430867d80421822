#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace pnlie {

/// Splits [0, count) into contiguous chunks, one per worker, and runs
/// fn(begin, end, result) on each. Results come back in chunk order, so
/// merging them left to right gives the same answer for any worker count.
template <class Result, class Fn>
std::vector<Result> run_chunks(std::size_t count, unsigned threads, Fn fn) {
    std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
    std::vector<Result> results(workers);
    if (workers == 1) {
        fn(std::size_t{0}, count, results[0]);
        return results;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        std::size_t begin = count * w / workers, end = count * (w + 1) / workers;
        pool.emplace_back([&, w, begin, end] {
            try {
                fn(begin, end, results[w]);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

}  // namespace pnlie
