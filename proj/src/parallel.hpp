#pragma once

#include <algorithm>
#include <cstddef>
#include <future>
#include <vector>

#include "qint/quaternion.hpp"

namespace qint::detail {

// Sums term(n) for n in [begin, end) in `threads` contiguous chunks, each with
// compensated accumulation; chunk totals are combined in index order so the
// result only depends on the chunk count.
template <class Term>
Quaternion chunked_sum(std::size_t begin, std::size_t end, unsigned threads, const Term& term) {
    auto run = [&term](std::size_t lo, std::size_t hi) {
        QuaternionAccumulator acc;
        for (std::size_t n = lo; n < hi; ++n) acc.add(term(n));
        return acc.value();
    };
    const std::size_t count = end > begin ? end - begin : 0;
    const std::size_t chunks = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(count, 1));
    if (chunks == 1) return run(begin, end);

    std::vector<std::future<Quaternion>> parts;
    parts.reserve(chunks);
    for (std::size_t c = 0; c < chunks; ++c) {
        const std::size_t lo = begin + count * c / chunks;
        const std::size_t hi = begin + count * (c + 1) / chunks;
        parts.push_back(std::async(std::launch::async, run, lo, hi));
    }
    QuaternionAccumulator total;
    for (auto& p : parts) total.add(p.get());
    return total.value();
}

} // namespace qint::detail
