#include "atomfield/tableau.hpp"

#include <stdexcept>

#include "atomfield/errors.hpp"

namespace atomfield::symb {

Diagram::Diagram(std::vector<long> r) : rows(std::move(r)) {
    if (rows.empty()) throw std::invalid_argument("diagram: needs at least one row");
    for (long v : rows)
        if (v < 0) throw std::invalid_argument("diagram: negative row length");
}

long Diagram::blocks() const {
    long total = 0;
    for (long v : rows) total += v;
    return total;
}

std::vector<std::pair<long, long>> diagram_positions(const Diagram& mu) {
    std::vector<std::pair<long, long>> out;
    long prefix = 0;
    for (int r = 1; r <= mu.pairs(); ++r) {
        prefix += mu.rows[static_cast<std::size_t>(r - 1)];
        const long p = prefix + 2L * r - 1;
        out.emplace_back(p, p + 1);
    }
    return out;
}

long long tableau_weight_sum(const Diagram& mu) {
    const long n = mu.blocks();
    if (n > 24) throw atomfield::CapacityError("tableau_weight_sum: |mu| > 24");
    long long acc = 0;
    const std::uint64_t fills = 1ull << n;
    for (std::uint64_t y = 0; y < fills; ++y)
        acc += (__builtin_popcountll(y) % 2 == 0) ? 1 : -1;
    return acc;
}

namespace {

std::uint64_t binom_checked(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 acc = 1;
    for (long i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned __int128>(n - k + i);
        acc /= static_cast<unsigned __int128>(i);
        if (acc > static_cast<unsigned __int128>(UINT64_MAX))
            throw atomfield::CapacityError("tableau_fill_count: overflow");
    }
    return static_cast<std::uint64_t>(acc);
}

}  // namespace

std::uint64_t tableau_fill_count(const Diagram& mu, int m) {
    const long n = mu.blocks();
    const long l = mu.pairs();
    if (m < 0 || m > n) return 0;
    const std::uint64_t a = binom_checked(n, m);
    const std::uint64_t b = binom_checked(n + l, l);
    const unsigned __int128 prod =
        static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
    if (prod > static_cast<unsigned __int128>(UINT64_MAX))
        throw atomfield::CapacityError("tableau_fill_count: overflow");
    return static_cast<std::uint64_t>(prod);
}

}  // namespace atomfield::symb
