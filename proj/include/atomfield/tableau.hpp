#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace atomfield::symb {

// Row-length list mu = (|mu_1|, ..., |mu_{l+1}|): l+1 rows for l ladder pairs,
// each block an insertion slot in the integrated Dyson term.
struct Diagram {
    std::vector<long> rows;

    explicit Diagram(std::vector<long> r);
    int pairs() const { return static_cast<int>(rows.size()) - 1; }
    long blocks() const;
};

// Ladder-pair positions P_r = sum_{j<=r} |mu_j| + 2r - 1, as (P_r, P_r + 1).
std::vector<std::pair<long, long>> diagram_positions(const Diagram& mu);

// Exhaustive alternating sum over 0/1 fillings of the blocks:
// sum_y (-1)^{wt(y)}. 1 for the empty diagram, 0 otherwise.
// Guard: |mu| <= 24.
long long tableau_weight_sum(const Diagram& mu);

// Multiplicity of weight-m fillings in the aggregated bookkeeping,
// (|mu|+l)! / (l! m! (|mu|-m)!) = C(|mu|, m) * C(|mu|+l, l).
std::uint64_t tableau_fill_count(const Diagram& mu, int m);

}  // namespace atomfield::symb
