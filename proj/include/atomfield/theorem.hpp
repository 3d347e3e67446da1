#pragma once

#include <string>
#include <vector>

#include "atomfield/term_algebra.hpp"

namespace atomfield::symb {

// One graded residual class of the truncated Dyson comparison. A class is
// labelled by (dim, bdeg); it is complete once every filling weight fits
// inside the truncation, i.e. dim + bdeg <= n_max.
struct ResidualClass {
    int bra = 0, ket = 0;
    int dim = 0;
    int bdeg = 0;
    bool complete = false;
    TermSum residual;
};

struct TheoremReport {
    int n_max = 0;
    int complete_classes = 0;       // classes that must cancel exactly
    int failed_classes = 0;         // complete classes with nonzero residual
    std::vector<ResidualClass> failures;  // nonzero complete classes
    std::vector<ResidualClass> pending;   // incomplete classes (cancel at higher order)
    bool ok() const { return failed_classes == 0; }
    std::string summary() const;
};

// (-i)^n integrate_simplex(markov(normal_order(<bra|H~^n|ket>))); n = 0 gives
// the identity contribution.
TermSum dyson_order_contribution(int n, int bra, int ket);

// Truncation of the S-propagator element series: normal-ordered ladder words
// over simplexes with dim <= n_max, plus the identity on diagonal elements.
TermSum theorem_target(int bra, int ket, int n_max);

// Full pipeline for all four elements and all orders <= n_max; every complete
// residual class must be the exact zero TermSum. Guard: n_max <= 8.
TheoremReport verify_theorem1(int n_max);

}  // namespace atomfield::symb
