#pragma once

#include <complex>
#include <map>
#include <vector>

#include "atomfield/term_algebra.hpp"

namespace atomfield::symb {

using cdouble = std::complex<double>;

// Concrete realization data for a TermSum on a truncated multimode Fock space
// (tensored with the two-level atom when atom factors occur).
//
// a/a-dagger labels map to modes; A/A' labels map to coefficient vectors over
// the modes, A(t_i) = sum_m c_i[m] a_m and A'(t_i) = sum_m d_i[m] a-dagger_m,
// so kernel values are derived, [A(t_i), A'(t_j)] = sum_m c_i[m] d_j[m].
struct FockAssignment {
    int modes = 1;
    int nmax = 2;  // per-mode occupation cap
    std::map<int, int> mode_of_index;
    std::map<int, std::pair<std::vector<cdouble>, std::vector<cdouble>>> drive;
    cdouble b_value{0.0, 0.0};
    std::map<std::pair<int, int>, cdouble> delta_time_values;

    cdouble kernel_value(const KernelFactor& k) const;
};

struct FockEval {
    int dim = 0;
    bool atom_sector = false;
    std::vector<cdouble> matrix;       // row-major dim x dim
    std::vector<bool> column_safe;     // false when truncation clipped a column

    cdouble at(int row, int col) const { return matrix[static_cast<std::size_t>(row) * dim + col]; }
};

// Numeric evaluation of a TermSum on the truncated space. Columns whose
// intermediate states overflow the occupation cap are flagged unsafe; the
// caller must enlarge nmax for those. Guard: modes <= 4, nmax <= 4.
FockEval evaluate_on_truncated_fock(const TermSum& sum, const FockAssignment& asg);

// max |A - B| over rows of columns safe in both evaluations; throws when no
// safe column exists.
double max_safe_difference(const FockEval& a, const FockEval& b);

}  // namespace atomfield::symb
