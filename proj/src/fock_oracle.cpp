#include "atomfield/fock_oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "atomfield/errors.hpp"

namespace atomfield::symb {

cdouble FockAssignment::kernel_value(const KernelFactor& k) const {
    switch (k.kind) {
        case KernelKind::FrTime: {
            const int ia = k.reversed ? k.hi : k.lo;  // A label
            const int ic = k.reversed ? k.lo : k.hi;  // A' label
            const auto& c = drive.at(ia).first;
            const auto& d = drive.at(ic).second;
            cdouble acc(0.0, 0.0);
            for (int m = 0; m < modes; ++m) acc += c[static_cast<std::size_t>(m)] * d[static_cast<std::size_t>(m)];
            return acc;
        }
        case KernelKind::DeltaOmega:
            return mode_of_index.at(k.lo) == mode_of_index.at(k.hi) ? cdouble(1.0, 0.0)
                                                                    : cdouble(0.0, 0.0);
        case KernelKind::DeltaTime: {
            auto it = delta_time_values.find({k.lo, k.hi});
            if (it == delta_time_values.end())
                throw std::invalid_argument("fock: no numeric value for time delta");
            return it->second;
        }
    }
    return cdouble(0.0, 0.0);
}

namespace {

struct Space {
    int modes, nmax, levels;
    bool atom;
    int boson_dim, dim;

    int occupation(int idx, int mode) const {
        int v = idx % boson_dim;
        for (int m = 0; m < mode; ++m) v /= levels;
        return v % levels;
    }
    int atom_bit(int idx) const { return idx / boson_dim; }
    int stride(int mode) const {
        int s = 1;
        for (int m = 0; m < mode; ++m) s *= levels;
        return s;
    }
};

// Apply one factor in place; returns false when the column overflowed the cap.
bool apply_factor(const Space& sp, const FockAssignment& asg, const Factor& f,
                  std::vector<cdouble>& v, std::vector<cdouble>& scratch) {
    bool ok = true;
    auto ladder = [&](int mode, bool raise, const cdouble& scale,
                      std::vector<cdouble>& out) {
        const int st = sp.stride(mode);
        for (int idx = 0; idx < sp.dim; ++idx) {
            const cdouble amp = v[static_cast<std::size_t>(idx)];
            if (amp == cdouble(0.0, 0.0)) continue;
            const int occ = sp.occupation(idx, mode);
            if (raise) {
                if (occ >= sp.nmax) {
                    ok = false;  // clipped by the truncation
                    continue;
                }
                out[static_cast<std::size_t>(idx + st)] +=
                    scale * std::sqrt(static_cast<double>(occ + 1)) * amp;
            } else {
                if (occ == 0) continue;
                out[static_cast<std::size_t>(idx - st)] +=
                    scale * std::sqrt(static_cast<double>(occ)) * amp;
            }
        }
    };

    std::fill(scratch.begin(), scratch.end(), cdouble(0.0, 0.0));
    switch (f.kind) {
        case FactorKind::Annihilate:
            ladder(asg.mode_of_index.at(f.index), false, cdouble(1.0, 0.0), scratch);
            break;
        case FactorKind::Create:
            ladder(asg.mode_of_index.at(f.index), true, cdouble(1.0, 0.0), scratch);
            break;
        case FactorKind::AField: {
            const auto& c = asg.drive.at(f.index).first;
            for (int m = 0; m < sp.modes; ++m)
                if (c[static_cast<std::size_t>(m)] != cdouble(0.0, 0.0))
                    ladder(m, false, c[static_cast<std::size_t>(m)], scratch);
            break;
        }
        case FactorKind::APrime: {
            const auto& d = asg.drive.at(f.index).second;
            for (int m = 0; m < sp.modes; ++m)
                if (d[static_cast<std::size_t>(m)] != cdouble(0.0, 0.0))
                    ladder(m, true, d[static_cast<std::size_t>(m)], scratch);
            break;
        }
        case FactorKind::SigmaPlus:
            for (int idx = 0; idx < sp.dim; ++idx)
                if (v[static_cast<std::size_t>(idx)] != cdouble(0.0, 0.0) && sp.atom_bit(idx) == 0)
                    scratch[static_cast<std::size_t>(idx + sp.boson_dim)] = v[static_cast<std::size_t>(idx)];
            break;
        case FactorKind::SigmaMinus:
            for (int idx = 0; idx < sp.dim; ++idx)
                if (v[static_cast<std::size_t>(idx)] != cdouble(0.0, 0.0) && sp.atom_bit(idx) == 1)
                    scratch[static_cast<std::size_t>(idx - sp.boson_dim)] = v[static_cast<std::size_t>(idx)];
            break;
        case FactorKind::ProjExcited:
            for (int idx = 0; idx < sp.dim; ++idx)
                if (sp.atom_bit(idx) == 1) scratch[static_cast<std::size_t>(idx)] = v[static_cast<std::size_t>(idx)];
            break;
    }
    v.swap(scratch);
    return ok;
}

}  // namespace

FockEval evaluate_on_truncated_fock(const TermSum& sum, const FockAssignment& asg) {
    if (asg.modes < 1 || asg.modes > 4)
        throw atomfield::CapacityError("fock: modes must be in [1, 4]");
    if (asg.nmax < 1 || asg.nmax > 6)
        throw atomfield::CapacityError("fock: nmax must be in [1, 6]");

    bool atom = false;
    for (const auto& t : sum.terms)
        for (const auto& f : t.word)
            if (!is_field(f.kind)) atom = true;

    Space sp;
    sp.modes = asg.modes;
    sp.nmax = asg.nmax;
    sp.levels = asg.nmax + 1;
    sp.atom = atom;
    sp.boson_dim = 1;
    for (int m = 0; m < sp.modes; ++m) sp.boson_dim *= sp.levels;
    sp.dim = atom ? 2 * sp.boson_dim : sp.boson_dim;

    FockEval out;
    out.dim = sp.dim;
    out.atom_sector = atom;
    out.matrix.assign(static_cast<std::size_t>(sp.dim) * sp.dim, cdouble(0.0, 0.0));
    out.column_safe.assign(static_cast<std::size_t>(sp.dim), true);

    std::vector<cdouble> v(static_cast<std::size_t>(sp.dim)), scratch(static_cast<std::size_t>(sp.dim));
    for (int col = 0; col < sp.dim; ++col) {
        for (const auto& t : sum.terms) {
            cdouble scale = t.coeff.evaluate(asg.b_value);
            for (const auto& k : t.kernels) scale *= asg.kernel_value(k);
            if (scale == cdouble(0.0, 0.0)) continue;
            std::fill(v.begin(), v.end(), cdouble(0.0, 0.0));
            v[static_cast<std::size_t>(col)] = 1.0;
            bool ok = true;
            for (auto it = t.word.rbegin(); it != t.word.rend(); ++it)
                ok = apply_factor(sp, asg, *it, v, scratch) && ok;
            if (!ok) out.column_safe[static_cast<std::size_t>(col)] = false;
            for (int row = 0; row < sp.dim; ++row)
                out.matrix[static_cast<std::size_t>(row) * sp.dim + col] += scale * v[static_cast<std::size_t>(row)];
        }
    }
    return out;
}

double max_safe_difference(const FockEval& a, const FockEval& b) {
    if (a.dim != b.dim) throw std::invalid_argument("fock: dimension mismatch");
    double worst = 0.0;
    bool any = false;
    for (int col = 0; col < a.dim; ++col) {
        if (!a.column_safe[static_cast<std::size_t>(col)] || !b.column_safe[static_cast<std::size_t>(col)]) continue;
        any = true;
        for (int row = 0; row < a.dim; ++row)
            worst = std::max(worst, std::abs(a.at(row, col) - b.at(row, col)));
    }
    if (!any) throw atomfield::CapacityError("fock: no safe columns, enlarge nmax");
    return worst;
}

}  // namespace atomfield::symb
