#include "atomfield/theorem.hpp"

#include <map>
#include <sstream>

#include "atomfield/errors.hpp"

namespace atomfield::symb {

TermSum dyson_order_contribution(int n, int bra, int ket) {
    if (n == 0) {
        if (bra != ket) return {};
        Term id;
        id.coeff = Coefficient::one();
        id.dim = 0;
        return TermSum::from_terms({id});
    }
    TermSum me = matrix_element_word(n, bra, ket);
    TermSum collapsed = integrate_simplex(apply_markov_rule(normal_order(me)), n);
    // (-i)^n prefactor
    Coefficient pref = Coefficient::one();
    for (int k = 0; k < n; ++k) pref = pref.times_minus_i();
    return collapsed.scaled(pref);
}

TermSum theorem_target(int bra, int ket, int n_max) {
    std::vector<Term> terms;
    if (bra == ket) {
        Term id;
        id.coeff = Coefficient::one();
        id.dim = 0;
        terms.push_back(id);
    }
    if (bra == 1 && ket == 1) {
        // A'(t_2)...A'(t_2n) A(t_1)...A(t_2n-1), coefficient (-1)^n
        for (int n = 1; 2 * n <= n_max; ++n) {
            Term t;
            t.dim = 2 * n;
            t.coeff = Coefficient::integer(n % 2 == 0 ? 1 : -1);
            for (int j = 2; j <= 2 * n; j += 2) t.word.push_back({FactorKind::APrime, j});
            for (int j = 1; j <= 2 * n - 1; j += 2) t.word.push_back({FactorKind::AField, j});
            terms.push_back(std::move(t));
        }
    } else if (bra == 0 && ket == 0) {
        // A'(t_1)...A'(t_2n-1) A(t_2)...A(t_2n)
        for (int n = 1; 2 * n <= n_max; ++n) {
            Term t;
            t.dim = 2 * n;
            t.coeff = Coefficient::integer(n % 2 == 0 ? 1 : -1);
            for (int j = 1; j <= 2 * n - 1; j += 2) t.word.push_back({FactorKind::APrime, j});
            for (int j = 2; j <= 2 * n; j += 2) t.word.push_back({FactorKind::AField, j});
            terms.push_back(std::move(t));
        }
    } else if (bra == 0 && ket == 1) {
        // (-i)^{2n-1}, dim 2n-1, A' at odd labels, A at even labels
        for (int n = 1; 2 * n - 1 <= n_max; ++n) {
            Term t;
            t.dim = 2 * n - 1;
            Coefficient c = Coefficient::one();
            for (int k = 0; k < 2 * n - 1; ++k) c = c.times_minus_i();
            t.coeff = c;
            for (int j = 1; j <= 2 * n - 1; j += 2) t.word.push_back({FactorKind::APrime, j});
            for (int j = 2; j <= 2 * n - 2; j += 2) t.word.push_back({FactorKind::AField, j});
            terms.push_back(std::move(t));
        }
    } else {
        // (1,0): A' at even labels, A at odd labels
        for (int n = 1; 2 * n - 1 <= n_max; ++n) {
            Term t;
            t.dim = 2 * n - 1;
            Coefficient c = Coefficient::one();
            for (int k = 0; k < 2 * n - 1; ++k) c = c.times_minus_i();
            t.coeff = c;
            for (int j = 2; j <= 2 * n - 2; j += 2) t.word.push_back({FactorKind::APrime, j});
            for (int j = 1; j <= 2 * n - 1; j += 2) t.word.push_back({FactorKind::AField, j});
            terms.push_back(std::move(t));
        }
    }
    return TermSum::from_terms(std::move(terms));
}

TheoremReport verify_theorem1(int n_max) {
    if (n_max < 1 || n_max > 8)
        throw atomfield::CapacityError("verify_theorem1: n_max must be in [1, 8]");
    TheoremReport rep;
    rep.n_max = n_max;
    for (int bra = 0; bra <= 1; ++bra) {
        for (int ket = 0; ket <= 1; ++ket) {
            TermSum total;
            for (int n = 0; n <= n_max; ++n)
                total = total + dyson_order_contribution(n, bra, ket);
            TermSum residual = total - theorem_target(bra, ket, n_max);

            // Group by (dim, b-degree). For these sums the degree is fixed by
            // dim - word length, and every coefficient must be degree-pure.
            std::map<std::pair<int, int>, std::vector<Term>> classes;
            for (const Term& t : residual.terms) {
                const int deg = t.coeff.uniform_degree();
                const int expect = t.dim - static_cast<int>(t.word.size());
                if (deg != expect)
                    throw atomfield::VerificationError(
                        "verify_theorem1: mixed-degree residual term " + t.to_sexpr());
                classes[{t.dim, deg}].push_back(t);
            }
            for (auto& [key, ts] : classes) {
                ResidualClass rc;
                rc.bra = bra;
                rc.ket = ket;
                rc.dim = key.first;
                rc.bdeg = key.second;
                rc.complete = key.first + key.second <= n_max;
                rc.residual = TermSum::from_terms(ts);
                if (rc.complete) {
                    rep.failed_classes += 1;
                    rep.failures.push_back(std::move(rc));
                } else {
                    if (rc.bdeg < 1)
                        throw atomfield::VerificationError(
                            "verify_theorem1: b-free residual escaped the target");
                    rep.pending.push_back(std::move(rc));
                }
            }
            // Count the complete classes that were checked (zero or not): all
            // (dim, k) with dim + k <= n_max, k >= 1, dim >= k, matching parity.
            for (int dim = 1; dim <= n_max; ++dim)
                for (int k = 1; k + dim <= n_max; ++k)
                    if (k <= dim) rep.complete_classes += 1;
        }
    }
    return rep;
}

std::string TheoremReport::summary() const {
    std::ostringstream os;
    os << "theorem1 n_max=" << n_max << ": " << (ok() ? "PASS" : "FAIL")
       << ", complete residual classes zero except " << failed_classes
       << ", pending higher-order classes " << pending.size() << "\n";
    for (const auto& f : failures) {
        os << "  nonzero residual element (" << f.bra << "," << f.ket << ") dim="
           << f.dim << " bdeg=" << f.bdeg << ":\n" << f.residual.to_sexpr();
    }
    return os.str();
}

}  // namespace atomfield::symb
