#pragma once

#include <compare>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace atomfield::symb {

// Factors of an operator word. A/A' carry a formal time label, a/a-dagger a
// formal frequency label; atom operators carry no label.
enum class FactorKind : std::uint8_t {
    AField,      // A(t_i)
    APrime,      // A'(t_i)
    Annihilate,  // a(w_i)
    Create,      // a-dagger(w_i)
    SigmaPlus,
    SigmaMinus,
    ProjExcited,  // |1><1|
};

struct Factor {
    FactorKind kind;
    int index = 0;  // positive formal label; 0 for atom operators
    auto operator<=>(const Factor&) const = default;
};

bool is_creation(FactorKind k);
bool is_annihilation(FactorKind k);
bool is_field(FactorKind k);

// Scalar kernel factors produced by commutators.
enum class KernelKind : std::uint8_t {
    FrTime,      // F^r(t_lo - t_hi), or F^r(t_hi - t_lo) when reversed
    DeltaTime,   // delta(t_lo - t_hi)
    DeltaOmega,  // delta(w_lo - w_hi)
};

struct KernelFactor {
    KernelKind kind;
    int lo = 0, hi = 0;   // lo < hi canonical
    bool reversed = false;  // FrTime only: argument is t_hi - t_lo
    auto operator<=>(const KernelFactor&) const = default;
};

// Exact polynomial in b and b* with Gaussian-integer coefficients.
// Monomial key: (power of b, power of b*).
struct Coefficient {
    std::map<std::pair<int, int>, std::pair<std::int64_t, std::int64_t>> mono;

    static Coefficient zero();
    static Coefficient one();
    static Coefficient unit_i();  // the imaginary unit
    static Coefficient integer(std::int64_t n);
    static Coefficient b();
    static Coefficient b_star();

    bool is_zero() const;
    Coefficient& operator+=(const Coefficient& o);
    Coefficient operator*(const Coefficient& o) const;
    Coefficient times_i() const;
    Coefficient times_minus_i() const;
    Coefficient negate() const;
    bool operator==(const Coefficient& o) const = default;

    // total degree in b and b* of every monomial; -1 when mixed degrees occur
    int uniform_degree() const;
    std::complex<double> evaluate(std::complex<double> b_value) const;
    std::string to_string() const;
};

// One summand: coefficient * kernels * word, integrated over a time simplex
// t_1 >= t_2 >= ... >= t_dim (dim = number of live time labels).
struct Term {
    Coefficient coeff;
    std::vector<KernelFactor> kernels;
    std::vector<Factor> word;
    int dim = 0;

    void canonicalize();  // sorts kernels; sorts commuting blocks of a
                          // normal-ordered word; drops nothing
    std::string to_sexpr() const;
};

// Canonically ordered, merged sum of terms. Zero terms are dropped.
struct TermSum {
    std::vector<Term> terms;

    static TermSum from_terms(std::vector<Term> in);
    TermSum operator+(const TermSum& o) const;
    TermSum operator-(const TermSum& o) const;
    TermSum scaled(const Coefficient& c) const;
    bool empty() const { return terms.empty(); }
    bool operator==(const TermSum& o) const = default;
    std::string to_sexpr() const;  // one term per line, stable ordering
};

bool word_is_normal_ordered(const std::vector<Factor>& word);

// <bra| H~(t_1) ... H~(t_n) |ket> with H~ = sigma+ A(t) + sigma- A'(t) + i b P1,
// expanded exactly over the atom algebra. Terms carry dim = n.
// Guard: 1 <= n <= 12.
TermSum matrix_element_word(int n, int bra, int ket);

// Wick normal ordering. Words must be pure A/A' or pure a/a-dagger;
// contractions produce F^r (A-family) or delta(w) (a-family) kernels.
TermSum normal_order(const TermSum& sum);

// F^r(t_i - t_j) -> b delta(t_i - t_j) (positive orientation under the
// simplex convention t_i >= t_j for i < j), reversed orientation -> b*.
// delta(w_i - w_j) kernels are routed through the same rule.
TermSum apply_markov_rule(const TermSum& sum);

// Time-simplex integration bookkeeping: terms with a non-neighboring delta
// vanish; each neighboring delta removes one time label; remaining labels are
// renumbered contiguously and dim is reduced accordingly.
TermSum integrate_simplex(const TermSum& sum, int n);

}  // namespace atomfield::symb
