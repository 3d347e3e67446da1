#include "atomfield/term_algebra.hpp"

#include <algorithm>
#include <sstream>

#include "atomfield/errors.hpp"

namespace atomfield::symb {

bool is_creation(FactorKind k) {
    return k == FactorKind::APrime || k == FactorKind::Create;
}
bool is_annihilation(FactorKind k) {
    return k == FactorKind::AField || k == FactorKind::Annihilate;
}
bool is_field(FactorKind k) { return is_creation(k) || is_annihilation(k); }

Coefficient Coefficient::zero() { return {}; }

Coefficient Coefficient::one() { return integer(1); }

Coefficient Coefficient::integer(std::int64_t n) {
    Coefficient c;
    if (n != 0) c.mono[{0, 0}] = {n, 0};
    return c;
}

Coefficient Coefficient::unit_i() {
    Coefficient c;
    c.mono[{0, 0}] = {0, 1};
    return c;
}

Coefficient Coefficient::b() {
    Coefficient c;
    c.mono[{1, 0}] = {1, 0};
    return c;
}

Coefficient Coefficient::b_star() {
    Coefficient c;
    c.mono[{0, 1}] = {1, 0};
    return c;
}

bool Coefficient::is_zero() const { return mono.empty(); }

Coefficient& Coefficient::operator+=(const Coefficient& o) {
    for (const auto& [key, val] : o.mono) {
        auto it = mono.find(key);
        if (it == mono.end()) {
            mono[key] = val;
        } else {
            it->second.first += val.first;
            it->second.second += val.second;
            if (it->second.first == 0 && it->second.second == 0) mono.erase(it);
        }
    }
    return *this;
}

Coefficient Coefficient::operator*(const Coefficient& o) const {
    Coefficient out;
    for (const auto& [ka, va] : mono) {
        for (const auto& [kb, vb] : o.mono) {
            const std::pair<int, int> key{ka.first + kb.first, ka.second + kb.second};
            // Gaussian-integer product
            const std::int64_t re = va.first * vb.first - va.second * vb.second;
            const std::int64_t im = va.first * vb.second + va.second * vb.first;
            auto it = out.mono.find(key);
            if (it == out.mono.end()) {
                if (re != 0 || im != 0) out.mono[key] = {re, im};
            } else {
                it->second.first += re;
                it->second.second += im;
                if (it->second.first == 0 && it->second.second == 0) out.mono.erase(it);
            }
        }
    }
    return out;
}

Coefficient Coefficient::times_i() const {
    Coefficient out;
    for (const auto& [k, v] : mono) out.mono[k] = {-v.second, v.first};
    return out;
}

Coefficient Coefficient::times_minus_i() const {
    Coefficient out;
    for (const auto& [k, v] : mono) out.mono[k] = {v.second, -v.first};
    return out;
}

Coefficient Coefficient::negate() const {
    Coefficient out;
    for (const auto& [k, v] : mono) out.mono[k] = {-v.first, -v.second};
    return out;
}

int Coefficient::uniform_degree() const {
    int deg = -2;
    for (const auto& [k, v] : mono) {
        const int d = k.first + k.second;
        if (deg == -2) deg = d;
        else if (deg != d) return -1;
    }
    return deg == -2 ? 0 : deg;
}

std::complex<double> Coefficient::evaluate(std::complex<double> b_value) const {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& [k, v] : mono) {
        std::complex<double> m(static_cast<double>(v.first), static_cast<double>(v.second));
        for (int p = 0; p < k.first; ++p) m *= b_value;
        for (int q = 0; q < k.second; ++q) m *= std::conj(b_value);
        acc += m;
    }
    return acc;
}

std::string Coefficient::to_string() const {
    if (mono.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : mono) {
        if (!first) os << " + ";
        first = false;
        os << "(" << v.first;
        if (v.second >= 0) os << "+" << v.second << "i)";
        else os << v.second << "i)";
        if (k.first > 0) os << "*b^" << k.first;
        if (k.second > 0) os << "*bs^" << k.second;
    }
    return os.str();
}

bool word_is_normal_ordered(const std::vector<Factor>& word) {
    bool seen_annihilation = false;
    for (const auto& f : word) {
        if (!is_field(f.kind)) continue;
        if (is_annihilation(f.kind)) seen_annihilation = true;
        else if (seen_annihilation) return false;
    }
    return true;
}

namespace {

const char* kind_tag(FactorKind k) {
    switch (k) {
        case FactorKind::AField: return "A";
        case FactorKind::APrime: return "A'";
        case FactorKind::Annihilate: return "a";
        case FactorKind::Create: return "a+";
        case FactorKind::SigmaPlus: return "s+";
        case FactorKind::SigmaMinus: return "s-";
        case FactorKind::ProjExcited: return "P1";
    }
    return "?";
}

const char* kernel_tag(KernelKind k) {
    switch (k) {
        case KernelKind::FrTime: return "Fr";
        case KernelKind::DeltaTime: return "dt";
        case KernelKind::DeltaOmega: return "dw";
    }
    return "?";
}

std::strong_ordering compare_structure(const Term& a, const Term& b) {
    if (auto c = a.dim <=> b.dim; c != 0) return c;
    if (auto c = a.word <=> b.word; c != 0) return c;
    return a.kernels <=> b.kernels;
}

}  // namespace

void Term::canonicalize() {
    for (auto& k : kernels) {
        if (k.lo > k.hi) {
            std::swap(k.lo, k.hi);
            if (k.kind == KernelKind::FrTime) k.reversed = !k.reversed;
        }
    }
    std::sort(kernels.begin(), kernels.end());
    // Creation factors commute among themselves, as do annihilation factors:
    // sort each maximal same-class field run by (kind, index).
    if (word_is_normal_ordered(word)) {
        auto cls = [](const Factor& f) {
            if (is_creation(f.kind)) return 1;
            if (is_annihilation(f.kind)) return 2;
            return 0;
        };
        std::size_t i = 0;
        while (i < word.size()) {
            const int c = cls(word[i]);
            std::size_t j = i + 1;
            while (j < word.size() && cls(word[j]) == c && c != 0) ++j;
            if (c != 0) std::sort(word.begin() + i, word.begin() + j);
            i = std::max(j, i + 1);
        }
    }
}

std::string Term::to_sexpr() const {
    std::ostringstream os;
    os << "(dim " << dim << "; " << coeff.to_string() << "; [";
    for (std::size_t i = 0; i < kernels.size(); ++i) {
        if (i) os << " ";
        os << kernel_tag(kernels[i].kind) << "(" << kernels[i].lo << ","
           << kernels[i].hi << (kernels[i].reversed ? ",r" : "") << ")";
    }
    os << "]; [";
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i) os << " ";
        os << kind_tag(word[i].kind);
        if (word[i].index > 0) os << word[i].index;
    }
    os << "])";
    return os.str();
}

TermSum TermSum::from_terms(std::vector<Term> in) {
    for (auto& t : in) t.canonicalize();
    std::sort(in.begin(), in.end(), [](const Term& a, const Term& b) {
        return compare_structure(a, b) < 0;
    });
    TermSum out;
    for (auto& t : in) {
        if (t.coeff.is_zero()) continue;
        if (!out.terms.empty() && compare_structure(out.terms.back(), t) == 0) {
            out.terms.back().coeff += t.coeff;
            if (out.terms.back().coeff.is_zero()) out.terms.pop_back();
        } else {
            out.terms.push_back(std::move(t));
        }
    }
    return out;
}

TermSum TermSum::operator+(const TermSum& o) const {
    std::vector<Term> all = terms;
    all.insert(all.end(), o.terms.begin(), o.terms.end());
    return from_terms(std::move(all));
}

TermSum TermSum::operator-(const TermSum& o) const {
    std::vector<Term> all = terms;
    for (Term t : o.terms) {
        t.coeff = t.coeff.negate();
        all.push_back(std::move(t));
    }
    return from_terms(std::move(all));
}

TermSum TermSum::scaled(const Coefficient& c) const {
    std::vector<Term> all = terms;
    for (auto& t : all) t.coeff = t.coeff * c;
    return from_terms(std::move(all));
}

std::string TermSum::to_sexpr() const {
    std::ostringstream os;
    for (const auto& t : terms) os << t.to_sexpr() << "\n";
    return os.str();
}

TermSum matrix_element_word(int n, int bra, int ket) {
    if (n < 1 || n > 12)
        throw atomfield::CapacityError("matrix_element_word: n must be in [1, 12]");
    if ((bra != 0 && bra != 1) || (ket != 0 && ket != 1))
        throw std::invalid_argument("matrix_element_word: bra/ket must be 0 or 1");

    std::vector<Term> acc;
    // Apply H~(t_n) ... H~(t_1) right-to-left onto |ket>, tracking the atom
    // state; field factors are collected in slot order (ascending time label).
    struct Choice { FactorKind kind; };
    std::vector<FactorKind> picks(static_cast<std::size_t>(n));

    auto emit = [&]() {
        Term t;
        t.dim = n;
        t.coeff = Coefficient::one();
        for (int j = 0; j < n; ++j) {
            const FactorKind k = picks[static_cast<std::size_t>(j)];
            if (k == FactorKind::ProjExcited) {
                // i b insertion
                t.coeff = (t.coeff * Coefficient::b()).times_i();
            } else {
                t.word.push_back(Factor{k, j + 1});
            }
        }
        acc.push_back(std::move(t));
    };

    // recursion over slots n..1 with current atom state
    auto walk = [&](auto&& self, int slot, int state) -> void {
        if (slot == 0) {
            if (state == bra) emit();
            return;
        }
        const int j = slot - 1;  // 0-based slot index
        if (state == 0) {
            // sigma+ A(t): |0> -> |1>, collect A(t_slot)
            picks[static_cast<std::size_t>(j)] = FactorKind::AField;
            self(self, slot - 1, 1);
        } else {
            // sigma- A'(t): |1> -> |0>
            picks[static_cast<std::size_t>(j)] = FactorKind::APrime;
            self(self, slot - 1, 0);
            // i b P1: |1> -> |1>
            picks[static_cast<std::size_t>(j)] = FactorKind::ProjExcited;
            self(self, slot - 1, 1);
        }
    };
    walk(walk, n, ket);
    return TermSum::from_terms(std::move(acc));
}

namespace {

// One Wick pass on a single word: find the first annihilation-creation
// adjacency, emit swapped + contracted terms.
bool wick_step(const Term& t, std::vector<Term>& out) {
    for (std::size_t i = 0; i + 1 < t.word.size(); ++i) {
        const Factor& x = t.word[i];
        const Factor& y = t.word[i + 1];
        if (!(is_annihilation(x.kind) && is_creation(y.kind))) continue;

        Term swapped = t;
        std::swap(swapped.word[i], swapped.word[i + 1]);
        out.push_back(std::move(swapped));

        Term contracted = t;
        contracted.word.erase(contracted.word.begin() + static_cast<long>(i),
                              contracted.word.begin() + static_cast<long>(i) + 2);
        KernelFactor k;
        if (x.kind == FactorKind::AField) {
            // [A(t_i), A'(t_j)] = F^r(t_i - t_j)
            k.kind = KernelKind::FrTime;
            k.lo = std::min(x.index, y.index);
            k.hi = std::max(x.index, y.index);
            k.reversed = (x.index > y.index);
        } else {
            k.kind = KernelKind::DeltaOmega;
            k.lo = std::min(x.index, y.index);
            k.hi = std::max(x.index, y.index);
        }
        contracted.kernels.push_back(k);
        out.push_back(std::move(contracted));
        return true;
    }
    return false;
}

}  // namespace

TermSum normal_order(const TermSum& sum) {
    std::vector<Term> done;
    std::vector<Term> work = sum.terms;
    while (!work.empty()) {
        Term t = std::move(work.back());
        work.pop_back();
        bool has_A = false, has_a = false, has_atom = false;
        for (const auto& f : t.word) {
            has_A |= (f.kind == FactorKind::AField || f.kind == FactorKind::APrime);
            has_a |= (f.kind == FactorKind::Annihilate || f.kind == FactorKind::Create);
            has_atom |= !is_field(f.kind);
        }
        if (has_A && has_a)
            throw atomfield::UnsupportedWordError(
                "normal_order: word mixes A-family and a-family factors");
        if (has_atom)
            throw atomfield::UnsupportedWordError(
                "normal_order: words must contain field factors only");
        if (!wick_step(t, work)) done.push_back(std::move(t));
    }
    return TermSum::from_terms(std::move(done));
}

TermSum apply_markov_rule(const TermSum& sum) {
    std::vector<Term> out;
    for (Term t : sum.terms) {
        if (!word_is_normal_ordered(t.word))
            throw std::invalid_argument("apply_markov_rule: sum must be normal-ordered");
        for (auto& k : t.kernels) {
            if (k.kind == KernelKind::FrTime) {
                t.coeff = t.coeff * (k.reversed ? Coefficient::b_star() : Coefficient::b());
                k.kind = KernelKind::DeltaTime;
                k.reversed = false;
            } else if (k.kind == KernelKind::DeltaOmega) {
                // delta(w_i - w_j) => F(t_i - t_j) => b delta(t_i - t_j)
                t.coeff = t.coeff * Coefficient::b();
                k.kind = KernelKind::DeltaTime;
            }
        }
        out.push_back(std::move(t));
    }
    return TermSum::from_terms(std::move(out));
}

TermSum integrate_simplex(const TermSum& sum, int n) {
    std::vector<Term> out;
    for (const Term& t : sum.terms) {
        bool drop = false;
        std::vector<int> removed;
        for (const auto& k : t.kernels) {
            if (k.kind != KernelKind::DeltaTime)
                throw std::invalid_argument("integrate_simplex: kernels must be time deltas");
            if (k.lo < 1 || k.hi > n)
                throw std::invalid_argument("integrate_simplex: kernel index out of range");
            if (k.hi - k.lo > 1) {  // non-neighboring delta: integral vanishes
                drop = true;
                break;
            }
            removed.push_back(k.hi);
        }
        if (drop) continue;
        std::sort(removed.begin(), removed.end());
        if (std::adjacent_find(removed.begin(), removed.end()) != removed.end())
            throw std::invalid_argument("integrate_simplex: duplicate delta factor");

        // Identify t_hi := t_lo for each collapsed delta, then renumber the
        // surviving labels contiguously.
        std::vector<int> subst(static_cast<std::size_t>(n) + 1);
        for (int idx = 0; idx <= n; ++idx) subst[static_cast<std::size_t>(idx)] = idx;
        for (const auto& k : t.kernels) subst[static_cast<std::size_t>(k.hi)] = k.lo;
        auto resolve = [&](int idx) {
            while (subst[static_cast<std::size_t>(idx)] != idx)
                idx = subst[static_cast<std::size_t>(idx)];
            return idx;
        };
        std::vector<int> map(static_cast<std::size_t>(n) + 1, 0);
        int next = 0;
        for (int idx = 1; idx <= n; ++idx) {
            if (std::find(removed.begin(), removed.end(), idx) != removed.end()) continue;
            map[static_cast<std::size_t>(idx)] = ++next;
        }
        Term r;
        r.coeff = t.coeff;
        r.dim = n - static_cast<int>(removed.size());
        for (Factor f : t.word) {
            f.index = map[static_cast<std::size_t>(resolve(f.index))];
            r.word.push_back(f);
        }
        out.push_back(std::move(r));
    }
    return TermSum::from_terms(std::move(out));
}

}  // namespace atomfield::symb
