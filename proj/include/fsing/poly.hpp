#ifndef FSING_POLY_HPP
#define FSING_POLY_HPP

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ring.hpp"

namespace fsing {

struct Term {
    Monomial mono;
    std::int64_t coeff; // nonzero, in [1, p)

    bool operator==(const Term&) const = default;
};

/// A multivariate polynomial over F_p in canonical form: terms strictly
/// decreasing in the context order, no zero coefficients. Equality is
/// structural equality.
struct Poly {
    std::vector<Term> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const Poly&) const = default;

    const Term& leading() const {
        if (terms.empty()) throw std::domain_error("leading term of zero polynomial");
        return terms.front();
    }

    Exponent degree() const {
        Exponent d = 0;
        for (const auto& t : terms) d = std::max(d, total_degree(t.mono));
        return d;
    }

    bool is_constant() const {
        return terms.empty() || (terms.size() == 1 && total_degree(terms[0].mono) == 0);
    }
};

inline Poly poly_zero() { return {}; }

inline Poly poly_term(const RingContext& ctx, std::int64_t c, const Monomial& m) {
    c = ctx.field.reduce(c);
    if (c == 0) return {};
    if (m.size() != ctx.nvars()) throw std::invalid_argument("monomial arity mismatch");
    return Poly{{Term{m, c}}};
}

inline Poly poly_const(const RingContext& ctx, std::int64_t c) {
    return poly_term(ctx, c, Monomial(ctx.nvars(), 0));
}

inline Poly poly_var(const RingContext& ctx, std::size_t i) {
    Monomial m(ctx.nvars(), 0);
    m.at(i) = 1;
    return poly_term(ctx, 1, m);
}

/// Rebuild canonical form from an arbitrary (monomial -> coefficient) pile.
inline Poly poly_collect(const RingContext& ctx,
                         const std::map<Monomial, std::int64_t>& pile) {
    std::vector<Term> out;
    out.reserve(pile.size());
    for (const auto& [m, c] : pile) {
        std::int64_t r = ctx.field.reduce(c);
        if (r != 0) out.push_back(Term{m, r});
    }
    std::sort(out.begin(), out.end(), [&](const Term& a, const Term& b) {
        return mono_cmp(a.mono, b.mono, ctx.order) > 0;
    });
    return Poly{std::move(out)};
}

inline Poly poly_add(const RingContext& ctx, const Poly& a, const Poly& b) {
    std::vector<Term> out;
    out.reserve(a.terms.size() + b.terms.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms.size() && j < b.terms.size()) {
        int c = mono_cmp(a.terms[i].mono, b.terms[j].mono, ctx.order);
        if (c > 0) {
            out.push_back(a.terms[i++]);
        } else if (c < 0) {
            out.push_back(b.terms[j++]);
        } else {
            std::int64_t s = ctx.field.add(a.terms[i].coeff, b.terms[j].coeff);
            if (s != 0) out.push_back(Term{a.terms[i].mono, s});
            ++i; ++j;
        }
    }
    for (; i < a.terms.size(); ++i) out.push_back(a.terms[i]);
    for (; j < b.terms.size(); ++j) out.push_back(b.terms[j]);
    return Poly{std::move(out)};
}

inline Poly poly_scale(const RingContext& ctx, const Poly& a, std::int64_t c) {
    c = ctx.field.reduce(c);
    if (c == 0) return {};
    Poly r = a;
    for (auto& t : r.terms) t.coeff = ctx.field.mul(t.coeff, c);
    return r;
}

inline Poly poly_neg(const RingContext& ctx, const Poly& a) {
    return poly_scale(ctx, a, -1);
}

inline Poly poly_sub(const RingContext& ctx, const Poly& a, const Poly& b) {
    return poly_add(ctx, a, poly_neg(ctx, b));
}

/// a + c * x^m * b, the inner step of division and S-polynomials.
inline Poly poly_add_scaled(const RingContext& ctx, const Poly& a,
                            std::int64_t c, const Monomial& m, const Poly& b) {
    c = ctx.field.reduce(c);
    if (c == 0 || b.is_zero()) return a;
    std::vector<Term> shifted;
    shifted.reserve(b.terms.size());
    for (const auto& t : b.terms)
        shifted.push_back(Term{mono_mul(t.mono, m), ctx.field.mul(t.coeff, c)});
    return poly_add(ctx, a, Poly{std::move(shifted)});
}

inline Poly poly_mul(const RingContext& ctx, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::map<Monomial, std::int64_t> pile;
    for (const auto& s : a.terms)
        for (const auto& t : b.terms) {
            auto& slot = pile[mono_mul(s.mono, t.mono)];
            slot = ctx.field.add(slot, ctx.field.mul(s.coeff, t.coeff));
        }
    return poly_collect(ctx, pile);
}

inline Poly poly_pow(const RingContext& ctx, const Poly& a, std::uint64_t n) {
    Poly r = poly_const(ctx, 1);
    Poly b = a;
    while (n > 0) {
        if (n & 1) r = poly_mul(ctx, r, b);
        b = poly_mul(ctx, b, b);
        n >>= 1;
    }
    return r;
}

inline Poly poly_monic(const RingContext& ctx, const Poly& a) {
    if (a.is_zero()) return a;
    return poly_scale(ctx, a, ctx.field.inv(a.leading().coeff));
}

/// Termwise q-th power, q a power of the characteristic. Coefficients are
/// fixed by the Frobenius since they lie in the prime field.
inline Poly poly_frobenius(const RingContext&, const Poly& a, std::uint64_t q) {
    Poly r = a;
    for (auto& t : r.terms)
        for (auto& e : t.mono) {
            std::uint64_t v = std::uint64_t(e) * q;
            if (v > 0x7fffffffu) throw std::overflow_error("exponent overflow in Frobenius power");
            e = Exponent(v);
        }
    // powering is monotone for any order refining divisibility, so the term
    // sequence stays sorted
    return r;
}

inline std::string mono_to_string(const RingContext& ctx, const Monomial& m) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!first) os << "*";
        os << ctx.vars[i];
        if (m[i] > 1) os << "^" << m[i];
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

inline std::string poly_to_string(const RingContext& ctx, const Poly& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : a.terms) {
        if (!first) os << " + ";
        bool unit_mono = total_degree(t.mono) == 0;
        if (t.coeff != 1 || unit_mono) {
            os << t.coeff;
            if (!unit_mono) os << "*";
        }
        if (!unit_mono) os << mono_to_string(ctx, t.mono);
        first = false;
    }
    return os.str();
}

} // namespace fsing

#endif
