#ifndef FSING_FROBENIUS_HPP
#define FSING_FROBENIUS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <optional>

#include "modgb.hpp"

namespace fsing {

/// e-th Frobenius iterate; q = p^e, rejected when q leaves machine range.
struct FrobeniusExponent {
    unsigned e = 0;
    std::uint64_t q = 1;

    FrobeniusExponent() = default;
    FrobeniusExponent(const RingContext& ctx, unsigned ee) : e(ee) {
        q = 1;
        for (unsigned i = 0; i < e; ++i) {
            q *= std::uint64_t(ctx.p());
            if (q > (std::uint64_t(1) << 31))
                throw std::overflow_error("Frobenius exponent overflow: p^e too large");
        }
    }
};

/// I^[q]: generators raised to the q-th power.
inline Ideal frobenius_power(const RingContext& ctx, const Ideal& I,
                             const FrobeniusExponent& fe) {
    std::vector<Poly> gens;
    for (const auto& g : I.gens) gens.push_back(poly_frobenius(ctx, g, fe.q));
    return Ideal{std::move(gens)};
}

/// Decompose f over the free basis {x^a : 0 <= a_i < q} of R over the
/// subring of q-th powers; the bucket contents are the q-th roots of the
/// basis coefficients (prime-field coefficients are Frobenius-fixed).
inline std::vector<Poly> frobenius_root_terms(const RingContext& ctx, const Poly& f,
                                              std::uint64_t q) {
    std::map<Monomial, std::map<Monomial, std::int64_t>> buckets;
    for (const auto& t : f.terms) {
        Monomial residue(t.mono.size()), quotient(t.mono.size());
        for (std::size_t i = 0; i < t.mono.size(); ++i) {
            residue[i] = Exponent(t.mono[i] % q);
            quotient[i] = Exponent(t.mono[i] / q);
        }
        auto& slot = buckets[residue][quotient];
        slot = ctx.field.add(slot, t.coeff);
    }
    std::vector<Poly> out;
    for (const auto& [res, pile] : buckets) {
        Poly part = poly_collect(ctx, pile);
        if (!part.is_zero()) out.push_back(std::move(part));
    }
    return out;
}

/// Smallest J with I contained in J^[q].
inline Ideal frobenius_root(const RingContext& ctx, const Ideal& I,
                            const FrobeniusExponent& fe) {
    std::vector<Poly> gens;
    for (const auto& g : I.gens) {
        auto parts = frobenius_root_terms(ctx, g, fe.q);
        gens.insert(gens.end(), parts.begin(), parts.end());
    }
    return Ideal{std::move(gens)};
}

/// Componentwise Frobenius root of a set of vectors in R^r: the generators
/// of the smallest submodule U with span(V) inside F^{e*}(U).
inline std::vector<FreeElem> frobenius_root_vectors(const RingContext& ctx,
                                                    const std::vector<FreeElem>& V,
                                                    std::uint64_t q) {
    std::vector<FreeElem> out;
    for (const auto& v : V) {
        std::map<Monomial, FreeElem> buckets;
        for (std::size_t comp = 0; comp < v.size(); ++comp) {
            for (const auto& t : v[comp].terms) {
                Monomial residue(t.mono.size()), quotient(t.mono.size());
                for (std::size_t i = 0; i < t.mono.size(); ++i) {
                    residue[i] = Exponent(t.mono[i] % q);
                    quotient[i] = Exponent(t.mono[i] / q);
                }
                auto it = buckets.find(residue);
                if (it == buckets.end())
                    it = buckets.emplace(residue, elem_zero(v.size())).first;
                it->second[comp] =
                    poly_add(ctx, it->second[comp], poly_term(ctx, t.coeff, quotient));
            }
        }
        for (auto& [res, w] : buckets)
            if (!elem_is_zero(w)) out.push_back(std::move(w));
    }
    return out;
}

namespace detail {

inline std::vector<Monomial> monomials_up_to(std::size_t n, Exponent d) {
    std::vector<Monomial> out;
    Monomial cur(n, 0);
    // lexicographic enumeration of exponent vectors of total degree <= d
    std::function<void(std::size_t, Exponent)> rec = [&](std::size_t i, Exponent left) {
        if (i == n) {
            out.push_back(cur);
            return;
        }
        for (Exponent e = 0; e <= left; ++e) {
            cur[i] = e;
            rec(i + 1, left - e);
        }
        cur[i] = 0;
    };
    rec(0, d);
    return out;
}

} // namespace detail

/// The ideal {z : c z^q in K}, an ideal because q-th powers are additive in
/// characteristic p. Computed degree-by-degree as an F_p kernel: for z with
/// prime-field coefficients c_m, c z^q = sum c_m (c m^q), so membership in K
/// is linear in the c_m. The candidate degree grows until the resulting
/// ideal stabilizes. When `known` is supplied it must be contained in the
/// answer; its staircase then prunes the candidate monomials and its
/// generators are included in the output.
inline Ideal frobenius_preimage_scaled(const RingContext& ctx, const Ideal& K,
                                       const Poly& mult, const FrobeniusExponent& fe,
                                       const Ideal* known = nullptr) {
    if (fe.e == 0) {
        if (mult.is_constant()) return K;
        return colon(ctx, K, mult);
    }
    const auto& G = groebner(ctx, K);
    if (G.empty()) return Ideal{};
    if (G.front().is_constant()) return Ideal{{poly_const(ctx, 1)}};
    if (mult.is_zero()) return Ideal{{poly_const(ctx, 1)}};

    const std::vector<Poly>* KG = nullptr;
    if (known) KG = &groebner(ctx, *known);

    // start near the degrees the Frobenius root suggests
    Exponent d0 = 1;
    for (const auto& g : frobenius_root(ctx, K, fe).gens)
        d0 = std::max(d0, g.degree());
    for (const auto& g : G) d0 = std::max<Exponent>(d0, Exponent((g.degree() + fe.q - 1) / fe.q));
    if (KG)
        for (const auto& g : *KG) d0 = std::max(d0, g.degree());

    auto kernel_ideal = [&](Exponent d) {
        auto all = detail::monomials_up_to(ctx.nvars(), d);
        std::vector<Monomial> monos;
        for (const auto& m : all) {
            bool pruned = false;
            if (KG)
                for (const auto& g : *KG)
                    if (divides(g.leading().mono, m)) { pruned = true; break; }
            if (!pruned) monos.push_back(m);
        }
        // columns: normal forms of mult * m^q against G
        std::vector<Poly> nf(monos.size());
        for (std::size_t i = 0; i < monos.size(); ++i) {
            Monomial mq = monos[i];
            for (auto& e : mq) {
                std::uint64_t v = std::uint64_t(e) * fe.q;
                if (v > 0x7fffffffu) throw std::overflow_error("exponent overflow in preimage");
                e = Exponent(v);
            }
            Poly col = poly_term(ctx, 1, mq);
            if (!mult.is_constant() || mult.leading().coeff != 1)
                col = poly_mul(ctx, mult, col);
            nf[i] = reduce(ctx, col, G);
        }
        // index the support
        std::map<Monomial, std::size_t> support;
        for (const auto& f : nf)
            for (const auto& t : f.terms) support.emplace(t.mono, support.size());
        std::size_t rows = support.size(), cols = monos.size();
        std::vector<std::vector<std::int64_t>> A(rows, std::vector<std::int64_t>(cols, 0));
        for (std::size_t j = 0; j < cols; ++j)
            for (const auto& t : nf[j].terms) A[support[t.mono]][j] = t.coeff;
        // kernel over F_p by Gaussian elimination
        std::vector<long> pivot_of_col(cols, -1);
        std::size_t rank = 0;
        for (std::size_t j = 0; j < cols && rank < rows; ++j) {
            std::size_t piv = rank;
            while (piv < rows && A[piv][j] == 0) ++piv;
            if (piv == rows) continue;
            std::swap(A[rank], A[piv]);
            std::int64_t inv = ctx.field.inv(A[rank][j]);
            for (std::size_t l = 0; l < cols; ++l) A[rank][l] = ctx.field.mul(A[rank][l], inv);
            for (std::size_t r = 0; r < rows; ++r) {
                if (r == rank || A[r][j] == 0) continue;
                std::int64_t f = A[r][j];
                for (std::size_t l = 0; l < cols; ++l)
                    A[r][l] = ctx.field.sub(A[r][l], ctx.field.mul(f, A[rank][l]));
            }
            pivot_of_col[j] = long(rank);
            ++rank;
        }
        std::vector<Poly> gens;
        for (std::size_t j = 0; j < cols; ++j) {
            if (pivot_of_col[j] >= 0) continue;
            std::map<Monomial, std::int64_t> pile;
            pile[monos[j]] = 1;
            for (std::size_t l = 0; l < cols; ++l)
                if (pivot_of_col[l] >= 0 && A[std::size_t(pivot_of_col[l])][j] != 0)
                    pile[monos[l]] = ctx.field.neg(A[std::size_t(pivot_of_col[l])][j]);
            Poly z = poly_collect(ctx, pile);
            if (!z.is_zero()) gens.push_back(std::move(z));
        }
        if (known) gens.insert(gens.end(), known->gens.begin(), known->gens.end());
        Ideal out{std::move(gens)};
        groebner(ctx, out);
        return out;
    };

    Ideal cur = kernel_ideal(d0);
    for (Exponent d = d0 + 1; d <= d0 + 4; ++d) {
        Ideal next = kernel_ideal(d);
        if (ideal_equal(ctx, cur, next)) return cur;
        cur = next;
    }
    return cur;
}

inline Ideal frobenius_preimage(const RingContext& ctx, const Ideal& K,
                                const FrobeniusExponent& fe) {
    return frobenius_preimage_scaled(ctx, K, Poly{{Term{Monomial(ctx.nvars(), 0), 1}}}, fe);
}

// ---- Frobenius closure ----

struct ClosureCaps {
    unsigned e_max = 6;
    unsigned t_max = 4;
    unsigned window = 2;
};

/// Ascending chain of Frobenius-closure levels of J in A = R/I, lifted to R:
/// C_e = {z : z^q in J^[q] + I}.
struct ClosureChain {
    std::vector<std::pair<unsigned, Ideal>> levels;
    std::optional<unsigned> stabilized_at;
    bool capped = false;
};

inline ClosureChain frobenius_closure(const RingContext& ctx, const Ideal& J,
                                      const Ideal& I, const ClosureCaps& caps = {}) {
    if (is_unit_ideal(ctx, I))
        throw std::invalid_argument("frobenius_closure: I must be proper");
    ClosureChain chain;
    unsigned window = std::max(1u, caps.window);
    Ideal level0 = ideal_sum(ctx, J, I);
    groebner(ctx, level0);
    chain.levels.push_back({0, level0});
    unsigned agree = 0;
    Poly one{{Term{Monomial(ctx.nvars(), 0), 1}}};
    for (unsigned e = 1; e <= caps.e_max; ++e) {
        FrobeniusExponent fe(ctx, e);
        Ideal K = ideal_sum(ctx, frobenius_power(ctx, J, fe), I);
        Ideal level = frobenius_preimage_scaled(ctx, K, one, fe, &level0);
        groebner(ctx, level);
        if (ideal_equal(ctx, level, chain.levels.back().second)) {
            ++agree;
        } else {
            agree = 0;
        }
        chain.levels.push_back({e, level});
        if (agree >= window) { // window consecutive equal steps
            chain.stabilized_at = e - agree;
            return chain;
        }
    }
    chain.capped = true;
    return chain;
}

namespace detail {

/// Shape for the hypersurface fast path: I = (f) where the unique term of f
/// with maximal v-degree d is a pure constant multiple of v^d. Then R/(f) is
/// free over the subring without v, with basis 1, v, ..., v^(d-1).
struct MonicShape {
    std::size_t v;
    Exponent d;
    std::int64_t lead;
};

inline std::optional<MonicShape> monic_shape(const RingContext& ctx, const Ideal& I,
                                             const Ideal& J) {
    if (I.gens.size() != 1 || I.gens[0].is_zero() || I.gens[0].is_constant())
        return std::nullopt;
    const Poly& f = I.gens[0];
    for (std::size_t v = 0; v < ctx.nvars(); ++v) {
        Exponent d = 0;
        for (const auto& t : f.terms) d = std::max(d, t.mono[v]);
        if (d == 0) continue;
        std::size_t top_count = 0;
        std::int64_t lead = 0;
        bool pure = true;
        for (const auto& t : f.terms) {
            if (t.mono[v] != d) continue;
            ++top_count;
            lead = t.coeff;
            if (total_degree(t.mono) != d) pure = false; // top term must be c * v^d
        }
        if (top_count != 1 || !pure) continue;
        bool j_free = true;
        for (const auto& g : J.gens)
            for (const auto& t : g.terms)
                if (t.mono[v] != 0) j_free = false;
        if (!j_free) continue;
        return MonicShape{v, d, lead};
    }
    return std::nullopt;
}

/// Remainder of g modulo f on the free basis v^0..v^(d-1), by bucketed
/// division along the v-degree. Linear algebra only, no Groebner bases.
inline Poly monic_remainder(const RingContext& ctx, const Poly& g, const Poly& f,
                            const MonicShape& s) {
    // f = lead * v^d + tail, tail grouped by v-degree with v zeroed out
    std::map<Exponent, std::map<Monomial, std::int64_t>> tail;
    for (const auto& t : f.terms) {
        if (t.mono[s.v] == s.d) continue;
        Monomial m = t.mono;
        Exponent vd = m[s.v];
        m[s.v] = 0;
        auto& slot = tail[vd][m];
        slot = ctx.field.add(slot, t.coeff);
    }
    std::map<Exponent, std::map<Monomial, std::int64_t>> bucket;
    for (const auto& t : g.terms) {
        Monomial m = t.mono;
        Exponent vd = m[s.v];
        m[s.v] = 0;
        auto& slot = bucket[vd][m];
        slot = ctx.field.add(slot, t.coeff);
    }
    std::int64_t linv = ctx.field.inv(s.lead);
    while (!bucket.empty()) {
        auto top = std::prev(bucket.end());
        Exponent vd = top->first;
        if (vd < s.d) break;
        Poly h = poly_collect(ctx, top->second);
        bucket.erase(top);
        if (h.is_zero()) continue;
        // subtract (h / lead) * v^(vd - d) * f
        for (const auto& [vj, pile] : tail) {
            Poly fj = poly_collect(ctx, pile);
            Poly prod = poly_scale(ctx, poly_mul(ctx, h, fj), ctx.field.neg(linv));
            auto& dst = bucket[vd - s.d + vj];
            for (const auto& t : prod.terms) {
                auto& slot = dst[t.mono];
                slot = ctx.field.add(slot, t.coeff);
            }
        }
    }
    std::map<Monomial, std::int64_t> out;
    for (const auto& [vd, pile] : bucket)
        for (const auto& [m, c] : pile) {
            Monomial mm = m;
            mm[s.v] = vd;
            auto& slot = out[mm];
            slot = ctx.field.add(slot, c);
        }
    return poly_collect(ctx, out);
}

/// Membership of g in J + (f) under the monic shape: remainder components
/// along the free basis must each lie in J (extension of scalars along a
/// free ring map preserves and reflects ideal membership componentwise).
inline bool monic_membership(const RingContext& ctx, const Poly& g, const Ideal& J,
                             const Poly& f, const MonicShape& s) {
    Poly r = monic_remainder(ctx, g, f, s);
    std::map<Exponent, std::map<Monomial, std::int64_t>> comps;
    for (const auto& t : r.terms) {
        Monomial m = t.mono;
        Exponent vd = m[s.v];
        m[s.v] = 0;
        auto& slot = comps[vd][m];
        slot = ctx.field.add(slot, t.coeff);
    }
    for (const auto& [vd, pile] : comps) {
        Poly comp = poly_collect(ctx, pile);
        if (!ideal_membership(ctx, comp, J)) return false;
    }
    return true;
}

} // namespace detail

/// Membership of g in J + I, with a hypersurface fast path when I = (f) is
/// monic in a variable absent from J; falls back to Groebner reduction.
inline bool quotient_membership(const RingContext& ctx, const Poly& g, const Ideal& J,
                                const Ideal& I) {
    if (auto s = detail::monic_shape(ctx, I, J))
        return detail::monic_membership(ctx, g, J, I.gens[0], *s);
    return ideal_membership(ctx, g, ideal_sum(ctx, J, I));
}

/// Per-element Frobenius closure membership: smallest e <= e_max with
/// z^q in J^[q] + I.
struct FrobeniusMembership {
    std::optional<unsigned> witness_e;
    unsigned e_max;
    std::vector<unsigned> refuted_at; // levels where membership failed
};

inline FrobeniusMembership frobenius_membership(const RingContext& ctx, const Poly& z,
                                                const Ideal& J, const Ideal& I,
                                                unsigned e_max) {
    FrobeniusMembership out;
    out.e_max = e_max;
    for (unsigned e = 0; e <= e_max; ++e) {
        FrobeniusExponent fe(ctx, e);
        Poly zq = poly_frobenius(ctx, z, fe.q);
        if (quotient_membership(ctx, zq, frobenius_power(ctx, J, fe), I)) {
            out.witness_e = e;
            return out;
        }
        out.refuted_at.push_back(e);
    }
    return out;
}

} // namespace fsing

#endif
