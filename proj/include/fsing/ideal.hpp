#ifndef FSING_IDEAL_HPP
#define FSING_IDEAL_HPP

#include <optional>
#include <set>
#include <vector>

#include "poly.hpp"

namespace fsing {

/// An ideal of the context ring, given by generators. The reduced Groebner
/// basis for the context order is cached once computed (write-once).
struct Ideal {
    std::vector<Poly> gens;
    mutable std::optional<std::vector<Poly>> gb;

    Ideal() = default;
    explicit Ideal(std::vector<Poly> g) : gens(std::move(g)) {}
};

inline Ideal ideal_of(std::initializer_list<Poly> g) { return Ideal{std::vector<Poly>(g)}; }

/// Normal form of f against G by multivariate division. Deterministic for a
/// fixed order: the divisor tried first is the first in G whose head divides.
inline Poly reduce(const RingContext& ctx, Poly f, const std::vector<Poly>& G) {
    for (const auto& g : G)
        if (!g.is_zero() && g.leading().mono.size() != ctx.nvars())
            throw std::invalid_argument("reduce: mixed-context input");
    Poly remainder;
    while (!f.is_zero()) {
        bool divided = false;
        const Term& lt = f.leading();
        for (const auto& g : G) {
            if (g.is_zero()) continue;
            const Term& gl = g.leading();
            if (divides(gl.mono, lt.mono)) {
                std::int64_t c = ctx.field.neg(ctx.field.div(lt.coeff, gl.coeff));
                f = poly_add_scaled(ctx, f, c, mono_div(lt.mono, gl.mono), g);
                divided = true;
                break;
            }
        }
        if (!divided) {
            remainder.terms.push_back(lt);
            f.terms.erase(f.terms.begin());
        }
    }
    return remainder;
}

inline Poly spoly(const RingContext& ctx, const Poly& f, const Poly& g) {
    Monomial l = mono_lcm(f.leading().mono, g.leading().mono);
    Poly a = poly_add_scaled(ctx, {}, ctx.field.inv(f.leading().coeff),
                             mono_div(l, f.leading().mono), f);
    return poly_add_scaled(ctx, a, ctx.field.neg(ctx.field.inv(g.leading().coeff)),
                           mono_div(l, g.leading().mono), g);
}

namespace detail {

struct SPair {
    std::size_t i, j;
    Monomial lcm;
};

inline std::vector<Poly> interreduce(const RingContext& ctx, std::vector<Poly> G) {
    // drop generators with redundant heads, then reduce tails
    std::vector<Poly> minimal;
    for (std::size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < G.size() && !redundant; ++j)
            if (i != j && !G[j].is_zero() &&
                divides(G[j].leading().mono, G[i].leading().mono)) {
                // on equal heads keep the earlier one
                if (G[j].leading().mono == G[i].leading().mono && j > i) continue;
                redundant = true;
            }
        if (!redundant) minimal.push_back(G[i]);
    }
    std::vector<Poly> out(minimal.size());
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Poly> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        out[i] = poly_monic(ctx, reduce(ctx, minimal[i], others));
    }
    std::erase_if(out, [](const Poly& f) { return f.is_zero(); });
    std::sort(out.begin(), out.end(), [&](const Poly& a, const Poly& b) {
        return mono_cmp(a.leading().mono, b.leading().mono, ctx.order) > 0;
    });
    return out;
}

} // namespace detail

/// Buchberger's algorithm with the coprimality and chain criteria, normal
/// selection strategy, followed by interreduction. The result is the reduced
/// Groebner basis, unique for (ideal, order).
inline std::vector<Poly> groebner_basis(const RingContext& ctx, const std::vector<Poly>& gens) {
    std::vector<Poly> G;
    for (const auto& g : gens)
        if (!g.is_zero()) G.push_back(poly_monic(ctx, g));
    if (G.empty()) return {};

    auto pair_key = [&](const detail::SPair& s) { return s.lcm; };
    std::vector<detail::SPair> pairs;
    auto push_pairs = [&](std::size_t k) {
        for (std::size_t i = 0; i < k; ++i)
            pairs.push_back({i, k, mono_lcm(G[i].leading().mono, G[k].leading().mono)});
    };
    for (std::size_t k = 1; k < G.size(); ++k) push_pairs(k);

    std::set<std::pair<std::size_t, std::size_t>> done;
    while (!pairs.empty()) {
        // normal strategy: smallest lcm first
        auto it = std::min_element(pairs.begin(), pairs.end(),
                                   [&](const detail::SPair& a, const detail::SPair& b) {
                                       return mono_cmp(pair_key(a), pair_key(b), ctx.order) < 0;
                                   });
        detail::SPair s = *it;
        pairs.erase(it);
        done.insert({s.i, s.j});

        if (mono_coprime(G[s.i].leading().mono, G[s.j].leading().mono)) continue;
        // chain criterion
        bool skip = false;
        for (std::size_t k = 0; k < G.size() && !skip; ++k) {
            if (k == s.i || k == s.j) continue;
            if (!divides(G[k].leading().mono, s.lcm)) continue;
            auto a = std::minmax(s.i, k), b = std::minmax(s.j, k);
            if (done.count({a.first, a.second}) && done.count({b.first, b.second})) skip = true;
        }
        if (skip) continue;

        Poly r = reduce(ctx, spoly(ctx, G[s.i], G[s.j]), G);
        if (!r.is_zero()) {
            G.push_back(poly_monic(ctx, r));
            push_pairs(G.size() - 1);
        }
    }
    return detail::interreduce(ctx, G);
}

inline const std::vector<Poly>& groebner(const RingContext& ctx, const Ideal& I) {
    if (!I.gb) I.gb = groebner_basis(ctx, I.gens);
    return *I.gb;
}

inline bool ideal_membership(const RingContext& ctx, const Poly& f, const Ideal& I) {
    return reduce(ctx, f, groebner(ctx, I)).is_zero();
}

inline bool ideal_contains(const RingContext& ctx, const Ideal& big, const Ideal& small) {
    for (const auto& g : small.gens)
        if (!ideal_membership(ctx, g, big)) return false;
    return true;
}

inline bool ideal_equal(const RingContext& ctx, const Ideal& a, const Ideal& b) {
    return groebner(ctx, a) == groebner(ctx, b);
}

inline bool is_unit_ideal(const RingContext& ctx, const Ideal& I) {
    const auto& G = groebner(ctx, I);
    return !G.empty() && G.front().is_constant() && !G.front().is_zero();
}

inline bool is_zero_ideal(const RingContext& ctx, const Ideal& I) {
    return groebner(ctx, I).empty();
}

// ---- transport between rings (for elimination constructions) ----

/// Map a polynomial into another context, sending variable i of `from` to
/// variable var_map[i] of `to`.
inline Poly transport(const RingContext& from, const RingContext& to,
                      const std::vector<std::size_t>& var_map, const Poly& f) {
    std::map<Monomial, std::int64_t> pile;
    for (const auto& t : f.terms) {
        Monomial m(to.nvars(), 0);
        for (std::size_t i = 0; i < from.nvars(); ++i) m[var_map[i]] += t.mono[i];
        auto& slot = pile[m];
        slot = to.field.add(slot, t.coeff);
    }
    return poly_collect(to, pile);
}

/// Generators of I intersected with the subring on the variables NOT listed
/// in `drop`, via a block (elimination) order.
inline Ideal eliminate(const RingContext& ctx, const Ideal& I,
                       const std::vector<std::size_t>& drop) {
    if (drop.empty()) return I;
    std::vector<bool> dropped(ctx.nvars(), false);
    for (auto i : drop) {
        if (i >= ctx.nvars()) throw std::invalid_argument("eliminate: bad variable index");
        dropped[i] = true;
    }
    // permuted ring: dropped variables first, block order on them
    std::vector<std::string> names;
    std::vector<std::size_t> var_map(ctx.nvars());
    for (std::size_t i = 0; i < ctx.nvars(); ++i)
        if (dropped[i]) { var_map[i] = names.size(); names.push_back(ctx.vars[i]); }
    std::size_t nblk = names.size();
    for (std::size_t i = 0; i < ctx.nvars(); ++i)
        if (!dropped[i]) { var_map[i] = names.size(); names.push_back(ctx.vars[i]); }
    RingContext ectx(ctx.p(), names, OrderSpec{OrderKind::Grevlex, nblk});

    std::vector<Poly> egens;
    for (const auto& g : I.gens) egens.push_back(transport(ctx, ectx, var_map, g));
    auto G = groebner_basis(ectx, egens);

    std::vector<std::size_t> inv_map(ectx.nvars(), 0);
    for (std::size_t i = 0; i < ctx.nvars(); ++i) inv_map[var_map[i]] = i;

    std::vector<Poly> out;
    for (const auto& g : G) {
        bool pure = true;
        for (const auto& t : g.terms)
            for (std::size_t j = 0; j < nblk && pure; ++j)
                if (t.mono[j] > 0) pure = false;
        if (pure) out.push_back(transport(ectx, ctx, inv_map, g));
    }
    return Ideal{std::move(out)};
}

inline Ideal intersect(const RingContext& ctx, const Ideal& I, const Ideal& J) {
    // t*I + (1-t)*J, eliminate t
    std::vector<std::string> names = {"@t"};
    names.insert(names.end(), ctx.vars.begin(), ctx.vars.end());
    RingContext ectx(ctx.p(), names, OrderSpec{OrderKind::Grevlex, 1});
    std::vector<std::size_t> var_map(ctx.nvars());
    for (std::size_t i = 0; i < ctx.nvars(); ++i) var_map[i] = i + 1;

    Poly t = poly_var(ectx, 0);
    Poly one_minus_t = poly_sub(ectx, poly_const(ectx, 1), t);
    std::vector<Poly> gens;
    for (const auto& f : I.gens)
        gens.push_back(poly_mul(ectx, t, transport(ctx, ectx, var_map, f)));
    for (const auto& g : J.gens)
        gens.push_back(poly_mul(ectx, one_minus_t, transport(ctx, ectx, var_map, g)));
    auto G = groebner_basis(ectx, gens);

    std::vector<std::size_t> inv_map(ectx.nvars(), 0);
    for (std::size_t i = 0; i < ctx.nvars(); ++i) inv_map[i + 1] = i;
    std::vector<Poly> out;
    for (const auto& g : G) {
        bool pure = true;
        for (const auto& term : g.terms)
            if (term.mono[0] > 0) { pure = false; break; }
        if (pure) out.push_back(transport(ectx, ctx, inv_map, g));
    }
    return Ideal{std::move(out)};
}

/// Exact quotient f/g; throws if g does not divide f.
inline Poly poly_exact_div(const RingContext& ctx, const Poly& f, const Poly& g) {
    if (g.is_zero()) throw std::domain_error("division by zero polynomial");
    Poly rem = f, quot;
    while (!rem.is_zero()) {
        const Term& lt = rem.leading();
        const Term& gl = g.leading();
        if (!divides(gl.mono, lt.mono)) throw std::domain_error("inexact polynomial division");
        std::int64_t c = ctx.field.div(lt.coeff, gl.coeff);
        Monomial m = mono_div(lt.mono, gl.mono);
        quot = poly_add(ctx, quot, poly_term(ctx, c, m));
        rem = poly_add_scaled(ctx, rem, ctx.field.neg(c), m, g);
    }
    return quot;
}

inline Ideal colon(const RingContext& ctx, const Ideal& I, const Poly& f) {
    if (f.is_zero()) throw std::invalid_argument("colon by zero");
    Ideal meet = intersect(ctx, I, Ideal{{f}});
    std::vector<Poly> out;
    for (const auto& g : groebner(ctx, meet))
        out.push_back(poly_exact_div(ctx, g, f));
    return Ideal{std::move(out)};
}

inline Ideal colon(const RingContext& ctx, const Ideal& I, const Ideal& J) {
    bool any = false;
    Ideal acc;
    for (const auto& f : J.gens) {
        if (f.is_zero()) continue;
        Ideal q = colon(ctx, I, f);
        acc = any ? intersect(ctx, acc, q) : q;
        any = true;
    }
    if (!any) throw std::invalid_argument("colon by zero ideal");
    return acc;
}

inline Ideal ideal_sum(const RingContext&, const Ideal& I, const Ideal& J) {
    std::vector<Poly> gens = I.gens;
    gens.insert(gens.end(), J.gens.begin(), J.gens.end());
    return Ideal{std::move(gens)};
}

/// dim(R/I) from the leading-term ideal: the largest set S of variables such
/// that no head monomial lives entirely on S is independent, and its size is
/// the dimension.
inline int krull_dimension(const RingContext& ctx, const Ideal& I) {
    if (is_unit_ideal(ctx, I))
        throw std::invalid_argument("krull_dimension: unit ideal has empty spectrum");
    const auto& G = groebner(ctx, I);
    std::vector<Monomial> heads;
    for (const auto& g : G) heads.push_back(g.leading().mono);
    std::size_t n = ctx.nvars();
    int best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << n); ++mask) {
        bool independent = true;
        for (const auto& h : heads) {
            bool inside = true;
            for (std::size_t i = 0; i < n && inside; ++i)
                if (h[i] > 0 && !((mask >> i) & 1)) inside = false;
            if (inside) { independent = false; break; }
        }
        if (independent) best = std::max(best, __builtin_popcountll(mask));
    }
    return best;
}

inline int codim(const RingContext& ctx, const Ideal& I) {
    return int(ctx.nvars()) - krull_dimension(ctx, I);
}

/// Radical membership via the Rabinowitsch trick: f in sqrt(I) iff
/// 1 in I + (1 - t f).
inline bool radical_membership(const RingContext& ctx, const Poly& f, const Ideal& I) {
    std::vector<std::string> names = {"@t"};
    names.insert(names.end(), ctx.vars.begin(), ctx.vars.end());
    RingContext ectx(ctx.p(), names, OrderSpec{OrderKind::Grevlex, 1});
    std::vector<std::size_t> var_map(ctx.nvars());
    for (std::size_t i = 0; i < ctx.nvars(); ++i) var_map[i] = i + 1;
    std::vector<Poly> gens;
    for (const auto& g : I.gens) gens.push_back(transport(ctx, ectx, var_map, g));
    Poly tf = poly_mul(ectx, poly_var(ectx, 0), transport(ctx, ectx, var_map, f));
    gens.push_back(poly_sub(ectx, poly_const(ectx, 1), tf));
    return is_unit_ideal(ectx, Ideal{std::move(gens)});
}

} // namespace fsing

#endif
