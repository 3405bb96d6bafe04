#ifndef FSING_MODGB_HPP
#define FSING_MODGB_HPP

#include <optional>
#include <vector>

#include "ideal.hpp"

namespace fsing {

/// Element of a free module R^r, componentwise polynomials.
using FreeElem = std::vector<Poly>;

inline bool elem_is_zero(const FreeElem& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

inline FreeElem elem_zero(std::size_t rank) { return FreeElem(rank); }

inline FreeElem elem_add(const RingContext& ctx, const FreeElem& a, const FreeElem& b) {
    if (a.size() != b.size()) throw std::invalid_argument("free module rank mismatch");
    FreeElem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = poly_add(ctx, a[i], b[i]);
    return r;
}

/// a + c * x^m * b
inline FreeElem elem_add_scaled(const RingContext& ctx, const FreeElem& a,
                                std::int64_t c, const Monomial& m, const FreeElem& b) {
    FreeElem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = poly_add_scaled(ctx, a[i], c, m, b[i]);
    return r;
}

inline FreeElem elem_scale_poly(const RingContext& ctx, const Poly& f, const FreeElem& a) {
    FreeElem r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = poly_mul(ctx, f, a[i]);
    return r;
}

/// Leading module term under position-over-term order: lower component index
/// dominates, ties broken by the ring's monomial order.
struct ModTerm {
    std::size_t comp;
    Monomial mono;
    std::int64_t coeff;
};

inline std::optional<ModTerm> elem_leading(const FreeElem& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero())
            return ModTerm{i, v[i].leading().mono, v[i].leading().coeff};
    return std::nullopt;
}

inline FreeElem elem_monic(const RingContext& ctx, const FreeElem& v) {
    auto lt = elem_leading(v);
    if (!lt) return v;
    std::int64_t c = ctx.field.inv(lt->coeff);
    FreeElem r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = poly_scale(ctx, v[i], c);
    return r;
}

namespace detail {

// Remove the leading term of v (component lt.comp).
inline void drop_leading(FreeElem& v, const ModTerm& lt) {
    v[lt.comp].terms.erase(v[lt.comp].terms.begin());
}

} // namespace detail

/// Basis element with its expression in the original generators (rank s).
struct TrackedElem {
    FreeElem v;
    FreeElem rep;
};

/// Normal form of v against G. When `used` is non-null, accumulates the
/// combination so that input = NF + sum used[k] * G[k].
inline FreeElem module_reduce(const RingContext& ctx, FreeElem v,
                              const std::vector<FreeElem>& G,
                              std::vector<Poly>* used = nullptr) {
    if (used) used->assign(G.size(), Poly{});
    FreeElem remainder(v.size());
    while (true) {
        auto lt = elem_leading(v);
        if (!lt) break;
        bool divided = false;
        for (std::size_t k = 0; k < G.size(); ++k) {
            auto gl = elem_leading(G[k]);
            if (!gl || gl->comp != lt->comp || !divides(gl->mono, lt->mono)) continue;
            std::int64_t c = ctx.field.div(lt->coeff, gl->coeff);
            Monomial m = mono_div(lt->mono, gl->mono);
            v = elem_add_scaled(ctx, v, ctx.field.neg(c), m, G[k]);
            if (used) (*used)[k] = poly_add(ctx, (*used)[k], poly_term(ctx, c, m));
            divided = true;
            break;
        }
        if (!divided) {
            remainder[lt->comp].terms.push_back(Term{lt->mono, lt->coeff});
            detail::drop_leading(v, *lt);
        }
    }
    return remainder;
}

/// Module Groebner basis with representation tracking. Every S-pair is
/// reduced (no pair criteria), so the reps of zero reductions are Schreyer
/// generators of the syzygy module of the inputs.
struct ModuleGB {
    std::vector<TrackedElem> basis;
    std::vector<FreeElem> syzygies; // rank = number of inputs
    std::size_t rank = 0;

    std::vector<FreeElem> vectors() const {
        std::vector<FreeElem> out;
        out.reserve(basis.size());
        for (const auto& b : basis) out.push_back(b.v);
        return out;
    }
};

inline ModuleGB module_groebner(const RingContext& ctx, const std::vector<FreeElem>& gens) {
    ModuleGB out;
    std::size_t s = gens.size();
    if (s == 0) return out;
    out.rank = gens[0].size();
    for (const auto& g : gens)
        if (g.size() != out.rank) throw std::invalid_argument("module generators of mixed rank");

    auto& G = out.basis;
    for (std::size_t k = 0; k < s; ++k) {
        FreeElem rep = elem_zero(s);
        rep[k] = poly_const(ctx, 1);
        if (elem_is_zero(gens[k])) {
            out.syzygies.push_back(rep);
        } else {
            G.push_back(TrackedElem{gens[k], rep});
        }
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 1; j < G.size(); ++j)
        for (std::size_t i = 0; i < j; ++i) pairs.push_back({i, j});

    while (!pairs.empty()) {
        auto [i, j] = pairs.back();
        pairs.pop_back();
        auto li = elem_leading(G[i].v), lj = elem_leading(G[j].v);
        if (li->comp != lj->comp) continue;
        Monomial l = mono_lcm(li->mono, lj->mono);
        std::int64_t ci = ctx.field.inv(li->coeff);
        std::int64_t cj = ctx.field.neg(ctx.field.inv(lj->coeff));
        Monomial mi = mono_div(l, li->mono), mj = mono_div(l, lj->mono);

        FreeElem sp = elem_add_scaled(ctx, elem_zero(out.rank), ci, mi, G[i].v);
        sp = elem_add_scaled(ctx, sp, cj, mj, G[j].v);
        FreeElem srep = elem_add_scaled(ctx, elem_zero(s), ci, mi, G[i].rep);
        srep = elem_add_scaled(ctx, srep, cj, mj, G[j].rep);

        std::vector<Poly> used;
        auto vecs = out.vectors();
        FreeElem nf = module_reduce(ctx, sp, vecs, &used);
        for (std::size_t k = 0; k < vecs.size(); ++k)
            if (!used[k].is_zero())
                srep = elem_add(ctx, srep, elem_scale_poly(ctx, poly_neg(ctx, used[k]), G[k].rep));
        if (elem_is_zero(nf)) {
            if (!elem_is_zero(srep)) out.syzygies.push_back(srep);
        } else {
            G.push_back(TrackedElem{nf, srep});
            for (std::size_t k = 0; k + 1 < G.size(); ++k) pairs.push_back({k, G.size() - 1});
        }
    }
    return out;
}

/// Reduced module Groebner basis: heads minimal, tails reduced, monic,
/// sorted. Unique per (submodule, order), so structural equality decides
/// submodule equality.
inline std::vector<FreeElem> module_groebner_reduced(const RingContext& ctx,
                                                     const std::vector<FreeElem>& gens) {
    auto gb = module_groebner(ctx, gens).vectors();
    std::vector<FreeElem> minimal;
    for (std::size_t i = 0; i < gb.size(); ++i) {
        auto li = elem_leading(gb[i]);
        bool redundant = false;
        for (std::size_t j = 0; j < gb.size() && !redundant; ++j) {
            if (i == j) continue;
            auto lj = elem_leading(gb[j]);
            if (lj->comp == li->comp && divides(lj->mono, li->mono)) {
                if (lj->mono == li->mono && j > i) continue;
                redundant = true;
            }
        }
        if (!redundant) minimal.push_back(gb[i]);
    }
    std::vector<FreeElem> out;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<FreeElem> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        FreeElem r = module_reduce(ctx, minimal[i], others);
        if (!elem_is_zero(r)) out.push_back(elem_monic(ctx, r));
    }
    std::sort(out.begin(), out.end(), [&](const FreeElem& a, const FreeElem& b) {
        auto la = elem_leading(a), lb = elem_leading(b);
        if (la->comp != lb->comp) return la->comp < lb->comp;
        return mono_cmp(la->mono, lb->mono, ctx.order) > 0;
    });
    return out;
}

inline bool module_membership(const RingContext& ctx, const FreeElem& v,
                              const std::vector<FreeElem>& gb) {
    return elem_is_zero(module_reduce(ctx, v, gb));
}

inline bool submodule_equal(const RingContext& ctx, const std::vector<FreeElem>& a,
                            const std::vector<FreeElem>& b) {
    return module_groebner_reduced(ctx, a) == module_groebner_reduced(ctx, b);
}

// ---- matrices ----

/// Matrix of polynomials mapping R^cols -> R^rows on column vectors.
struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<Poly>> a; // a[r][c]

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c)
        : rows(r), cols(c), a(r, std::vector<Poly>(c)) {}

    static Matrix identity(const RingContext& ctx, std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.a[i][i] = poly_const(ctx, 1);
        return m;
    }

    FreeElem column(std::size_t c) const {
        FreeElem v(rows);
        for (std::size_t r = 0; r < rows; ++r) v[r] = a[r][c];
        return v;
    }

    std::vector<FreeElem> columns() const {
        std::vector<FreeElem> out;
        out.reserve(cols);
        for (std::size_t c = 0; c < cols; ++c) out.push_back(column(c));
        return out;
    }

    bool operator==(const Matrix&) const = default;
};

inline Matrix matrix_from_columns(std::size_t rows, const std::vector<FreeElem>& cols) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c].size() != rows) throw std::invalid_argument("column rank mismatch");
        for (std::size_t r = 0; r < rows; ++r) m.a[r][c] = cols[c][r];
    }
    return m;
}

inline Matrix mat_mul(const RingContext& ctx, const Matrix& A, const Matrix& B) {
    if (A.cols != B.rows) throw std::invalid_argument("matrix dimension mismatch");
    Matrix C(A.rows, B.cols);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < B.cols; ++j) {
            Poly s;
            for (std::size_t k = 0; k < A.cols; ++k)
                s = poly_add(ctx, s, poly_mul(ctx, A.a[i][k], B.a[k][j]));
            C.a[i][j] = s;
        }
    return C;
}

inline Matrix mat_transpose(const Matrix& A) {
    Matrix T(A.cols, A.rows);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) T.a[j][i] = A.a[i][j];
    return T;
}

inline Matrix mat_hcat(const Matrix& A, const Matrix& B) {
    if (A.rows != B.rows) throw std::invalid_argument("hcat row mismatch");
    Matrix C(A.rows, A.cols + B.cols);
    for (std::size_t i = 0; i < A.rows; ++i) {
        for (std::size_t j = 0; j < A.cols; ++j) C.a[i][j] = A.a[i][j];
        for (std::size_t j = 0; j < B.cols; ++j) C.a[i][A.cols + j] = B.a[i][j];
    }
    return C;
}

inline bool mat_is_zero(const Matrix& A) {
    for (const auto& row : A.a)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

inline Matrix mat_frobenius(const RingContext& ctx, const Matrix& A, std::uint64_t q) {
    Matrix B = A;
    for (auto& row : B.a)
        for (auto& e : row) e = poly_frobenius(ctx, e, q);
    return B;
}

/// Columns generating the kernel of M acting on column vectors. Always
/// satisfies M * syzygies(M) = 0.
inline Matrix syzygies(const RingContext& ctx, const Matrix& M) {
    auto gb = module_groebner(ctx, M.columns());
    return matrix_from_columns(M.cols, gb.syzygies);
}

/// Solve A * X = B by column lifting; std::nullopt when some column of B is
/// not in the column span of A.
inline std::optional<Matrix> lift(const RingContext& ctx, const Matrix& B, const Matrix& A) {
    if (A.rows != B.rows) throw std::invalid_argument("lift: target rank mismatch");
    auto gb = module_groebner(ctx, A.columns());
    auto vecs = gb.vectors();
    Matrix X(A.cols, B.cols);
    for (std::size_t c = 0; c < B.cols; ++c) {
        std::vector<Poly> used;
        FreeElem nf = module_reduce(ctx, B.column(c), vecs, &used);
        if (!elem_is_zero(nf)) return std::nullopt;
        // translate combination of GB elements back to columns of A
        FreeElem x(A.cols);
        for (std::size_t k = 0; k < vecs.size(); ++k)
            if (!used[k].is_zero())
                x = elem_add(ctx, x, elem_scale_poly(ctx, used[k], gb.basis[k].rep));
        for (std::size_t r = 0; r < A.cols; ++r) X.a[r][c] = x[r];
    }
    return X;
}

/// Generators of the preimage {v : M v in column span of W}: the top block
/// of the syzygies of [M | W].
inline std::vector<FreeElem> preimage_module(const RingContext& ctx, const Matrix& M,
                                             const Matrix& W) {
    Matrix S = syzygies(ctx, mat_hcat(M, W));
    std::vector<FreeElem> out;
    for (std::size_t c = 0; c < S.cols; ++c) {
        FreeElem v(M.cols);
        for (std::size_t r = 0; r < M.cols; ++r) v[r] = S.a[r][c];
        if (!elem_is_zero(v)) out.push_back(std::move(v));
    }
    return out;
}

} // namespace fsing

#endif
