#ifndef FSING_RESOLUTION_HPP
#define FSING_RESOLUTION_HPP

#include <vector>

#include "modgb.hpp"

namespace fsing {

/// A finitely generated module presented as coker(rel: R^s -> R^rank).
struct PresentedModule {
    std::size_t rank = 0;
    Matrix rel; // rel.rows == rank

    bool operator==(const PresentedModule&) const = default;
};

inline PresentedModule cyclic_module(const RingContext& ctx, const Ideal& I) {
    const auto& G = groebner(ctx, I);
    Matrix rel(1, G.size());
    for (std::size_t j = 0; j < G.size(); ++j) rel.a[0][j] = G[j];
    return PresentedModule{1, rel};
}

inline bool presented_is_zero(const RingContext& ctx, const PresentedModule& M) {
    if (M.rank == 0) return true;
    auto gb = module_groebner(ctx, M.rel.columns()).vectors();
    for (std::size_t i = 0; i < M.rank; ++i) {
        FreeElem e(M.rank);
        e[i] = poly_const(ctx, 1);
        if (!module_membership(ctx, e, gb)) return false;
    }
    return true;
}

/// A map of presented modules, given on ambient free covers. Well-definedness
/// means matrix maps source relations into target relations.
struct ModuleMap {
    Matrix matrix; // target.rank x source.rank
};

inline bool map_well_defined(const RingContext& ctx, const Matrix& f,
                             const PresentedModule& src, const PresentedModule& tgt) {
    if (f.rows != tgt.rank || f.cols != src.rank) return false;
    if (src.rel.cols == 0) return true;
    Matrix img = mat_mul(ctx, f, src.rel);
    return lift(ctx, img, tgt.rel).has_value();
}

// ---- chain complexes and minimization ----

/// steps[0]: F_1 -> F_0, steps[k]: F_{k+1} -> F_k; composites are zero.
struct Resolution {
    std::vector<Matrix> steps;
    bool truncated = false;

    std::size_t length() const { return steps.size(); }
};

namespace detail {

inline bool constant_entry(const Poly& f) {
    return !f.is_zero() && f.is_constant();
}

/// One unit cancellation at steps[k], entry (i, j). Standard row/column
/// operations keep all composites zero and preserve the homotopy type.
inline void cancel_entry(const RingContext& ctx, std::vector<Matrix>& D,
                         std::size_t k, std::size_t i, std::size_t j) {
    Matrix& M = D[k];
    std::int64_t c = M.a[i][j].leading().coeff;
    std::int64_t cinv = ctx.field.inv(c);

    // clear row i using column j; mirror as row ops on D[k+1]
    for (std::size_t l = 0; l < M.cols; ++l) {
        if (l == j || M.a[i][l].is_zero()) continue;
        Poly g = poly_scale(ctx, M.a[i][l], cinv);
        for (std::size_t r = 0; r < M.rows; ++r)
            M.a[r][l] = poly_sub(ctx, M.a[r][l], poly_mul(ctx, g, M.a[r][j]));
        if (k + 1 < D.size())
            for (std::size_t t = 0; t < D[k + 1].cols; ++t)
                D[k + 1].a[j][t] =
                    poly_add(ctx, D[k + 1].a[j][t], poly_mul(ctx, g, D[k + 1].a[l][t]));
    }
    // clear column j using row i; mirror as column ops on D[k-1]
    for (std::size_t r = 0; r < M.rows; ++r) {
        if (r == i || M.a[r][j].is_zero()) continue;
        Poly g = poly_scale(ctx, M.a[r][j], cinv);
        for (std::size_t l = 0; l < M.cols; ++l)
            M.a[r][l] = poly_sub(ctx, M.a[r][l], poly_mul(ctx, g, M.a[i][l]));
        if (k > 0)
            for (std::size_t t = 0; t < D[k - 1].rows; ++t)
                D[k - 1].a[t][i] =
                    poly_add(ctx, D[k - 1].a[t][i], poly_mul(ctx, g, D[k - 1].a[t][r]));
    }
    // drop row i and column j of D[k], column i of D[k-1], row j of D[k+1]
    auto drop_row = [](Matrix& A, std::size_t r) {
        A.a.erase(A.a.begin() + long(r));
        --A.rows;
    };
    auto drop_col = [](Matrix& A, std::size_t cidx) {
        for (auto& row : A.a) row.erase(row.begin() + long(cidx));
        --A.cols;
    };
    drop_row(M, i);
    drop_col(M, j);
    if (k > 0) drop_col(D[k - 1], i);
    if (k + 1 < D.size()) drop_row(D[k + 1], j);
}

/// Cancel constant entries everywhere except in row positions of steps[0]'s
/// target when keep_first_target is set (a presentation being trimmed keeps
/// its cokernel, so cancellations there are fine; a resolution of a fixed
/// module must not touch F_0 -- but constants in steps[0] cannot occur for a
/// proper ideal, so the flag is mostly documentation).
inline bool minimize_complex(const RingContext& ctx, std::vector<Matrix>& D) {
    bool changed = false;
    bool again = true;
    while (again) {
        again = false;
        for (std::size_t k = 0; k < D.size() && !again; ++k)
            for (std::size_t i = 0; i < D[k].rows && !again; ++i)
                for (std::size_t j = 0; j < D[k].cols && !again; ++j)
                    if (constant_entry(D[k].a[i][j])) {
                        cancel_entry(ctx, D, k, i, j);
                        changed = again = true;
                    }
        // strip trailing empty steps
        while (!D.empty() && D.back().cols == 0) D.pop_back();
    }
    return changed;
}

} // namespace detail

/// Free resolution of coker(P) by iterated syzygies with unit-entry
/// minimization. Terminates at length <= nvars for graded input; beyond
/// max_length the resolution is truncated and flagged.
inline Resolution free_resolution(const RingContext& ctx, const Matrix& P,
                                  std::size_t max_length) {
    Resolution res;
    res.steps.push_back(P);
    while (res.steps.size() <= max_length) {
        Matrix S = syzygies(ctx, res.steps.back());
        if (S.cols == 0) break;
        res.steps.push_back(S);
        detail::minimize_complex(ctx, res.steps);
    }
    if (res.steps.size() > max_length) {
        res.steps.resize(max_length);
        res.truncated = true;
    } else if (!res.steps.empty() && syzygies(ctx, res.steps.back()).cols != 0) {
        res.truncated = true;
    }
    return res;
}

inline bool is_homogeneous(const Poly& f) {
    if (f.is_zero()) return true;
    Exponent d = total_degree(f.terms[0].mono);
    for (const auto& t : f.terms)
        if (total_degree(t.mono) != d) return false;
    return true;
}

inline bool is_graded_ideal(const Ideal& I) {
    for (const auto& g : I.gens)
        if (!is_homogeneous(g)) return false;
    return true;
}

/// Projective dimension of R/I equals codimension, for graded proper I.
inline bool is_cohen_macaulay(const RingContext& ctx, const Ideal& I) {
    if (!is_graded_ideal(I))
        throw std::invalid_argument("is_cohen_macaulay: input must be graded");
    if (is_unit_ideal(ctx, I))
        throw std::invalid_argument("is_cohen_macaulay: unit ideal");
    if (is_zero_ideal(ctx, I)) return true;
    Resolution res = free_resolution(ctx, cyclic_module(ctx, I).rel, ctx.nvars());
    return int(res.length()) == codim(ctx, I);
}

/// Three-valued Cohen-Macaulay test: the graded criterion when it applies,
/// the hypersurface case unconditionally, nullopt otherwise (the graded
/// pdim = codim criterion needs homogeneous input).
inline std::optional<bool> cohen_macaulay_status(const RingContext& ctx, const Ideal& I) {
    if (is_unit_ideal(ctx, I)) return std::nullopt;
    if (is_zero_ideal(ctx, I)) return true;
    if (is_graded_ideal(I)) return is_cohen_macaulay(ctx, I);
    if (groebner(ctx, I).size() == 1 && I.gens.size() == 1) return true; // hypersurface
    return std::nullopt;
}

// ---- trimming presentations ----

/// A minimized presentation together with isomorphism witnesses:
///   to_old: new generators expressed in the old basis (old_rank x new_rank)
///   to_new: old generators expressed in the new basis (new_rank x old_rank)
struct Trimmed {
    PresentedModule mod;
    Matrix to_old;
    Matrix to_new;
};

inline Trimmed trim(const RingContext& ctx, const PresentedModule& M) {
    Matrix P = M.rel;
    Matrix to_old = Matrix::identity(ctx, M.rank);
    Matrix to_new = Matrix::identity(ctx, M.rank);

    bool again = true;
    while (again) {
        again = false;
        for (std::size_t i = 0; i < P.rows && !again; ++i)
            for (std::size_t j = 0; j < P.cols && !again; ++j) {
                if (!detail::constant_entry(P.a[i][j])) continue;
                again = true;
                std::int64_t cinv = ctx.field.inv(P.a[i][j].leading().coeff);
                // substitution matrix for dropping generator i
                Matrix T(P.rows - 1, P.rows);
                std::size_t rr = 0;
                for (std::size_t r = 0; r < P.rows; ++r) {
                    if (r == i) continue;
                    T.a[rr][r] = poly_const(ctx, 1);
                    T.a[rr][i] = poly_scale(ctx, P.a[r][j], ctx.field.neg(cinv));
                    ++rr;
                }
                Matrix S(P.rows, P.rows - 1);
                rr = 0;
                for (std::size_t r = 0; r < P.rows; ++r) {
                    if (r == i) continue;
                    S.a[r][rr++] = poly_const(ctx, 1);
                }
                to_new = mat_mul(ctx, T, to_new);
                to_old = mat_mul(ctx, to_old, S);
                // clear row i by column operations, then drop row i / column j
                std::vector<Matrix> one{P};
                detail::cancel_entry(ctx, one, 0, i, j);
                P = one[0];
            }
    }
    // drop zero relation columns
    Matrix cleaned(P.rows, 0);
    for (std::size_t j = 0; j < P.cols; ++j) {
        bool zero = true;
        for (std::size_t r = 0; r < P.rows && zero; ++r)
            if (!P.a[r][j].is_zero()) zero = false;
        if (!zero) {
            cleaned.a.resize(P.rows);
            for (std::size_t r = 0; r < P.rows; ++r) cleaned.a[r].push_back(P.a[r][j]);
            ++cleaned.cols;
        }
    }
    if (cleaned.a.empty()) cleaned.a.resize(P.rows);
    cleaned.rows = P.rows;
    return Trimmed{PresentedModule{P.rows, cleaned}, to_old, to_new};
}

// ---- Ext ----

/// Ext^i(M, R) as a presented module, with the cocycle representatives of
/// its generators inside F_i^* retained for functoriality.
struct ExtData {
    PresentedModule mod;   // trimmed presentation
    Matrix cocycles;       // F_i^* representative for each trimmed generator
    Matrix coboundaries;   // image of D_i^T inside F_i^*
    Matrix to_old, to_new; // trim witnesses (untrimmed <-> trimmed)
    Matrix kernel;         // untrimmed cocycle generators
    PresentedModule untrimmed;
};

inline ExtData ext_data(const RingContext& ctx, const Resolution& res, std::size_t i) {
    std::size_t len = res.length();
    auto free_rank = [&](std::size_t k) {
        return k == 0 ? res.steps[0].rows : res.steps[k - 1].cols;
    };

    ExtData out;
    if (i > len) {
        out.mod = PresentedModule{0, Matrix(0, 0)};
        out.untrimmed = out.mod;
        return out;
    }
    std::size_t rank_i = free_rank(i);

    Matrix K;
    if (i < len) {
        K = syzygies(ctx, mat_transpose(res.steps[i]));
        // kernel of D_{i+1}^T: F_i^* -> F_{i+1}^*
    } else {
        K = Matrix::identity(ctx, rank_i);
    }
    Matrix B = (i == 0) ? Matrix(rank_i, 0) : mat_transpose(res.steps[i - 1]);

    std::vector<FreeElem> relgens = preimage_module(ctx, K, B);
    Matrix P = matrix_from_columns(K.cols, relgens);

    out.untrimmed = PresentedModule{K.cols, P};
    Trimmed t = trim(ctx, out.untrimmed);
    out.mod = t.mod;
    out.to_old = t.to_old;
    out.to_new = t.to_new;
    out.kernel = K;
    out.coboundaries = B;
    out.cocycles = (K.cols > 0 && t.mod.rank > 0) ? mat_mul(ctx, K, t.to_old)
                                                  : Matrix(rank_i, t.mod.rank);
    return out;
}

inline PresentedModule ext_module(const RingContext& ctx, const PresentedModule& M,
                                  std::size_t i) {
    if (i > ctx.nvars()) throw std::invalid_argument("ext index above variable count");
    Resolution res = free_resolution(ctx, M.rel, ctx.nvars());
    return ext_data(ctx, res, i).mod;
}

} // namespace fsing

#endif
