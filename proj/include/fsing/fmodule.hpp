#ifndef FSING_FMODULE_HPP
#define FSING_FMODULE_HPP

#include <string>
#include <vector>

#include "closure.hpp"

namespace fsing {

/// omega_A = Ext^c(R/I, R) as a trimmed presentation, c = codim I.
inline ExtData canonical_module_data(const RingContext& ctx, const Ideal& I) {
    if (is_unit_ideal(ctx, I)) throw std::invalid_argument("canonical module of zero ring");
    std::size_t c = std::size_t(codim(ctx, I));
    Resolution res = free_resolution(ctx, cyclic_module(ctx, I).rel, ctx.nvars());
    if (res.truncated) throw std::runtime_error("resolution did not terminate");
    return ext_data(ctx, res, c);
}

inline PresentedModule canonical_module(const RingContext& ctx, const Ideal& I) {
    return canonical_module_data(ctx, I).mod;
}

/// The pair (M, beta^e) with M = omega_A and beta the structural map
/// M -> F^{e*}M. F^{e*}M is presented by the entrywise q-th power of M's
/// presentation matrix; the colimit it generates is never materialized.
struct RootLadder {
    PresentedModule base;
    Matrix beta; // base.rank x base.rank, target presented by rel^[q]
    FrobeniusExponent fe;
    bool injective = false;
};

inline bool ladder_well_defined(const RingContext& ctx, const RootLadder& L) {
    PresentedModule target{L.base.rank, mat_frobenius(ctx, L.base.rel, L.fe.q)};
    return map_well_defined(ctx, L.beta, L.base, target);
}

/// Injectivity of beta on coker(rel): every v with beta(v) in im(rel^[q])
/// must already lie in im(rel).
inline bool ladder_injective(const RingContext& ctx, const RootLadder& L) {
    Matrix relq = mat_frobenius(ctx, L.base.rel, L.fe.q);
    auto ker = preimage_module(ctx, L.beta, relq);
    auto gb = module_groebner(ctx, L.base.rel.columns()).vectors();
    for (const auto& v : ker)
        if (!module_membership(ctx, v, gb)) return false;
    return true;
}

/// Build the ladder for omega_A: resolve R/I, power the resolution (Frobenius
/// is flat over the regular ambient ring, so the powered complex resolves
/// R/I^[q]), lift the identity of R across the two resolutions, and read the
/// induced map off the top Ext. Trim witnesses transport the map to the
/// trimmed presentation, with the target witness powered.
inline RootLadder root_map(const RingContext& ctx, const Ideal& I,
                           const FrobeniusExponent& fe) {
    ExtData E = canonical_module_data(ctx, I);
    std::size_t c = std::size_t(codim(ctx, I));
    Resolution res = free_resolution(ctx, cyclic_module(ctx, I).rel, ctx.nvars());

    RootLadder L;
    L.fe = fe;
    L.base = E.mod;
    if (E.mod.rank == 0) {
        L.beta = Matrix(0, 0);
        L.injective = true;
        return L;
    }

    // chain map phi_k: F_k^[q] -> F_k over the projection R/I^[q] -> R/I
    Matrix phi = Matrix::identity(ctx, res.steps[0].rows);
    for (std::size_t k = 0; k < c; ++k) {
        Matrix Dq = mat_frobenius(ctx, res.steps[k], fe.q);
        auto X = lift(ctx, mat_mul(ctx, phi, Dq), res.steps[k]);
        if (!X) throw std::logic_error("chain lift failed on exact data");
        phi = *X;
    }

    // transported cocycles, rewritten in the powered cocycle basis modulo
    // powered coboundaries
    Matrix moved = mat_mul(ctx, mat_transpose(phi), E.kernel);
    Matrix Kq = mat_frobenius(ctx, E.kernel, fe.q);
    Matrix Bq = mat_frobenius(ctx, E.coboundaries, fe.q);
    auto X = lift(ctx, moved, mat_hcat(Kq, Bq));
    if (!X) throw std::logic_error("cocycle rewrite failed on exact data");
    Matrix beta_u(Kq.cols, E.kernel.cols);
    for (std::size_t r = 0; r < Kq.cols; ++r)
        for (std::size_t j = 0; j < E.kernel.cols; ++j) beta_u.a[r][j] = X->a[r][j];

    L.beta = mat_mul(ctx, mat_frobenius(ctx, E.to_new, fe.q),
                     mat_mul(ctx, beta_u, E.to_old));
    if (!ladder_well_defined(ctx, L))
        throw std::logic_error("root map is not well defined on exact data");
    L.injective = ladder_injective(ctx, L);
    return L;
}

/// Minimal root by descent. The iterate sends N to the smallest submodule N'
/// with beta(N) inside F^{e*}N', computed as the componentwise Frobenius root
/// of beta(N) together with the powered relations. The chain is descending
/// and stabilizes; the fixed point is the minimal root (unique for injective
/// beta).
struct DescentResult {
    Matrix generators; // columns generate N inside R^rank, relations included
    unsigned steps = 0;
    std::vector<std::size_t> chain_sizes; // reduced GB sizes along the chain
};

inline DescentResult root_descent(const RingContext& ctx, const RootLadder& L,
                                  unsigned max_steps = 64) {
    if (!L.injective)
        throw std::invalid_argument("root_descent needs an injective ladder");
    std::size_t r = L.base.rank;
    auto rel_cols = L.base.rel.columns();
    Matrix relq = mat_frobenius(ctx, L.base.rel, L.fe.q);
    auto relq_cols = relq.columns();

    std::vector<FreeElem> cur;
    for (std::size_t i = 0; i < r; ++i) {
        FreeElem e(r);
        e[i] = poly_const(ctx, 1);
        cur.push_back(e);
    }
    cur.insert(cur.end(), rel_cols.begin(), rel_cols.end());
    cur = module_groebner_reduced(ctx, cur);

    DescentResult out;
    out.chain_sizes.push_back(cur.size());
    for (unsigned step = 0; step < max_steps; ++step) {
        std::vector<FreeElem> imgs;
        for (const auto& v : cur) {
            FreeElem bv(r);
            for (std::size_t i = 0; i < r; ++i) {
                Poly s;
                for (std::size_t j = 0; j < r; ++j)
                    s = poly_add(ctx, s, poly_mul(ctx, L.beta.a[i][j], v[j]));
                bv[i] = s;
            }
            if (!elem_is_zero(bv)) imgs.push_back(std::move(bv));
        }
        imgs.insert(imgs.end(), relq_cols.begin(), relq_cols.end());
        std::vector<FreeElem> next = frobenius_root_vectors(ctx, imgs, L.fe.q);
        next.insert(next.end(), rel_cols.begin(), rel_cols.end());
        next = module_groebner_reduced(ctx, next);
        ++out.steps;
        out.chain_sizes.push_back(next.size());
        if (next == cur) break;
        cur = std::move(next);
        if (step + 1 == max_steps)
            throw std::runtime_error("root descent did not stabilize");
    }

    // soundness: beta(N) inside F^(e*)N
    std::vector<FreeElem> powered;
    for (const auto& v : cur) {
        FreeElem w(r);
        for (std::size_t i = 0; i < r; ++i) w[i] = poly_frobenius(ctx, v[i], L.fe.q);
        powered.push_back(std::move(w));
    }
    powered.insert(powered.end(), relq_cols.begin(), relq_cols.end());
    auto powered_gb = module_groebner(ctx, powered).vectors();
    for (const auto& v : cur) {
        FreeElem bv(r);
        for (std::size_t i = 0; i < r; ++i) {
            Poly s;
            for (std::size_t j = 0; j < r; ++j)
                s = poly_add(ctx, s, poly_mul(ctx, L.beta.a[i][j], v[j]));
            bv[i] = s;
        }
        if (!module_membership(ctx, bv, powered_gb))
            throw std::logic_error("descent fixed point is not beta-stable");
    }
    out.generators = matrix_from_columns(r, cur);
    return out;
}

/// Whether the descent result is all of the base module.
inline bool descent_is_full(const RingContext& ctx, const RootLadder& L,
                            const DescentResult& D) {
    auto gb = module_groebner(ctx, D.generators.columns()).vectors();
    for (std::size_t i = 0; i < L.base.rank; ++i) {
        FreeElem e(L.base.rank);
        e[i] = poly_const(ctx, 1);
        if (!module_membership(ctx, e, gb)) return false;
    }
    return true;
}

// ---- D-simplicity ----

enum class Simplicity { Simple, NotSimple, Inconclusive };
enum class SimplicityRoute { FRational, JStarEqualsJF, WitnessPair, None };

/// A replayable non-simplicity witness: z certified in J^* (integral
/// dependence) together with per-level Frobenius refutations.
struct SimplicityWitness {
    Poly z;
    Ideal J;
    ClosureCertificate tight;
    FrobeniusMembership frobenius;
};

/// A tight-closure excess element absorbed by Frobenius closure: z^(p^e)
/// lies in J^[p^e] + I.
struct AbsorbedWitness {
    Poly z;
    unsigned e = 0;
    Ideal J;
};

struct SimplicityVerdict {
    Simplicity verdict = Simplicity::Inconclusive;
    SimplicityRoute route = SimplicityRoute::None;
    std::optional<SimplicityWitness> witness;
    std::vector<AbsorbedWitness> absorbed;
    ClosureCaps bounds;
    bool domain_asserted = false;
    bool graded = false;
    std::optional<bool> cohen_macaulay;
    bool certified = false;
    bool leaning_simple = false; // Simple evidence under unverified CM
    std::vector<std::string> transcript;
};

/// Decision procedure for simplicity of the unit module attached to A,
/// via the parameter-ideal criterion J^* = J^F. Routes, in order: F-rational
/// shortcut; certified witness pair (tight In, Frobenius out at every probed
/// level); all tight-closure excess absorbed by Frobenius closure. The
/// only-if direction of the criterion needs Cohen-Macaulayness, so Simple
/// under unverified CM is downgraded to Inconclusive with a leaning flag.
/// NotSimple needs only the if direction and stands regardless.
inline SimplicityVerdict dsimplicity(const QuotientRing& A, const ClosureCaps& caps = {}) {
    const RingContext& ctx = A.ctx;
    if (!A.asserted_domain)
        throw std::invalid_argument("dsimplicity requires the domain assertion");
    SimplicityVerdict out;
    out.bounds = caps;
    out.domain_asserted = true;
    out.graded = is_graded_ideal(A.I);
    out.cohen_macaulay = cohen_macaulay_status(ctx, A.I);
    out.transcript.push_back("grading interpreted at the origin");

    TestElement c = find_test_element(A);
    out.transcript.push_back("test element: " + poly_to_string(ctx, c.element));
    ParameterSystem base = find_parameters(A);
    {
        std::string line = "parameters:";
        for (const auto& y : base.elements) line += " " + poly_to_string(ctx, y);
        if (base.elements.empty()) line += " (none, dimension zero)";
        out.transcript.push_back(line);
    }

    if (out.cohen_macaulay == std::optional<bool>(true)) {
        FRationalResult fr = is_f_rational(A, base, c, caps);
        if (fr.verdict == FRationalVerdict::Yes) {
            out.verdict = Simplicity::Simple;
            out.route = SimplicityRoute::FRational;
            out.certified = fr.certified;
            out.transcript.push_back("F-rational through t = " + std::to_string(fr.probed_t));
            return out;
        }
        out.transcript.push_back(fr.verdict == FRationalVerdict::No
                                     ? "not F-rational"
                                     : "F-rationality inconclusive");
    }

    bool all_absorbed = true;
    bool saw_uncertified = false;
    for (unsigned t = 1; t <= caps.t_max; ++t) {
        ParameterSystem ps{base.elements, t};
        TightClosureResult tc = tight_closure_ideal(A, ps, c, caps);
        Ideal J = parameter_ideal(ctx, ps);
        Ideal JI = ideal_sum(ctx, J, A.I);
        groebner(ctx, JI);
        for (const auto& [z, cert] : tc.generator_certificates) {
            FrobeniusMembership fm = frobenius_membership(ctx, z, J, A.I, caps.e_max);
            if (fm.witness_e) {
                out.absorbed.push_back({z, *fm.witness_e, J});
                out.transcript.push_back("t=" + std::to_string(t) + ": " +
                                         poly_to_string(ctx, z) +
                                         " absorbed at e=" + std::to_string(*fm.witness_e));
                continue;
            }
            all_absorbed = false;
            if (cert.verdict == Verdict::In && cert.certified) {
                out.verdict = Simplicity::NotSimple;
                out.route = SimplicityRoute::WitnessPair;
                out.witness = SimplicityWitness{z, J, cert, fm};
                out.certified = true;
                out.transcript.push_back("t=" + std::to_string(t) + ": witness " +
                                         poly_to_string(ctx, z) +
                                         " certified tight, Frobenius refuted to e=" +
                                         std::to_string(caps.e_max));
                return out;
            }
            saw_uncertified = true;
        }
    }

    if (all_absorbed && !saw_uncertified) {
        if (out.cohen_macaulay == std::optional<bool>(true)) {
            out.verdict = Simplicity::Simple;
            out.route = SimplicityRoute::JStarEqualsJF;
            out.certified = false; // bounded probes
        } else {
            out.verdict = Simplicity::Inconclusive;
            out.route = SimplicityRoute::JStarEqualsJF;
            out.leaning_simple = true;
            out.transcript.push_back("Cohen-Macaulay hypothesis unverified");
        }
        return out;
    }
    out.verdict = Simplicity::Inconclusive;
    return out;
}

// ---- generator of L(A, R) ----

struct LGenerator {
    Poly factor;          // the generator is factor * eta, eta the module generator
    bool tau_is_unit = false;
    bool certified = false;
    bool stabilized = false;
    std::string description;
};

/// Generator of the simple submodule: c * eta for eta the chosen generator
/// of a cyclic omega_A; the factor collapses to 1 when the parameter test
/// ideal is the unit ideal.
inline LGenerator l_generator(const QuotientRing& A, const TestElement& c,
                              const ClosureCaps& caps = {}) {
    const RingContext& ctx = A.ctx;
    PresentedModule omega = canonical_module(ctx, A.I);
    if (omega.rank != 1)
        throw std::invalid_argument("l_generator: canonical module is not cyclic");
    ParameterSystem base = find_parameters(A);
    ParameterTestIdealResult tau = parameter_test_ideal(A, base, c, caps);

    LGenerator out;
    out.stabilized = tau.stabilized;
    if (is_unit_ideal(ctx, tau.ideal)) {
        out.factor = poly_const(ctx, 1);
        out.tau_is_unit = true;
        out.certified = tau.certified && tau.stabilized;
        out.description = "eta itself (parameter test ideal is the unit ideal)";
        return out;
    }
    bool in_tau = ideal_membership(ctx, c.element, tau.ideal);
    out.factor = c.element;
    out.certified = in_tau && tau.certified && tau.stabilized;
    out.description = poly_to_string(ctx, c.element) + " * eta";
    if (!in_tau) out.description += " (test element outside the probed test ideal)";
    return out;
}

// ---- per-component mode ----

struct ComponentSummary {
    std::vector<SimplicityVerdict> verdicts;
    std::size_t simple_count = 0;
    std::size_t component_count = 0;
};

/// Per-minimal-prime verdicts; the total module splits as a direct sum over
/// the components, so the summary counts simple summands. Equidimensional
/// input required.
inline ComponentSummary components_mode(const RingContext& ctx,
                                        const std::vector<Ideal>& primes,
                                        const ClosureCaps& caps = {}) {
    if (primes.empty()) throw std::invalid_argument("components_mode: no components");
    int c0 = codim(ctx, primes.front());
    for (const auto& P : primes)
        if (codim(ctx, P) != c0)
            throw std::invalid_argument("components_mode: mixed codimensions");
    ComponentSummary out;
    out.component_count = primes.size();
    for (const auto& P : primes) {
        QuotientRing A = quotient_ring(ctx, P, true);
        SimplicityVerdict v = dsimplicity(A, caps);
        if (v.verdict == Simplicity::Simple) ++out.simple_count;
        out.verdicts.push_back(std::move(v));
    }
    return out;
}

} // namespace fsing

#endif
