#ifndef FSING_CLOSURE_HPP
#define FSING_CLOSURE_HPP

#include <string>

#include "frobenius.hpp"
#include "resolution.hpp"

namespace fsing {

/// The quotient A = R/I, together with the user-supplied domain assertion.
/// Closure operations work with ideals of A given by their lifts to R.
struct QuotientRing {
    RingContext ctx;
    Ideal I;
    bool asserted_domain = false;
    int dim = 0;
    int codim = 0;
};

inline QuotientRing quotient_ring(const RingContext& ctx, const Ideal& I,
                                  bool asserted_domain) {
    if (is_unit_ideal(ctx, I)) throw std::invalid_argument("quotient by unit ideal");
    int d = krull_dimension(ctx, I);
    return QuotientRing{ctx, I, asserted_domain, d, int(ctx.nvars()) - d};
}

inline Poly derivative(const RingContext& ctx, const Poly& f, std::size_t var) {
    std::map<Monomial, std::int64_t> pile;
    for (const auto& t : f.terms) {
        if (t.mono[var] == 0) continue;
        Monomial m = t.mono;
        std::int64_t c = ctx.field.mul(t.coeff, ctx.field.reduce(std::int64_t(m[var])));
        if (c == 0) continue;
        m[var] -= 1;
        auto& slot = pile[m];
        slot = ctx.field.add(slot, c);
    }
    return poly_collect(ctx, pile);
}

namespace detail {

inline Poly minor_det(const RingContext& ctx, const std::vector<std::vector<Poly>>& M,
                      const std::vector<std::size_t>& rows,
                      const std::vector<std::size_t>& cols) {
    std::size_t k = rows.size();
    if (k == 1) return M[rows[0]][cols[0]];
    Poly det;
    std::vector<std::size_t> subrows(rows.begin() + 1, rows.end());
    for (std::size_t j = 0; j < k; ++j) {
        std::vector<std::size_t> subcols;
        for (std::size_t l = 0; l < k; ++l)
            if (l != j) subcols.push_back(cols[l]);
        Poly cof = poly_mul(ctx, M[rows[0]][cols[j]], minor_det(ctx, M, subrows, subcols));
        det = (j % 2 == 0) ? poly_add(ctx, det, cof) : poly_sub(ctx, det, cof);
    }
    return det;
}

inline void subsets(std::size_t n, std::size_t k,
                    const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t pos) {
        if (pos == k) {
            fn(idx);
            return;
        }
        for (std::size_t i = start; i + (k - pos) <= n; ++i) {
            idx[pos] = i;
            rec(i + 1, pos + 1);
        }
    };
    rec(0, 0);
}

} // namespace detail

/// Ideal of c x c minors of the partial-derivative matrix of the generators
/// of I (c = codim I), plus I: the Jacobian locus of Sing(A).
inline Ideal jacobian_ideal(const RingContext& ctx, const Ideal& I) {
    std::size_t c = std::size_t(codim(ctx, I));
    if (c == 0) return Ideal{{poly_const(ctx, 1)}}; // empty minor convention: smooth
    std::size_t n = ctx.nvars(), k = I.gens.size();
    std::vector<std::vector<Poly>> Jmat(k, std::vector<Poly>(n));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) Jmat[i][j] = derivative(ctx, I.gens[i], j);

    std::vector<Poly> gens;
    if (c > k || c > n) {
        // more minors demanded than available: fall back to I
    } else {
        detail::subsets(k, c, [&](const std::vector<std::size_t>& rows) {
            detail::subsets(n, c, [&](const std::vector<std::size_t>& cols) {
                Poly d = detail::minor_det(ctx, Jmat, rows, cols);
                if (!d.is_zero()) gens.push_back(d);
            });
        });
    }
    gens.insert(gens.end(), I.gens.begin(), I.gens.end());
    return Ideal{std::move(gens)};
}

struct TestElement {
    Poly element;
    std::string provenance;
    unsigned power_cap = 3; // powers of the element tried in probes
};

struct NoTestElementFound : std::runtime_error {
    NoTestElementFound() : std::runtime_error("no test element: Jacobian ideal lies in I") {}
};

/// Deterministic test element choice: among the Jacobian minors (monic,
/// sorted by degree then order), the first with nonzero image in A that
/// vanishes on the singular locus.
inline TestElement find_test_element(const QuotientRing& A) {
    if (!A.asserted_domain)
        throw std::invalid_argument("find_test_element requires the domain assertion");
    const RingContext& ctx = A.ctx;
    Ideal jac = jacobian_ideal(ctx, A.I);
    std::vector<Poly> candidates;
    for (const auto& g : jac.gens) {
        if (g.is_zero()) continue;
        candidates.push_back(poly_monic(ctx, g));
    }
    std::sort(candidates.begin(), candidates.end(), [&](const Poly& a, const Poly& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return mono_cmp(a.leading().mono, b.leading().mono, ctx.order) > 0;
    });
    for (const auto& cand : candidates) {
        Poly nf = reduce(ctx, cand, groebner(ctx, A.I));
        if (nf.is_zero()) continue;
        if (!radical_membership(ctx, cand, jac)) continue; // must vanish on Sing(A)
        return TestElement{cand, "jacobian minor, vanishes on the singular locus"};
    }
    throw NoTestElementFound{};
}

/// System of parameters for A, with its power index t: J_t = (y_1^t, ..., y_d^t).
struct ParameterSystem {
    std::vector<Poly> elements;
    unsigned t = 1;
};

inline Ideal parameter_ideal(const RingContext& ctx, const ParameterSystem& ps) {
    std::vector<Poly> gens;
    for (const auto& y : ps.elements) gens.push_back(poly_pow(ctx, y, ps.t));
    return Ideal{std::move(gens)};
}

/// Deterministic enumeration of small linear combinations of the variables,
/// greedily accepted whenever the dimension of R/(I + chosen) drops.
inline ParameterSystem find_parameters(const QuotientRing& A) {
    const RingContext& ctx = A.ctx;
    std::size_t n = ctx.nvars();
    std::vector<Poly> chosen;
    int cur = A.dim;
    auto try_candidate = [&](const Poly& cand) {
        if (cur == 0) return;
        std::vector<Poly> gens = A.I.gens;
        gens.insert(gens.end(), chosen.begin(), chosen.end());
        gens.push_back(cand);
        Ideal sum{gens};
        if (is_unit_ideal(ctx, sum)) return;
        int d = krull_dimension(ctx, sum);
        if (d < cur) {
            chosen.push_back(cand);
            cur = d;
        }
    };
    for (std::size_t i = 0; i < n && cur > 0; ++i) try_candidate(poly_var(ctx, i));
    for (std::size_t i = 0; i < n && cur > 0; ++i)
        for (std::size_t j = i + 1; j < n && cur > 0; ++j)
            for (std::int64_t c = 1; c < ctx.p() && cur > 0; ++c)
                try_candidate(poly_add(ctx, poly_var(ctx, i),
                                       poly_scale(ctx, poly_var(ctx, j), c)));
    for (std::size_t i = 0; i < n && cur > 0; ++i)
        for (std::size_t j = i + 1; j < n && cur > 0; ++j)
            for (std::size_t k = j + 1; k < n && cur > 0; ++k)
                for (std::int64_t c = 1; c < ctx.p() && cur > 0; ++c)
                    for (std::int64_t d = 1; d < ctx.p() && cur > 0; ++d) {
                        Poly s = poly_add(ctx, poly_var(ctx, i),
                                          poly_scale(ctx, poly_var(ctx, j), c));
                        try_candidate(poly_add(ctx, s, poly_scale(ctx, poly_var(ctx, k), d)));
                    }
    if (cur != 0)
        throw std::runtime_error("parameter search exhausted without reaching dimension zero");
    if (int(chosen.size()) != A.dim)
        throw std::runtime_error("parameter search needed more elements than dim A");
    return ParameterSystem{std::move(chosen), 1};
}

// ---- certificates ----

enum class ClosureKind { FrobeniusClosure, TightClosure, IntegralClosure };
enum class Verdict { In, NotIn, InUpTo, NotUpTo };

/// Integral dependence z^k + b_1 z^{k-1} + ... + b_k = 0 mod I, b_i in J^i.
struct DependenceEquation {
    Poly z;
    unsigned k = 0;
    std::vector<Poly> coeffs; // coeffs[i-1] = b_i
};

struct ClosureCertificate {
    ClosureKind kind;
    Verdict verdict;
    std::optional<unsigned> witness_e;
    std::optional<DependenceEquation> dependence;
    unsigned probe_bound = 0;
    unsigned test_power = 1;
    bool certified = false;
    bool domain_asserted = false;
    std::string note;
};

/// Tight-closure membership probe for z against the parameter ideal of ps.
/// A failure of c^k z^q in J^[q] + I for every tried power k at a single
/// level refutes membership outright (a completely stable test element works
/// at every level); success through the whole window stays heuristic.
inline ClosureCertificate tight_membership(const QuotientRing& A, const Poly& z,
                                           const ParameterSystem& ps, const TestElement& c,
                                           unsigned e_max) {
    const RingContext& ctx = A.ctx;
    ClosureCertificate cert;
    cert.kind = ClosureKind::TightClosure;
    cert.probe_bound = e_max;
    cert.domain_asserted = A.asserted_domain;
    if (reduce(ctx, c.element, groebner(ctx, A.I)).is_zero())
        throw std::invalid_argument("invalid test element: zero in A");

    Ideal J = parameter_ideal(ctx, ps);
    if (ideal_membership(ctx, z, ideal_sum(ctx, J, A.I))) {
        cert.verdict = Verdict::In;
        cert.witness_e = 0;
        cert.certified = true;
        cert.note = "element lies in the parameter ideal";
        return cert;
    }
    unsigned max_power_used = 1;
    for (unsigned e = 0; e <= e_max; ++e) {
        FrobeniusExponent fe(ctx, e);
        Ideal Jq = frobenius_power(ctx, J, fe);
        Poly zq = poly_frobenius(ctx, z, fe.q);
        bool ok = false;
        for (unsigned k = 1; k <= c.power_cap && !ok; ++k) {
            Poly ck = poly_pow(ctx, c.element, k);
            if (quotient_membership(ctx, poly_mul(ctx, ck, zq), Jq, A.I)) {
                ok = true;
                max_power_used = std::max(max_power_used, k);
            }
        }
        if (!ok) {
            cert.verdict = Verdict::NotIn;
            cert.witness_e = e;
            cert.test_power = c.power_cap;
            cert.certified = true;
            return cert;
        }
    }
    cert.verdict = Verdict::InUpTo;
    cert.witness_e = e_max;
    cert.test_power = max_power_used;
    cert.certified = false;
    return cert;
}

namespace detail {

/// All products of exactly k generators of J (with repetition).
inline std::vector<Poly> ideal_power_products(const RingContext& ctx, const Ideal& J,
                                              unsigned k) {
    std::vector<Poly> cur{poly_const(ctx, 1)};
    for (unsigned i = 0; i < k; ++i) {
        std::vector<Poly> next;
        for (const auto& f : cur)
            for (const auto& g : J.gens) next.push_back(poly_mul(ctx, f, g));
        cur = std::move(next);
    }
    return cur;
}

} // namespace detail

/// Integral closure membership via the equational criterion: search for
/// z^k + b_1 z^{k-1} + ... + b_k = 0 mod I with b_i in J^i. Refutation is
/// certified through radical membership (integral elements lie in sqrt(J+I)).
inline ClosureCertificate integral_membership(const QuotientRing& A, const Poly& z,
                                              const Ideal& J, unsigned degree_cap = 6) {
    const RingContext& ctx = A.ctx;
    if (!A.asserted_domain)
        throw std::invalid_argument("integral_membership requires the domain assertion");
    ClosureCertificate cert;
    cert.kind = ClosureKind::IntegralClosure;
    cert.probe_bound = degree_cap;
    cert.domain_asserted = true;

    for (unsigned k = 1; k <= degree_cap; ++k) {
        // generators: J^i * z^(k-i) for i = 1..k, then I
        std::vector<Poly> gens;
        std::vector<unsigned> level; // which i each generator came from, 0 for I
        for (unsigned i = 1; i <= k; ++i) {
            Poly zpow = poly_pow(ctx, z, k - i);
            for (const auto& prod : detail::ideal_power_products(ctx, J, i)) {
                gens.push_back(poly_mul(ctx, prod, zpow));
                level.push_back(i);
            }
        }
        for (const auto& g : A.I.gens) {
            gens.push_back(g);
            level.push_back(0);
        }
        Poly zk = poly_pow(ctx, z, k);
        Matrix target(1, 1);
        target.a[0][0] = zk;
        Matrix Amat(1, gens.size());
        for (std::size_t j = 0; j < gens.size(); ++j) Amat.a[0][j] = gens[j];
        auto X = lift(ctx, target, Amat);
        if (!X) continue;

        DependenceEquation eq;
        eq.z = z;
        eq.k = k;
        eq.coeffs.assign(k, Poly{});
        Poly zk_check = zk;
        for (std::size_t j = 0; j < gens.size(); ++j) {
            const Poly& h = X->a[j][0];
            if (h.is_zero() || level[j] == 0) continue;
            unsigned i = level[j];
            // b_i collects h * (J^i product); sign convention: z^k = sum b_i z^(k-i)
            Poly prod_ji = poly_exact_div(ctx, gens[j], poly_pow(ctx, z, k - i));
            eq.coeffs[i - 1] = poly_add(ctx, eq.coeffs[i - 1], poly_mul(ctx, h, prod_ji));
        }
        // replayable check: z^k - sum b_i z^(k-i) lies in I
        Poly resid = zk;
        for (unsigned i = 1; i <= k; ++i)
            resid = poly_sub(ctx, resid,
                             poly_mul(ctx, eq.coeffs[i - 1], poly_pow(ctx, z, k - i)));
        if (!ideal_membership(ctx, resid, A.I))
            throw std::logic_error("integral dependence reconstruction failed");
        cert.verdict = Verdict::In;
        cert.dependence = std::move(eq);
        cert.certified = true;
        return cert;
    }
    Ideal JI = ideal_sum(ctx, J, A.I);
    if (!radical_membership(ctx, z, JI)) {
        cert.verdict = Verdict::NotIn;
        cert.certified = true;
        cert.note = "element avoids the radical of J + I";
        return cert;
    }
    cert.verdict = Verdict::NotUpTo;
    cert.certified = false;
    return cert;
}

// ---- tight closure of a parameter ideal, parameter test ideal ----

struct TightClosureResult {
    Ideal ideal; // lifted to R, contains J + I
    bool certified = false;
    std::optional<unsigned> stabilized_at;
    unsigned probed_e = 0;
    std::vector<std::pair<Poly, ClosureCertificate>> generator_certificates;
};

/// Probe of J^* in A as the finite intersection over e of
/// {z : c z^q in J^[q] + I}, with early exit on stabilization.
inline TightClosureResult tight_closure_ideal(const QuotientRing& A, const ParameterSystem& ps,
                                              const TestElement& c, const ClosureCaps& caps = {}) {
    const RingContext& ctx = A.ctx;
    Ideal J = parameter_ideal(ctx, ps);
    Ideal JI = ideal_sum(ctx, J, A.I);
    groebner(ctx, JI);

    TightClosureResult out;
    Ideal acc;
    bool first = true;
    unsigned agree = 0;
    unsigned window = std::max(1u, caps.window);
    for (unsigned e = 0; e <= caps.e_max; ++e) {
        FrobeniusExponent fe(ctx, e);
        Ideal K = ideal_sum(ctx, frobenius_power(ctx, J, fe), A.I);
        Ideal level = frobenius_preimage_scaled(ctx, K, c.element, fe, &JI);
        out.probed_e = e;
        if (first) {
            acc = level;
            first = false;
        } else {
            Ideal next = intersect(ctx, acc, level);
            if (ideal_equal(ctx, next, acc)) {
                ++agree;
            } else {
                agree = 0;
            }
            acc = next;
            if (agree >= window) {
                out.stabilized_at = e - agree;
                break;
            }
        }
        // J + I is always inside every level, so reaching it is exact:
        // the intersection cannot shrink further
        if (ideal_contains(ctx, JI, acc)) {
            out.stabilized_at = e;
            break;
        }
    }
    // canonical generators: reduced GB, certify the ones outside J + I
    acc = Ideal{groebner(ctx, acc)};
    bool all_certified = true;
    for (const auto& g : acc.gens) {
        if (ideal_membership(ctx, g, JI)) continue;
        ClosureCertificate cert = integral_membership(A, g, J);
        if (!(cert.verdict == Verdict::In && cert.certified)) all_certified = false;
        out.generator_certificates.push_back({g, cert});
    }
    out.certified = all_certified;
    out.ideal = acc;
    return out;
}

struct ParameterTestIdealResult {
    Ideal ideal; // lifted to R, contains I
    bool certified = false;
    bool stabilized = false;
    unsigned probed_t = 0;
};

/// Stable value over t of (J_t + I : J_t^*), J_t the t-th powers of the
/// parameter system. Cohen-Macaulayness is required for the colimit
/// identification with the annihilator of 0^* in top local cohomology.
inline ParameterTestIdealResult parameter_test_ideal(const QuotientRing& A,
                                                     const ParameterSystem& base,
                                                     const TestElement& c,
                                                     const ClosureCaps& caps = {}) {
    const RingContext& ctx = A.ctx;
    if (cohen_macaulay_status(ctx, A.I) != std::optional<bool>(true))
        throw std::invalid_argument(
            "parameter_test_ideal requires Cohen-Macaulay input (colimit identification)");
    ParameterTestIdealResult out;
    Ideal acc;
    bool first = true;
    unsigned agree = 0;
    unsigned window = std::max(1u, caps.window);
    for (unsigned t = 1; t <= caps.t_max; ++t) {
        ParameterSystem ps{base.elements, t};
        TightClosureResult tc = tight_closure_ideal(A, ps, c, caps);
        out.certified = (t == 1) ? tc.certified : (out.certified && tc.certified);
        Ideal Jt = ideal_sum(ctx, parameter_ideal(ctx, ps), A.I);
        Ideal tau_t = colon(ctx, Ideal{groebner(ctx, Jt)}, tc.ideal);
        out.probed_t = t;
        if (first) {
            acc = tau_t;
            first = false;
        } else {
            Ideal next = intersect(ctx, acc, tau_t);
            if (ideal_equal(ctx, next, acc)) {
                ++agree;
            } else {
                agree = 0;
            }
            acc = next;
            if (agree >= window) {
                out.stabilized = true;
                break;
            }
        }
    }
    out.ideal = Ideal{groebner(ctx, acc)};
    return out;
}

// ---- F-rationality ----

enum class FRationalVerdict { Yes, No, Inconclusive };

struct FRationalResult {
    FRationalVerdict verdict = FRationalVerdict::Inconclusive;
    bool certified = false;
    std::optional<Poly> witness_z;
    std::optional<Ideal> witness_J;
    std::optional<ClosureCertificate> witness_certificate;
    unsigned probed_t = 0;
};

/// F-rationality probe: No with certificate when a parameter ideal has a
/// certified element in its tight closure outside the ideal; Yes when every
/// probe finds the parameter ideal tightly closed.
inline FRationalResult is_f_rational(const QuotientRing& A, const ParameterSystem& base,
                                     const TestElement& c, const ClosureCaps& caps = {}) {
    const RingContext& ctx = A.ctx;
    if (!A.asserted_domain)
        throw std::invalid_argument("is_f_rational requires the domain assertion");
    FRationalResult out;
    bool all_closed = true;
    bool any_uncertified_excess = false;
    for (unsigned t = 1; t <= caps.t_max; ++t) {
        ParameterSystem ps{base.elements, t};
        out.probed_t = t;
        TightClosureResult tc = tight_closure_ideal(A, ps, c, caps);
        Ideal Jt = ideal_sum(ctx, parameter_ideal(ctx, ps), A.I);
        groebner(ctx, Jt);
        if (ideal_equal(ctx, tc.ideal, Jt) || ideal_contains(ctx, Jt, tc.ideal)) continue;
        all_closed = false;
        for (const auto& [z, cert] : tc.generator_certificates) {
            if (cert.verdict == Verdict::In && cert.certified) {
                out.verdict = FRationalVerdict::No;
                out.certified = true;
                out.witness_z = z;
                out.witness_J = parameter_ideal(ctx, ps);
                out.witness_certificate = cert;
                return out;
            }
            any_uncertified_excess = true;
        }
    }
    if (all_closed) {
        out.verdict = FRationalVerdict::Yes;
        out.certified = is_zero_ideal(ctx, A.I); // regular ring: flatness of Frobenius
        return out;
    }
    (void)any_uncertified_excess;
    out.verdict = FRationalVerdict::Inconclusive;
    return out;
}

} // namespace fsing

#endif
