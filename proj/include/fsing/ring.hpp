#ifndef FSING_RING_HPP
#define FSING_RING_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "fp.hpp"

namespace fsing {

using Exponent = std::uint32_t;

/// An exponent vector, one entry per ring variable.
using Monomial = std::vector<Exponent>;

inline Exponent total_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), Exponent(0));
}

inline bool divides(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

inline Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

/// Quotient a/b assuming b | a.
inline Monomial mono_div(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

inline bool mono_coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > 0 && b[i] > 0) return false;
    return true;
}

enum class OrderKind { Grevlex, Lex };

/// A monomial order, optionally with a leading elimination block: the first
/// `elim_block` variables are compared first (by their grevlex restriction),
/// which makes the order an elimination order for those variables.
struct OrderSpec {
    OrderKind kind = OrderKind::Grevlex;
    std::size_t elim_block = 0;

    bool operator==(const OrderSpec&) const = default;
};

namespace detail {

// grevlex on the slice [lo, hi): larger total degree wins, ties broken by
// the last differing exponent being smaller.
inline int cmp_grevlex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    long da = 0, db = 0;
    for (std::size_t i = lo; i < hi; ++i) { da += a[i]; db += b[i]; }
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t i = hi; i-- > lo;) {
        if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    }
    return 0;
}

inline int cmp_lex(const Monomial& a, const Monomial& b, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

} // namespace detail

/// Three-way comparison; returns <0, 0, >0 for a < b, a == b, a > b.
inline int mono_cmp(const Monomial& a, const Monomial& b, const OrderSpec& ord) {
    std::size_t n = a.size();
    std::size_t blk = std::min(ord.elim_block, n);
    if (blk > 0) {
        int c = detail::cmp_grevlex(a, b, 0, blk);
        if (c != 0) return c;
    }
    if (ord.kind == OrderKind::Lex) return detail::cmp_lex(a, b, blk, n);
    return detail::cmp_grevlex(a, b, blk, n);
}

/// The ambient polynomial ring F_p[vars] with a fixed monomial order. All
/// computations happen relative to one context; contexts are value types.
struct RingContext {
    Fp field;
    std::vector<std::string> vars;
    OrderSpec order;

    RingContext(std::int64_t p, std::vector<std::string> names, OrderSpec ord = {})
        : field(p), vars(std::move(names)), order(ord) {
        if (vars.empty()) throw std::invalid_argument("ring needs at least one variable");
        std::set<std::string> seen(vars.begin(), vars.end());
        if (seen.size() != vars.size())
            throw std::invalid_argument("duplicate variable names");
    }

    std::int64_t p() const { return field.p; }
    std::size_t nvars() const { return vars.size(); }

    int var_index(const std::string& name) const {
        auto it = std::find(vars.begin(), vars.end(), name);
        return it == vars.end() ? -1 : int(it - vars.begin());
    }

    bool operator==(const RingContext& o) const {
        return field.p == o.field.p && vars == o.vars && order == o.order;
    }
};

} // namespace fsing

#endif
