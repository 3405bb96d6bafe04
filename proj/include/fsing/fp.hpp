#ifndef FSING_FP_HPP
#define FSING_FP_HPP

#include <cstdint>
#include <stdexcept>

namespace fsing {

/// Arithmetic in the prime field F_p, p < 2^31. Values are stored reduced
/// into [0, p).
struct Fp {
    std::int64_t p;

    explicit Fp(std::int64_t prime) : p(prime) {
        if (!is_prime(prime))
            throw std::invalid_argument("characteristic must be a prime in [2, 2^31)");
    }

    static bool is_prime(std::int64_t n) {
        if (n < 2 || n >= (std::int64_t(1) << 31)) return false;
        if (n % 2 == 0) return n == 2;
        for (std::int64_t d = 3; d * d <= n; d += 2)
            if (n % d == 0) return false;
        return true;
    }

    std::int64_t reduce(std::int64_t a) const {
        std::int64_t r = a % p;
        return r < 0 ? r + p : r;
    }

    std::int64_t add(std::int64_t a, std::int64_t b) const { return (a + b) % p; }
    std::int64_t sub(std::int64_t a, std::int64_t b) const { return reduce(a - b); }
    std::int64_t mul(std::int64_t a, std::int64_t b) const { return (a * b) % p; }
    std::int64_t neg(std::int64_t a) const { return a == 0 ? 0 : p - a; }

    std::int64_t pow(std::int64_t a, std::int64_t n) const {
        std::int64_t r = 1 % p, b = reduce(a);
        while (n > 0) {
            if (n & 1) r = mul(r, b);
            b = mul(b, b);
            n >>= 1;
        }
        return r;
    }

    std::int64_t inv(std::int64_t a) const {
        a = reduce(a);
        if (a == 0) throw std::domain_error("inverse of zero in F_p");
        return pow(a, p - 2);
    }

    std::int64_t div(std::int64_t a, std::int64_t b) const { return mul(a, inv(b)); }
};

} // namespace fsing

#endif
