#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <fsing/ideal.hpp>
#include <fsing/script.hpp>

using namespace fsing;

namespace {

Poly P(const RingContext& ctx, const std::string& s) { return parse_poly(ctx, s); }

Ideal I(const RingContext& ctx, std::initializer_list<const char*> gens) {
    std::vector<Poly> g;
    for (const char* s : gens) g.push_back(parse_poly(ctx, s));
    return Ideal{std::move(g)};
}

Poly random_poly(const RingContext& ctx, std::mt19937& rng, unsigned max_deg,
                 unsigned max_terms) {
    std::uniform_int_distribution<unsigned> nterms(1, max_terms);
    std::uniform_int_distribution<Exponent> expo(0, max_deg);
    std::uniform_int_distribution<std::int64_t> coeff(1, ctx.p() - 1);
    std::map<Monomial, std::int64_t> pile;
    unsigned n = nterms(rng);
    for (unsigned t = 0; t < n; ++t) {
        Monomial m(ctx.nvars(), 0);
        Exponent budget = expo(rng);
        for (std::size_t i = 0; i < ctx.nvars() && budget > 0; ++i) {
            std::uniform_int_distribution<Exponent> part(0, budget);
            m[i] = part(rng);
            budget -= m[i];
        }
        pile[m] = coeff(rng);
    }
    return poly_collect(ctx, pile);
}

} // namespace

TEST_CASE("reduced Groebner bases of simple ideals") {
    RingContext ctx(5, {"x", "y", "z", "w"});
    SECTION("principal monomial") {
        auto G = groebner(ctx, I(ctx, {"x"}));
        REQUIRE(G == std::vector<Poly>{P(ctx, "x")});
    }
    SECTION("principal ideal is its own reduced basis") {
        auto G = groebner(ctx, I(ctx, {"x*y - z*w"}));
        REQUIRE(G == std::vector<Poly>{P(ctx, "x*y - z*w")});
    }
    SECTION("zero and unit ideals") {
        REQUIRE(is_zero_ideal(ctx, Ideal{}));
        REQUIRE(is_unit_ideal(ctx, I(ctx, {"3"})));
        REQUIRE_FALSE(is_unit_ideal(ctx, I(ctx, {"x"})));
    }
}

TEST_CASE("lex basis of the twisted cubic relations") {
    RingContext ctx(5, {"x", "y", "z"}, OrderSpec{OrderKind::Lex, 0});
    Ideal J = I(ctx, {"x^2 - y", "x^3 - z"});
    auto G = groebner(ctx, J);
    // S-pair completion must discover the x-free relation
    REQUIRE(ideal_membership(ctx, P(ctx, "y^3 - z^2"), J));
    bool found = false;
    for (const auto& g : G) {
        bool xfree = true;
        for (const auto& t : g.terms)
            if (t.mono[0] > 0) xfree = false;
        if (xfree && !g.is_zero()) found = true;
    }
    REQUIRE(found);
}

TEST_CASE("reduced basis is unique for the ideal") {
    RingContext ctx(5, {"x", "y", "z"});
    // generator order and redundant generators do not change the output
    Ideal a = I(ctx, {"x^2 - y", "x*y - z"});
    Ideal b = I(ctx, {"x*y - z", "x^2 - y", "x^3 - x*y"});
    REQUIRE(groebner(ctx, a) == groebner(ctx, b));
    REQUIRE(ideal_equal(ctx, a, b));
    // and heads/tails of the reduced basis are fully reduced
    auto G = groebner(ctx, a);
    for (std::size_t i = 0; i < G.size(); ++i) {
        REQUIRE(G[i].leading().coeff == 1);
        for (std::size_t j = 0; j < G.size(); ++j) {
            if (i == j) continue;
            for (const auto& t : G[i].terms)
                REQUIRE_FALSE(divides(G[j].leading().mono, t.mono));
        }
    }
}

TEST_CASE("ideal membership") {
    RingContext ctx(5, {"x", "y", "z", "w"});
    REQUIRE(ideal_membership(ctx, P(ctx, "x*y - z*w"), I(ctx, {"x*y - z*w"})));
    REQUIRE(ideal_membership(ctx, poly_zero(), I(ctx, {"x", "y^2"})));
    REQUIRE(ideal_membership(ctx, poly_zero(), Ideal{}));
    REQUIRE_FALSE(ideal_membership(ctx, P(ctx, "y"), I(ctx, {"x", "y^2"})));
    // membership is closed under the ideal operations
    Ideal J = I(ctx, {"x^2 - y*z", "x*w"});
    Poly comb = poly_add(ctx, poly_mul(ctx, P(ctx, "z + 1"), J.gens[0]),
                         poly_mul(ctx, P(ctx, "w^2"), J.gens[1]));
    REQUIRE(ideal_membership(ctx, comb, J));
}

TEST_CASE("colon ideals") {
    RingContext ctx(5, {"x", "y"});
    REQUIRE(ideal_equal(ctx, colon(ctx, I(ctx, {"x^2"}), P(ctx, "x")), I(ctx, {"x"})));
    REQUIRE(ideal_equal(ctx, colon(ctx, I(ctx, {"x*y"}), I(ctx, {"x"})), I(ctx, {"y"})));
    Ideal q = colon(ctx, I(ctx, {"x^2*y", "y^2"}), P(ctx, "y"));
    REQUIRE(ideal_equal(ctx, q, I(ctx, {"x^2", "y"})));
    REQUIRE_THROWS_AS(colon(ctx, I(ctx, {"x"}), poly_zero()), std::invalid_argument);
}

TEST_CASE("intersections") {
    RingContext ctx(5, {"x", "y", "z"});
    REQUIRE(ideal_equal(ctx, intersect(ctx, I(ctx, {"x"}), I(ctx, {"y"})), I(ctx, {"x*y"})));
    Ideal J = I(ctx, {"x^2 - y", "z"});
    REQUIRE(ideal_equal(ctx, intersect(ctx, J, J), J));
    REQUIRE(ideal_equal(ctx, intersect(ctx, I(ctx, {"x", "y"}), I(ctx, {"x", "z"})),
                        I(ctx, {"x", "y*z"})));
}

TEST_CASE("elimination") {
    SECTION("inverse has no polynomial expression") {
        RingContext ctx(5, {"t", "x"});
        Ideal J = I(ctx, {"t*x - 1"});
        Ideal E = eliminate(ctx, J, {0});
        REQUIRE(is_zero_ideal(ctx, E));
    }
    SECTION("twisted cubic") {
        RingContext ctx(5, {"x", "y", "z"});
        Ideal J = I(ctx, {"y - x^2", "z - x^3"});
        Ideal E = eliminate(ctx, J, {0});
        REQUIRE(ideal_membership(ctx, P(ctx, "y^3 - z^2"), E));
        // everything found is really x-free and inside J
        for (const auto& g : E.gens) {
            for (const auto& t : g.terms) REQUIRE(t.mono[0] == 0);
            REQUIRE(ideal_membership(ctx, g, J));
        }
    }
    SECTION("empty drop set is the identity") {
        RingContext ctx(5, {"x", "y"});
        Ideal J = I(ctx, {"x^2 + y"});
        REQUIRE(ideal_equal(ctx, eliminate(ctx, J, {}), J));
    }
}

TEST_CASE("dimension and codimension") {
    SECTION("quadric cone") {
        RingContext ctx(5, {"x", "y", "z", "w"});
        Ideal J = I(ctx, {"x*y - z*w"});
        REQUIRE(krull_dimension(ctx, J) == 3);
        REQUIRE(codim(ctx, J) == 1);
    }
    SECTION("zero ideal has full dimension") {
        RingContext ctx(5, {"x", "y", "z"});
        REQUIRE(krull_dimension(ctx, Ideal{}) == 3);
    }
    SECTION("maximal ideal has dimension zero") {
        RingContext ctx(5, {"x", "y"});
        REQUIRE(krull_dimension(ctx, I(ctx, {"x", "y"})) == 0);
    }
    SECTION("unit ideal is rejected") {
        RingContext ctx(5, {"x"});
        REQUIRE_THROWS_AS(krull_dimension(ctx, I(ctx, {"1"})), std::invalid_argument);
    }
}

TEST_CASE("radical membership") {
    RingContext ctx(5, {"x", "y"});
    Ideal J = I(ctx, {"x^2"});
    REQUIRE(radical_membership(ctx, P(ctx, "x"), J));
    REQUIRE(radical_membership(ctx, P(ctx, "x*y"), J));
    REQUIRE_FALSE(radical_membership(ctx, P(ctx, "y"), J));
    REQUIRE_FALSE(radical_membership(ctx, P(ctx, "x + y"), J));
}

TEST_CASE("random ideal invariants") {
    std::mt19937 rng(20240817);
    for (int trial = 0; trial < 15; ++trial) {
        std::int64_t p = (trial % 2 == 0) ? 3 : 5;
        RingContext ctx(p, {"x", "y"});
        std::vector<Poly> gens;
        for (int k = 0; k < 2; ++k) {
            Poly f = random_poly(ctx, rng, 3, 3);
            if (!f.is_zero()) gens.push_back(f);
        }
        Ideal J{gens};
        const auto& G = groebner(ctx, J);
        // every basis element is in the ideal generated by the input, and
        // every input reduces to zero against the basis
        for (const auto& g : gens) REQUIRE(reduce(ctx, g, G).is_zero());
        // colon and intersection are consistent: (J : f) * f lies in J
        Poly f = random_poly(ctx, rng, 2, 2);
        if (!f.is_zero() && !is_zero_ideal(ctx, J)) {
            Ideal q = colon(ctx, J, f);
            for (const auto& h : q.gens)
                REQUIRE(ideal_membership(ctx, poly_mul(ctx, h, f), J));
        }
    }
}
