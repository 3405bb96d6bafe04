#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include <fsing/report.hpp>

using namespace fsing;

namespace {

Poly P(const RingContext& ctx, const std::string& s) { return parse_poly(ctx, s); }

std::filesystem::path fresh_dir(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("fsing-test-" + tag);
    std::filesystem::remove_all(p);
    return p;
}

} // namespace

TEST_CASE("polynomial parser") {
    RingContext ctx(5, {"x", "y"});
    REQUIRE(parse_poly(ctx, "x^2 + 3*y") == poly_add(ctx, poly_pow(ctx, poly_var(ctx, 0), 2),
                                                     poly_scale(ctx, poly_var(ctx, 1), 3)));
    REQUIRE(parse_poly(ctx, "-x + x") == poly_zero());
    REQUIRE(parse_poly(ctx, "(x + y)^2") == parse_poly(ctx, "x^2 + 2*x*y + y^2"));
    REQUIRE(parse_poly(ctx, "7") == poly_const(ctx, 2));
    SECTION("unknown variable reports its column") {
        try {
            parse_poly(ctx, "x + zz");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            REQUIRE(e.column == 5);
        }
    }
    SECTION("trailing operator is an error") {
        REQUIRE_THROWS_AS(parse_poly(ctx, "x + "), ParseError);
        REQUIRE_THROWS_AS(parse_poly(ctx, "x ^ y"), ParseError);
        REQUIRE_THROWS_AS(parse_poly(ctx, "x ("), ParseError);
    }
}

TEST_CASE("script parsing") {
    SECTION("one ring, one ideal") {
        SessionScript sc = parse_script("ring 5 x y\nideal cusp = y^2 - x^3\n");
        REQUIRE(sc.ctx().p() == 5);
        REQUIRE(sc.ctx().nvars() == 2);
        REQUIRE(sc.ideals.count("cusp") == 1);
        REQUIRE(sc.ideal_order == std::vector<std::string>{"cusp"});
        REQUIRE(sc.ideals.at("cusp").gens.size() == 1);
    }
    SECTION("composite characteristic is rejected") {
        REQUIRE_THROWS_AS(parse_script("ring 4 x\n"), ParseError);
    }
    SECTION("trailing operator reports line and column") {
        try {
            parse_script("ring 5 x y\nideal I = x + \n");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            REQUIRE(e.line == 2);
            REQUIRE(e.column > 10); // inside the right-hand side
        }
    }
    SECTION("directives, comments, assertions") {
        SessionScript sc = parse_script(
            "# header comment\n"
            "ring 5 x y order=lex\n"
            "ideal I = x^2, y  # inline comment\n"
            "params pp = x + y\n"
            "assert domain I\n");
        REQUIRE(sc.ctx().order.kind == OrderKind::Lex);
        REQUIRE(sc.ideals.at("I").gens.size() == 2);
        REQUIRE(sc.params.at("pp").size() == 1);
        REQUIRE(sc.domain_asserted.count("I") == 1);
    }
    SECTION("errors: duplicate names, missing ring, unknown directive") {
        REQUIRE_THROWS_AS(parse_script("ring 5 x\nideal a = x\nideal a = x^2\n"), ParseError);
        REQUIRE_THROWS_AS(parse_script("ideal a = x\n"), ParseError);
        REQUIRE_THROWS_AS(parse_script("ring 5 x\nring 7 y\n"), ParseError);
        REQUIRE_THROWS_AS(parse_script("ring 5 x\nfoo bar\n"), ParseError);
        REQUIRE_THROWS_AS(parse_script("ring 5 x\nassert domain missing\n"), ParseError);
        REQUIRE_THROWS_AS(parse_script(""), ParseError);
    }
}

TEST_CASE("content hashing") {
    REQUIRE(fnv64_hex("abc") == fnv64_hex("abc"));
    REQUIRE(fnv64_hex("abc") != fnv64_hex("abd"));
    RingContext a(5, {"x", "y"});
    RingContext b(7, {"x", "y"});
    Ideal I{{P(a, "x^2 - y")}};
    // key changes with characteristic, operation, and generators
    REQUIRE(cache_key(a, I.gens, "gb") != cache_key(b, I.gens, "gb"));
    REQUIRE(cache_key(a, I.gens, "gb") != cache_key(a, I.gens, "dim"));
    REQUIRE(cache_key(a, I.gens, "gb") == cache_key(a, I.gens, "gb"));
}

TEST_CASE("cache round trip") {
    auto dir = fresh_dir("cache");
    Cache cache(dir.string(), true);
    SECTION("store then lookup") {
        cache.store("k1", "payload line\n");
        auto hit = cache.lookup("k1");
        REQUIRE(hit.has_value());
        REQUIRE(*hit == "payload line\n");
    }
    SECTION("corrupt entries are skipped") {
        cache.store("k2", "data\n");
        {
            std::ofstream out(dir / "k2.entry", std::ios::trunc);
            out << "garbage";
        }
        REQUIRE_FALSE(cache.lookup("k2").has_value());
    }
    SECTION("disabled cache never reads or writes") {
        Cache off(dir.string(), false);
        off.store("k3", "data");
        REQUIRE_FALSE(std::filesystem::exists(dir / "k3.entry"));
        REQUIRE_FALSE(off.lookup("k3").has_value());
    }
    SECTION("groebner results survive the cache") {
        RingContext ctx(5, {"x", "y"});
        Ideal I{{P(ctx, "x^2 - y"), P(ctx, "x*y - 1")}};
        auto direct = groebner_basis(ctx, I.gens);
        auto parse = [](const RingContext& c, const std::string& s) { return parse_poly(c, s); };
        auto first = cached_groebner(ctx, I, cache, parse);
        Ideal I2{{P(ctx, "x^2 - y"), P(ctx, "x*y - 1")}};
        auto second = cached_groebner(ctx, I2, cache, parse);
        REQUIRE(first == direct);
        REQUIRE(second == direct);
    }
    std::filesystem::remove_all(dir);
}

TEST_CASE("report skeleton and field order") {
    ClosureCaps caps;
    json r = report_skeleton("dsimple", "ring 5 x y\n", caps);
    std::vector<std::string> keys;
    for (auto it = r.begin(); it != r.end(); ++it) keys.push_back(it.key());
    REQUIRE(keys == std::vector<std::string>{"version", "input_hash", "command", "verdict",
                                             "route", "witnesses", "transcript", "caps",
                                             "timings"});
    REQUIRE(r["caps"]["e_max"] == 6);
    // hash depends on both script and command
    json r2 = report_skeleton("gb", "ring 5 x y\n", caps);
    REQUIRE(r["input_hash"] != r2["input_hash"]);
}

TEST_CASE("witness replay") {
    RingContext ctx(5, {"x", "y"});
    Ideal Icusp{{P(ctx, "y^2 - x^3")}};
    Ideal Inode{{P(ctx, "y^2 - x^3 - x^2")}};
    Ideal J{{P(ctx, "x")}};
    SECTION("frobenius membership witness") {
        json w = witness_frobenius_in(ctx, P(ctx, "y"), J, Icusp, 1);
        REQUIRE_NOTHROW(replay_witness(ctx, w));
        // tampering with the level breaks it
        w["e"] = 0;
        REQUIRE_THROWS(replay_witness(ctx, w));
    }
    SECTION("frobenius refutation witness") {
        FrobeniusMembership fm = frobenius_membership(ctx, P(ctx, "y"), J, Inode, 3);
        json w = witness_frobenius_refutation(ctx, P(ctx, "y"), J, Inode, fm);
        REQUIRE_NOTHROW(replay_witness(ctx, w));
        w["I"] = json::array({"y^2 - x^3"}); // cusp absorbs at e = 1
        REQUIRE_THROWS(replay_witness(ctx, w));
    }
    SECTION("integral dependence witness") {
        QuotientRing A = quotient_ring(ctx, Inode, true);
        auto cert = integral_membership(A, P(ctx, "y"), J);
        REQUIRE(cert.dependence.has_value());
        json w = witness_integral_dependence(ctx, *cert.dependence, J, Inode);
        REQUIRE_NOTHROW(replay_witness(ctx, w));
        w["coeffs"][1] = "x^3"; // wrong coefficient
        REQUIRE_THROWS(replay_witness(ctx, w));
    }
    SECTION("plain membership witness") {
        json w = witness_membership(ctx, P(ctx, "x^2"), J, "containment");
        REQUIRE_NOTHROW(replay_witness(ctx, w));
        json bad = witness_membership(ctx, P(ctx, "y"), J, "containment");
        REQUIRE_THROWS(replay_witness(ctx, bad));
    }
    SECTION("uncertified witnesses are skipped") {
        json w = witness_membership(ctx, P(ctx, "y"), J, "containment");
        w["certified"] = false;
        REQUIRE_NOTHROW(replay_witness(ctx, w));
    }
}
