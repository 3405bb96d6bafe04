// Acceptance gate: one line per criterion, PASS or FAIL, exact symbolic
// checks throughout. The CLI binary under test is argv[1].

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <fsing/fmodule.hpp>
#include <fsing/script.hpp>

using namespace fsing;
using ojson = nlohmann::ordered_json;

namespace {

std::string g_cli;
std::filesystem::path g_dir;
int g_failures = 0;

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = g_cli + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {127, "popen failed"};
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : 127;
    return {code, out};
}

std::string write_script(const std::string& name, const std::string& body) {
    auto p = g_dir / name;
    std::ofstream(p) << body;
    return p.string();
}

void report(int n, bool ok, const std::string& what) {
    std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << " - " << what
              << std::endl;
    if (!ok) ++g_failures;
}

Poly P(const RingContext& ctx, const std::string& s) { return parse_poly(ctx, s); }

Ideal I(const RingContext& ctx, std::initializer_list<const char*> gens) {
    std::vector<Poly> g;
    for (const char* s : gens) g.push_back(parse_poly(ctx, s));
    return Ideal{std::move(g)};
}

std::string quadric_script(int p) {
    return "ring " + std::to_string(p) + " x y z w\nideal q = x*y - z*w\nassert domain q\n";
}

const char* kCusp = "ring 5 x y\nideal c = y^2 - x^3\nassert domain c\n";
const char* kNode = "ring 5 x y\nideal n = y^2 - x^3 - x^2\nassert domain n\n";

// 1. quadric cone simple over F_2, F_3, F_5 through the CLI
void criterion1() {
    bool ok = true;
    std::string detail = "quadric cone simple over F_2, F_3, F_5";
    for (int p : {2, 3, 5}) {
        std::string path = write_script("quadric" + std::to_string(p) + ".fs",
                                        quadric_script(p));
        RunResult r = run("dsimple " + path + " --json");
        if (r.exit_code != 0) { ok = false; detail += " [p=" + std::to_string(p) + ": exit " + std::to_string(r.exit_code) + "]"; continue; }
        ojson j = ojson::parse(r.output, nullptr, false);
        if (j.is_discarded() || j["verdict"] != "Simple" ||
            (j["route"] != "FRational" && j["route"] != "JStarEqualsJF")) {
            ok = false;
            detail += " [p=" + std::to_string(p) + ": unexpected verdict]";
        }
    }
    report(1, ok, detail);
}

// 2. cusp/node dichotomy with exact witnesses
void criterion2() {
    bool ok = true;
    std::string detail = "cusp simple with e=1 witness; node certified not simple";

    std::string cusp = write_script("cusp.fs", kCusp);
    RunResult rc = run("dsimple " + cusp + " --json");
    ojson jc = ojson::parse(rc.output, nullptr, false);
    bool cusp_ok = rc.exit_code == 0 && !jc.is_discarded() && jc["verdict"] == "Simple";
    bool saw_e1 = false;
    if (cusp_ok)
        for (const auto& w : jc["witnesses"])
            if (w["type"] == "frobenius_membership" && w["z"] == "y" && w["e"] == 1)
                saw_e1 = true;
    if (!cusp_ok || !saw_e1) { ok = false; detail += " [cusp failed]"; }

    std::string node = write_script("node.fs", kNode);
    RunResult rn = run("dsimple " + node + " --json");
    ojson jn = ojson::parse(rn.output, nullptr, false);
    bool node_ok = rn.exit_code == 0 && !jn.is_discarded() && jn["verdict"] == "NotSimple";
    bool saw_dep = false, saw_ref = false;
    if (node_ok)
        for (const auto& w : jn["witnesses"]) {
            if (w["type"] == "integral_dependence" && w["z"] == "y" && w["k"] == 2 &&
                w["certified"] == true)
                saw_dep = true;
            if (w["type"] == "frobenius_refutation" && w["z"] == "y" &&
                w["certified"] == true) {
                std::vector<unsigned> lv = w["refuted_levels"].get<std::vector<unsigned>>();
                bool covers = true;
                for (unsigned e = 1; e <= 6; ++e)
                    if (std::find(lv.begin(), lv.end(), e) == lv.end()) covers = false;
                if (covers) saw_ref = true;
            }
        }
    if (!node_ok || !saw_dep || !saw_ref) { ok = false; detail += " [node failed]"; }
    report(2, ok, detail);
}

// 3. root-map law beta = f^(q-1) for random hypersurfaces
void criterion3() {
    bool ok = true;
    std::mt19937 rng(424242);
    int done = 0;
    std::vector<std::vector<std::string>> var_sets{{"x"}, {"x", "y"}, {"x", "y", "z"}};
    while (done < 20) {
        std::int64_t p = (done % 2 == 0) ? 2 : 3;
        const auto& vars = var_sets[std::size_t(done) % 3];
        RingContext ctx(p, vars);
        // random polynomial of degree <= 3
        auto monos = detail::monomials_up_to(ctx.nvars(), 3);
        std::map<Monomial, std::int64_t> pile;
        std::uniform_int_distribution<std::size_t> pick(0, monos.size() - 1);
        std::uniform_int_distribution<std::int64_t> coeff(1, p - 1);
        std::uniform_int_distribution<int> nterms(1, 3);
        int k = nterms(rng);
        for (int t = 0; t < k; ++t) pile[monos[pick(rng)]] = coeff(rng);
        Poly f = poly_collect(ctx, pile);
        if (f.is_zero() || f.is_constant()) continue;
        ++done;
        FrobeniusExponent fe(ctx, 1);
        try {
            RootLadder L = root_map(ctx, Ideal{{f}}, fe);
            if (L.base.rank != 1) { ok = false; continue; }
            Poly law = poly_pow(ctx, f, std::uint64_t(fe.q - 1));
            Poly diff = poly_sub(ctx, L.beta.a[0][0], law);
            bool match = false;
            // up to presentation isomorphism: a unit scalar twist of the
            // generator is allowed
            for (std::int64_t u = 1; u < p && !match; ++u) {
                Poly d = poly_sub(ctx, L.beta.a[0][0], poly_scale(ctx, law, u));
                if (ideal_membership(ctx, d, Ideal{{poly_frobenius(ctx, f, fe.q)}}))
                    match = true;
            }
            (void)diff;
            if (!match) ok = false;
        } catch (const std::exception&) {
            ok = false;
        }
    }
    report(3, ok, "root map is multiplication by f^(q-1) on 20 random hypersurfaces");
}

// 4. Frobenius root of the bracket power is the identity
void criterion4() {
    bool ok = true;
    std::mt19937 rng(99);
    const char* cand[] = {"x", "y", "x + y", "x^2", "x*y", "x^2 + y", "y^3 + x", "x*y + 1"};
    std::uniform_int_distribution<int> pick(0, 7);
    for (int trial = 0; trial < 50; ++trial) {
        std::int64_t p = (trial % 2 == 0) ? 2 : 3;
        RingContext ctx(p, {"x", "y"});
        Ideal J = I(ctx, {cand[pick(rng)], cand[pick(rng)]});
        unsigned e = (trial % 3 == 0) ? 2 : 1;
        FrobeniusExponent fe(ctx, e);
        Ideal back = frobenius_root(ctx, frobenius_power(ctx, J, fe), fe);
        if (!ideal_equal(ctx, back, J)) ok = false;
    }
    report(4, ok, "frobenius_root(frobenius_power(I, e), e) = I on 50 random ideals");
}

// 5. closure tower J <= J^F <= J^* <= Jbar on the criterion 1-2 settings
void criterion5() {
    bool ok = true;
    std::string detail = "closure tower holds on all certificate settings";
    struct Setting {
        const char* name;
        QuotientRing A;
        Ideal J;
    };
    RingContext c2(5, {"x", "y"});
    RingContext c4(5, {"x", "y", "z", "w"});
    std::vector<Setting> settings;
    settings.push_back({"cusp", quotient_ring(c2, I(c2, {"y^2 - x^3"}), true), I(c2, {"x"})});
    settings.push_back(
        {"node", quotient_ring(c2, I(c2, {"y^2 - x^3 - x^2"}), true), I(c2, {"x"})});
    {
        QuotientRing A = quotient_ring(c4, I(c4, {"x*y - z*w"}), true);
        ParameterSystem ps = find_parameters(A);
        settings.push_back({"quadric", A, parameter_ideal(c4, ps)});
    }
    for (auto& s : settings) {
        try {
            const RingContext& ctx = s.A.ctx;
            Ideal JI = ideal_sum(ctx, s.J, s.A.I);
            ClosureChain ch = frobenius_closure(ctx, s.J, s.A.I);
            const Ideal& JF = ch.levels.back().second;
            if (!ideal_contains(ctx, JF, JI)) { ok = false; detail += std::string(" [") + s.name + ": J not in J^F]"; }
            TestElement c = find_test_element(s.A);
            ParameterSystem ps{s.J.gens, 1};
            TightClosureResult tc = tight_closure_ideal(s.A, ps, c);
            if (!ideal_contains(ctx, tc.ideal, JF)) { ok = false; detail += std::string(" [") + s.name + ": J^F not in J^*]"; }
            // every tight-closure generator is integral over J (no certified
            // refutation may contradict a certified membership)
            for (const auto& g : tc.ideal.gens) {
                if (ideal_membership(ctx, g, JI)) continue;
                auto cert = integral_membership(s.A, g, s.J);
                if (cert.verdict == Verdict::NotIn && cert.certified) {
                    ok = false;
                    detail += std::string(" [") + s.name + ": J^* escapes Jbar]";
                }
            }
        } catch (const std::exception& e) {
            ok = false;
            detail += std::string(" [") + s.name + ": " + e.what() + "]";
        }
    }
    report(5, ok, detail);
}

// 6. regular-ring degeneration: I = (0) closes nothing, never NotSimple
void criterion6() {
    bool ok = true;
    std::string detail = "I = (0): J = J^F = J^* for all probes, verdict never NotSimple";
    try {
        RingContext ctx(5, {"x", "y"});
        QuotientRing A = quotient_ring(ctx, Ideal{}, true);
        TestElement c = find_test_element(A);
        std::vector<Ideal> probes{I(ctx, {"x"}), I(ctx, {"x", "y"}), I(ctx, {"x^2", "y^3"}),
                                  I(ctx, {"x + y", "x*y"})};
        for (const auto& J : probes) {
            ClosureChain ch = frobenius_closure(ctx, J, Ideal{});
            for (const auto& [e, level] : ch.levels)
                if (!ideal_equal(ctx, level, J)) ok = false;
            ParameterSystem ps{J.gens, 1};
            TightClosureResult tc = tight_closure_ideal(A, ps, c);
            if (!ideal_equal(ctx, tc.ideal, J)) ok = false;
        }
        SimplicityVerdict v = dsimplicity(A);
        if (v.verdict == Simplicity::NotSimple || v.witness.has_value()) ok = false;
    } catch (const std::exception& e) {
        ok = false;
        detail += std::string(" [") + e.what() + "]";
    }
    report(6, ok, detail);
}

// 7. minimal-root cross-check against the parameter test ideal
void criterion7() {
    bool ok = true;
    std::string detail = "descent full on the quadric; cusp descent matches the test ideal";
    try {
        RingContext c4(5, {"x", "y", "z", "w"});
        FrobeniusExponent fe4(c4, 1);
        RootLadder Lq = root_map(c4, I(c4, {"x*y - z*w"}), fe4);
        DescentResult Dq = root_descent(c4, Lq);
        if (!descent_is_full(c4, Lq, Dq)) { ok = false; detail += " [quadric not full]"; }

        RingContext c2(5, {"x", "y"});
        Ideal cusp = I(c2, {"y^2 - x^3"});
        FrobeniusExponent fe2(c2, 1);
        RootLadder Lc = root_map(c2, cusp, fe2);
        DescentResult Dc = root_descent(c2, Lc);
        if (descent_is_full(c2, Lc, Dc)) { ok = false; detail += " [cusp descent not proper]"; }
        // coefficient ideal of the fixed point vs the stable test ideal
        std::vector<Poly> coeffs;
        for (const auto& row : Dc.generators.a)
            for (const auto& e : row)
                if (!e.is_zero()) coeffs.push_back(e);
        Ideal coeff_ideal = ideal_sum(c2, Ideal{coeffs}, cusp);
        QuotientRing A = quotient_ring(c2, cusp, true);
        TestElement c = find_test_element(A);
        ParameterSystem base = find_parameters(A);
        auto tau = parameter_test_ideal(A, base, c);
        Ideal tau_lift = ideal_sum(c2, tau.ideal, cusp);
        if (!ideal_equal(c2, coeff_ideal, tau_lift)) {
            ok = false;
            detail += " [cusp coefficient ideal differs from the test ideal]";
        }
    } catch (const std::exception& e) {
        ok = false;
        detail += std::string(" [") + e.what() + "]";
    }
    report(7, ok, detail);
}

// 8. Koszul Ext: Ext^c(R/(x_1..x_c), R) is R/(x_1..x_c), other degrees vanish
void criterion8() {
    bool ok = true;
    for (std::size_t c = 1; c <= 3; ++c) {
        std::vector<std::string> vars;
        for (std::size_t i = 0; i < c; ++i) vars.push_back("x" + std::to_string(i + 1));
        RingContext ctx(5, vars);
        std::vector<Poly> gens;
        for (std::size_t i = 0; i < c; ++i) gens.push_back(poly_var(ctx, i));
        Ideal J{gens};
        PresentedModule M = cyclic_module(ctx, J);
        for (std::size_t i = 0; i <= c; ++i) {
            PresentedModule E = ext_module(ctx, M, i);
            if (i == c) {
                if (E.rank != 1) { ok = false; continue; }
                std::vector<Poly> rel;
                for (const auto& e : E.rel.a[0]) rel.push_back(e);
                if (!ideal_equal(ctx, Ideal{rel}, J)) ok = false;
            } else {
                if (!presented_is_zero(ctx, E)) ok = false;
            }
        }
    }
    report(8, ok, "Koszul Ext^c is cyclic with the Koszul relations; Ext^(i!=c) = 0");
}

// 9. determinism and replay of the criterion 1-2 reports
void criterion9() {
    bool ok = true;
    std::string detail = "reports byte-stable modulo timings; --replay verifies";
    std::vector<std::pair<std::string, std::string>> cases{
        {"cusp9.fs", kCusp}, {"node9.fs", kNode}, {"quadric9.fs", quadric_script(5)}};
    for (const auto& [name, body] : cases) {
        std::string path = write_script(name, body);
        RunResult r1 = run("dsimple " + path + " --json");
        RunResult r2 = run("dsimple " + path + " --json");
        ojson a = ojson::parse(r1.output, nullptr, false);
        ojson b = ojson::parse(r2.output, nullptr, false);
        if (a.is_discarded() || b.is_discarded()) { ok = false; detail += " [" + name + ": bad json]"; continue; }
        a.erase("timings");
        b.erase("timings");
        if (a.dump() != b.dump()) { ok = false; detail += " [" + name + ": nondeterministic]"; }
        auto rep = g_dir / (name + ".json");
        std::ofstream(rep) << r1.output;
        RunResult rr = run("dsimple " + path + " --replay " + rep.string());
        if (rr.exit_code != 0) { ok = false; detail += " [" + name + ": replay failed]"; }
    }
    report(9, ok, detail);
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <cli-binary>" << std::endl;
        return 2;
    }
    g_cli = argv[1];
    g_dir = std::filesystem::temp_directory_path() / "fsing-acceptance";
    std::filesystem::create_directories(g_dir);

    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    std::cout << "criterion 10: EXCLUDED - existence and uniqueness statements are "
                 "theorems, not computations; covered indirectly by the cross-checks "
                 "in criteria 5 and 7"
              << std::endl;

    if (g_failures > 0) {
        std::cout << g_failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
