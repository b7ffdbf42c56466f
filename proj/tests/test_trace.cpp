#include "doctest.h"

#include "kuznetsov/errors.hpp"
#include "kuznetsov/trace.hpp"

#include <cmath>
#include <numeric>
#include <random>

using namespace kuznetsov;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Naive oracle: inverse by linear search, phase as a floating angle.
cdouble naive_kloosterman(long m, long l, long c) {
    cdouble s = 0.0;
    for (long x = 0; x < c; ++x) {
        if (std::gcd(x, c) != 1) continue;
        long xb = 0;
        while ((x * xb) % c != 1 % c) ++xb;
        s += std::polar(1.0, 2.0 * kPi * static_cast<double>(m * x + l * xb) / static_cast<double>(c));
    }
    return s;
}

}  // namespace

TEST_CASE("Kloosterman sums at small moduli") {
    CHECK(kloosterman_gl2(1, 1, 1) == cdouble(1.0));
    CHECK(kloosterman_gl2(1, 1, 2) == cdouble(1.0));
    CHECK(kloosterman_gl2(1, 1, 3) == cdouble(-1.0));
    // S(1,1;4) = -2 and S(1,1;6) = -1, both from phases with rational cosines
    CHECK(kloosterman_gl2(1, 1, 4).real() == -2.0);
    CHECK(kloosterman_gl2(1, 1, 6).real() == -1.0);
    CHECK_THROWS_AS(kloosterman_gl2(1, 1, 0), DomainError);
}

TEST_CASE("Kloosterman sums agree with a naive floating-phase oracle") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> uc(1, 150), um(-300, 300);
    for (int i = 0; i < 200; ++i) {
        const long c = uc(rng), m = um(rng), l = um(rng);
        const cdouble ref = naive_kloosterman(m, l, c);
        const cdouble v = kloosterman_gl2(m, l, c);
        CHECK(std::abs(v - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
        CHECK(std::abs(v.imag()) <= 1e-12 * std::max(1.0, static_cast<double>(c)));
    }
}

TEST_CASE("Weil bound, trivial bound and reality for c <= 5000") {
    const auto rep = weil_check(5000);
    CHECK(rep.pass);
    CHECK(rep.trivial_ok);
    CHECK(rep.worst_ratio <= 1.0 + 1e-12);
    CHECK(rep.max_imag <= 1e-9);
}

TEST_CASE("Twisted multiplicativity on coprime moduli") {
    std::mt19937_64 rng(12);
    std::uniform_int_distribution<long> uc(1, 60), um(-50, 50);
    int checked = 0;
    while (checked < 100) {
        const long c1 = uc(rng), c2 = uc(rng);
        if (std::gcd(c1, c2) != 1) continue;
        CHECK(twisted_multiplicativity_residual(um(rng), um(rng), c1, c2) <= 1e-10);
        ++checked;
    }
    CHECK_THROWS_AS(twisted_multiplicativity_residual(1, 1, 4, 6), DomainError);
}

TEST_CASE("Modular helpers") {
    CHECK(mod_inverse(3, 7) == 5);
    CHECK(mod_inverse(-3, 7) == 2);
    CHECK_THROWS_AS(mod_inverse(2, 4), DomainError);
    CHECK(divisor_count(1) == 1);
    CHECK(divisor_count(360) == 24);
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(360) == 96);
    for (long c = 1; c <= 300; ++c) {
        long d = 0, ph = 0;
        for (long x = 1; x <= c; ++x) {
            d += c % x == 0;
            ph += std::gcd(x, c) == 1;
        }
        CHECK(divisor_count(c) == d);
        CHECK(euler_phi(c) == ph);
    }
}

TEST_CASE("Kloosterman queries for n >= 3 are housed but not evaluated") {
    KloostermanQuery q;
    q.moduli = {3, 5};
    q.w = WeylElement(Composition({1, 1, 1}));
    CHECK(q.n() == 3);
    CHECK_THROWS_AS(kloosterman(q), NotImplementedError);
    CHECK(kloosterman_trivial_bound(q.moduli) == 15.0);
    KloostermanQuery q2;
    q2.m = 1;
    q2.l = 1;
    q2.moduli = {3};
    CHECK(std::abs(kloosterman(q2) + 1.0) < 1e-15);
}

TEST_CASE("Dyadic Kloosterman tail converges for rho = 3/2 and diverges at a_1 = 0") {
    const auto a = choice_of_a(2, 1.5, 0.01);
    REQUIRE(a.size() == 1);
    CHECK(std::abs(a[0] - (1.5 + 0.505)) < 1e-15);
    const auto good = kloosterman_tail(a[0], 10000);
    CHECK(good.convergent);
    CHECK(good.max_ratio < 0.9);
    for (std::size_t i = 1; i < good.partial_sums.size(); ++i) CHECK(good.partial_sums[i] >= good.partial_sums[i - 1]);
    // the trivial comparison series is Σ c^{-4a_1} over each block
    for (std::size_t k = 0; k < good.block_start.size(); ++k) {
        double ref = 0.0;
        for (long c = good.block_start[k]; c < 2 * good.block_start[k]; ++c) ref += std::pow(static_cast<double>(c), -4.0 * a[0]);
        CHECK(std::abs(good.trivial_sums[k] - ref) <= 1e-12 * ref);
        CHECK(good.block_sums[k] <= good.trivial_sums[k] * (1 + 1e-12));
    }
    const auto bad = kloosterman_tail(0.0, 10000);
    CHECK_FALSE(bad.convergent);
    CHECK(bad.max_ratio >= 1.0);
}

TEST_CASE("Exponent calculators") {
    const auto r4 = iwbounds_exponent(4, Rational(3, 2), Composition({1, 3}));
    CHECK(r4.lm_exponent == Rational(29, 4));
    for (int n = 2; n <= 12; ++n) {
        Rational phi_min(1000000);
        for (const auto& c : enumerate_compositions(n, 2)) {
            const auto r = iwbounds_exponent(n, Rational(3, 2), c);
            CHECK(r.t_exponent <= r.slack);
            CHECK(r.slack <= Rational(0));
            CHECK(r.lm_exponent == Rational(n * n + 13, 4));
            phi_min = std::min(phi_min, r.phi);
        }
        CHECK(phi_min == Rational(n * (n - 1), 2));
        const auto r = iwbounds_exponent(n, Rational(3, 2), Composition({1, n - 1}));
        CHECK(r.slack == (n % 2 ? Rational(-3, 2) : Rational(-1)));
        // slack is linear in ρ with slope -n and vanishes at the threshold
        CHECK(r.slack + Rational(n) * (Rational(3, 2) - r.rho_threshold) == Rational(0));
    }
    CHECK_THROWS_AS(iwbounds_exponent(4, Rational(1), Composition({2, 2})), DomainError);
}

TEST_CASE("Exact B function") {
    CHECK(*bound_B_exact(Rational(-1, 3)) == Rational(0));
    CHECK(*bound_B_exact(Rational(0)) == Rational(0));
    CHECK(*bound_B_exact(Rational(5, 4)) == Rational(3, 2));
    CHECK(*bound_B_exact(Rational(3, 2)) == Rational(2));
    CHECK(*bound_B_exact(Rational(7, 4)) == Rational(2));
    CHECK_FALSE(bound_B_exact(Rational(2)).has_value());
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> u(1, 999);
    for (int i = 0; i < 1000; ++i) {
        const Rational x(u(rng), 97);
        if (x.denominator() == 1) continue;
        const double d = boost::rational_cast<double>(x);
        CHECK(std::abs(boost::rational_cast<double>(*bound_B_exact(x)) - bound_B(d)) < 1e-12);
        CHECK(*bound_B_exact(x) >= x);
        CHECK(*bound_B_exact(x) <= x + Rational(1, 2));
    }
}

TEST_CASE("a+b bound for every composition") {
    // n = 2 by hand at ρ = 3/2: a_1 = 2 + δ/2, b_1 = 2 + δ, so Σ B = 4 + 3δ against 4
    const auto r2 = verify_aplusb(2, Rational(3, 2), Composition({1, 1}));
    const Rational delta = Rational(2, 10000) / Rational(4);
    CHECK(r2.lhs == Rational(4) + Rational(3) * delta);
    CHECK(r2.rhs == Rational(4));
    CHECK(r2.pass);
    for (const Rational rho : {Rational(1, 2), Rational(3, 2), Rational(5, 2)})
        for (int n = 2; n <= 7; ++n)
            for (const auto& c : enumerate_compositions(n, 2)) {
                const auto r = verify_aplusb(n, rho, c);
                CHECK_MESSAGE(r.pass, "n = " << n << " C = " << c.str());
                CHECK(r.lhs >= r.rhs);
                CHECK(r.a.size() == static_cast<std::size_t>(n - 1));
                CHECK(r.b.size() == static_cast<std::size_t>(n - 1));
            }
}

TEST_CASE("Hecke divisor sums") {
    const std::vector<HeckeBlock> borel{HeckeBlock{}, HeckeBlock{}};
    CHECK(std::abs(hecke_divisor_sum(1, {0.3, -0.3}, borel) - 1.0) < 1e-15);
    const cdouble s(0.2, 1.7);
    CHECK(std::abs(hecke_divisor_sum(2, {s, -s}, borel) - (std::pow(2.0, s) + std::pow(2.0, -s))) < 1e-14);
    auto oracle = [&](long m) {
        cdouble acc = 0.0;
        for (long d = 1; d <= m; ++d)
            if (m % d == 0) acc += std::pow(static_cast<double>(d), s) * std::pow(static_cast<double>(m / d), -s);
        return acc;
    };
    for (long m = 1; m <= 60; ++m) CHECK(std::abs(hecke_divisor_sum(m, {s, -s}, borel) - oracle(m)) < 1e-12 * std::abs(oracle(m)) + 1e-13);
    for (long a = 1; a <= 12; ++a)
        for (long b = 1; b <= 12; ++b) {
            if (std::gcd(a, b) != 1) continue;
            const cdouble lhs = hecke_divisor_sum(a * b, {s, -s}, borel);
            const cdouble rhs = hecke_divisor_sum(a, {s, -s}, borel) * hecke_divisor_sum(b, {s, -s}, borel);
            CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs) + 1e-13);
        }
    // a GL(2) block next to a unit block: 2 s_1 + s_2 = 0
    const auto form = synthetic_maass_fixture(1, 5).front();
    const std::vector<HeckeBlock> mixed{HeckeBlock{form}, HeckeBlock{}};
    const cdouble s1(0.1, 0.4);
    const cdouble v = hecke_divisor_sum(6, {s1, -2.0 * s1}, mixed);
    cdouble ref = 0.0;
    for (int d : {1, 2, 3, 6}) ref += form.lambda(d) * std::pow(static_cast<double>(d), s1) * std::pow(6.0 / d, -2.0 * s1);
    CHECK(std::abs(v - ref) < 1e-13);
    CHECK_THROWS_AS(hecke_divisor_sum(6, {s1, -s1}, mixed), DomainError);
}

TEST_CASE("Cuspidal orthogonality ratio") {
    const auto fx = synthetic_maass_fixture(50, 2024);
    const TestFunctionParams p(10, 1, 2);
    for (int l = 1; l <= 10; ++l) CHECK(cuspidal_sum(fx, p, l, l).ratio == 1.0);
    for (int l = 1; l <= 10; ++l)
        for (int m = 1; m <= 10; ++m) {
            if (l == m) continue;
            const auto c = cuspidal_sum(fx, p, l, m);
            // completely multiplicative signs give λ(l)λ(m) = λ(lm), which is 1 when lm is a square
            const long sq = std::lround(std::sqrt(static_cast<double>(l * m)));
            if (sq * sq == l * m)
                CHECK(c.ratio == 1.0);
            else
                CHECK(std::abs(c.ratio) <= 3.0 / std::sqrt(50.0));
        }
    // single record: the ratio is that record's λ(l)λ(m)
    const std::vector<MaassFormRecord> one{fx[7]};
    CHECK(std::abs(cuspidal_sum(one, p, 2, 3).ratio - fx[7].lambda(2) * fx[7].lambda(3)) < 1e-15);
    // scale invariance in the adjoint L-values
    auto scaled = fx;
    for (auto& f : scaled) f.adjoint_L *= 3.7;
    CHECK(std::abs(cuspidal_sum(scaled, p, 2, 5).ratio - cuspidal_sum(fx, p, 2, 5).ratio) < 1e-14);
    CHECK_THROWS_AS(cuspidal_sum(fx, p, 2, 97), DomainError);
    CHECK_THROWS_AS(cuspidal_sum({}, p, 1, 1), DomainError);
}

TEST_CASE("Synthetic fixture is Hecke multiplicative with lambda(1) = 1") {
    for (const auto& f : synthetic_maass_fixture(50, 2024)) {
        CHECK(f.lambda(1) == 1.0);
        CHECK(f.multiplicativity_violations().empty());
        CHECK(f.source == "synthetic");
    }
}

TEST_CASE("Maass CSV ingestion") {
    CHECK(parse_maass_csv("").records.empty());
    const auto one = parse_maass_csv("r,lambda_1,lambda_2,adjoint_L\n9.5337,1.0,0.5,1.23\n");
    REQUIRE(one.records.size() == 1);
    CHECK(one.records[0].r == 9.5337);
    CHECK(one.records[0].lambda(2) == 0.5);
    CHECK(one.records[0].adjoint_L == 1.23);
    const auto two = parse_maass_csv("r,lambda_2,lambda_3,lambda_6,adjoint_L\n1,0.5,2,1,1\n2,0.5,2,9,1\n");
    CHECK(two.records.size() == 2);
    CHECK(two.records[0].lambda(1) == 1.0);
    REQUIRE(two.warnings.size() == 1);
    CHECK(two.warnings[0].find("line 3") != std::string::npos);
    try {
        parse_maass_csv("r,lambda_1,adjoint_L\n1.0,0.9,1.0\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    CHECK_THROWS_AS(parse_maass_csv("r,lambda_2,adjoint_L\n1.0,0.5\n"), ParseError);
    CHECK_THROWS_AS(parse_maass_csv("r,lambda_2,adjoint_L\n1.0,abc,1\n"), ParseError);
    CHECK_THROWS_AS(parse_maass_csv("r,lambda_2,adjoint_L\n1.0,0.5,-1\n"), ParseError);
    CHECK_THROWS_AS(parse_maass_csv("r,mu,adjoint_L\n"), ParseError);
    CHECK_THROWS_AS(ingest_maass_csv("/nonexistent/forms.csv"), IoError);
}
