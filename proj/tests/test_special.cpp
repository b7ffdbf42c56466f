#include "doctest.h"

#include "kuznetsov/errors.hpp"
#include "kuznetsov/special.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <numeric>
#include <random>

using namespace kuznetsov;

namespace {

LanglandsParameter random_tempered(std::mt19937_64& rng, int n, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    std::vector<double> t(static_cast<std::size_t>(n));
    double s = 0;
    for (int i = 0; i < n - 1; ++i) {
        t[static_cast<std::size_t>(i)] = u(rng);
        s += t[static_cast<std::size_t>(i)];
    }
    t[static_cast<std::size_t>(n - 1)] = -s;
    return LanglandsParameter::tempered(t);
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("log gamma at exact points") {
    CHECK(std::abs(log_gamma(0.5) - std::log(std::sqrt(M_PI))) < 1e-15);
    CHECK(std::abs(log_gamma(5.0) - std::log(24.0)) < 1e-14);
    CHECK(std::abs(log_gamma(1.0)) < 1e-15);
    CHECK_THROWS_AS(log_gamma(0.0), PoleError);
    CHECK_THROWS_AS(log_gamma(-3.0), PoleError);
    try {
        log_gamma(-2.0);
    } catch (const PoleError& e) {
        CHECK(e.location() == cdouble(-2.0));
    }
}

TEST_CASE("log gamma against an independent real implementation") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-30.0, 60.0);
    for (int i = 0; i < 2000; ++i) {
        const double x = u(rng);
        if (std::abs(x - std::round(x)) < 1e-6 && x <= 0) continue;
        const double ref = boost::math::tgamma(x);
        const cdouble g = complex_gamma(x);
        CHECK(std::abs(g - ref) <= 1e-13 * std::abs(ref) * std::max(1.0, std::abs(x) / 10.0));
    }
}

TEST_CASE("log gamma on vertical lines") {
    for (double t : {0.1, 1.0, 3.7, 10.0, 42.0, 150.0}) {
        // |Γ(1/2+it)|² = π/cosh(πt), |Γ(1+it)|² = πt/sinh(πt).
        const double lhs1 = 2.0 * log_gamma(cdouble(0.5, t)).real();
        const double rhs1 = std::log(M_PI) - M_PI * t - std::log1p(std::exp(-2 * M_PI * t)) + std::log(2.0);
        CHECK(std::abs(lhs1 - rhs1) <= 1e-13 * std::max(1.0, std::abs(rhs1)));
        const double lhs2 = 2.0 * log_gamma(cdouble(1.0, t)).real();
        const double rhs2 = std::log(M_PI * t) - M_PI * t - std::log1p(-std::exp(-2 * M_PI * t)) + std::log(2.0);
        CHECK(std::abs(lhs2 - rhs2) <= 1e-13 * std::max(1.0, std::abs(rhs2)));
    }
    const cdouble z(2.0, 10.0);
    CHECK(std::abs(std::abs(complex_gamma(z)) / stirling_abs_gamma(2.0, 10.0) - 1.0) < 0.01);
}

TEST_CASE("log gamma functional equations") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> re(-8.0, 8.0), im(-40.0, 40.0);
    for (int i = 0; i < 1000; ++i) {
        const cdouble z(re(rng), im(rng));
        const cdouble rec = std::exp(log_gamma(z + 1.0) - log_gamma(z) - std::log(z));
        CHECK(std::abs(rec - 1.0) < 1e-12);
        const cdouble refl = std::exp(log_gamma(z) + log_gamma(1.0 - z) + log_sin_pi(z) - std::log(M_PI));
        CHECK(std::abs(refl - 1.0) < 1e-12);
        CHECK(std::abs(log_gamma(z).imag()) <= M_PI + 1e-12);
        CHECK(std::abs(complex_gamma(std::conj(z)) - std::conj(complex_gamma(z))) <= 1e-13 * std::abs(complex_gamma(z)));
    }
}

TEST_CASE("log gamma matches the Stirling series for large arguments") {
    for (double mag : {1e2, 1e3, 1e4, 1e6})
        for (double ang : {0.0, 0.7, 1.4, 2.0}) {
            const cdouble z = std::polar(mag, ang);
            const cdouble st = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * M_PI) + 1.0 / (12.0 * z) - 1.0 / (360.0 * z * z * z);
            const cdouble diff = log_gamma(z) - st;
            const cdouble wrapped(diff.real(), std::remainder(diff.imag(), 2 * M_PI));
            CHECK(std::abs(wrapped) <= 4e-16 * std::abs(st) + 1e-13);
        }
}

TEST_CASE("gamma_R") {
    CHECK(gamma_R(0.0, 1) == cdouble(0.0));
    CHECK(gamma_R(-3.0, 2) == cdouble(0.0));
    CHECK(std::abs(gamma_R(0.5, 2) - 0.5) < 1e-15);
    CHECK_THROWS_AS(gamma_R(-2.5, 2), PoleError);
    CHECK_THROWS_AS(gamma_R(1.0, 0), DomainError);

    // Γ_R(w)Γ_R(-w)Γ(-w-δ) grows like |t|^{R - Re w - δ}.
    for (int R : {1, 2, 3})
        for (int delta : {0, 1, 2})
            for (double sigma : {-0.3, 0.0, 0.4}) {
                std::vector<double> lx, ly;
                for (double t = 200; t <= 3200; t *= 2) {
                    lx.push_back(std::log(t));
                    ly.push_back(std::log(std::abs(gamma_R_triple(cdouble(sigma, t), delta, R))));
                }
                CHECK(std::abs(slope(lx, ly) - (R - sigma - delta)) < 0.02);
            }
}

TEST_CASE("removable points of the gamma_R triple product") {
    const cdouble beta(0.0, 0.37);
    for (int R : {1, 2, 4})
        for (int delta : {0, 1, 3})
            for (int k = -R + 1; k <= R - 1; ++k) {
                const cdouble z0 = -beta + static_cast<double>(k);
                const cdouble exact = gamma_R_triple_entire(beta + z0, delta, R);
                CHECK(std::isfinite(std::abs(exact)));
                for (double h : {1e-3, -1e-3, 1e-6, -1e-6}) {
                    const cdouble w = beta + z0 + h;
                    const cdouble direct = gamma_R_triple(w, delta, R);
                    CHECK(std::abs(direct - gamma_R_triple_entire(w, delta, R)) <= 1e-10 * (1.0 + std::abs(direct)));
                    CHECK(std::abs(direct - exact) <= 10.0 * std::abs(h) * (1.0 + std::abs(exact)) * 50.0);
                }
            }
}

TEST_CASE("F_R polynomial") {
    CHECK(f_R_poly(LanglandsParameter::tempered({1.3, -1.3}), 3) == cdouble(1.0));
    CHECK(std::abs(f_R_poly(LanglandsParameter::tempered({0, 0, 0}), 2) - 1.0) < 1e-15);
    CHECK(std::abs(f_R_poly(LanglandsParameter::tempered({1, -1, 0}), 2) - 20.0) < 1e-12);
    for (int n = 2; n <= 6; ++n) CHECK(static_cast<std::int64_t>(f_R_linear_forms(n).size()) == degree_D(n));

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3 + trial % 3;
        auto a = random_tempered(rng, n, 3.0);
        const int R = 1 + trial % 3;
        const cdouble v = f_R_poly(a, R);
        CHECK(v.real() >= 1.0 - 1e-12);
        CHECK(std::abs(v.imag()) <= 1e-12 * v.real());
        std::vector<int> perm(static_cast<std::size_t>(n));
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(std::abs(f_R_poly(a.permuted(perm), R) / v - 1.0) < 1e-12);
    }
    // Growth in T along a generic tempered direction.
    for (int n : {3, 4, 5})
        for (int R : {1, 2}) {
            auto dir = random_tempered(rng, n, 1.0);
            std::vector<double> lx, ly;
            for (double T = 1e3; T <= 1.7e4; T *= 2) {
                lx.push_back(std::log(T));
                ly.push_back(log_f_R_poly(dir.scaled(T).entries(), R).real());
            }
            CHECK(std::abs(slope(lx, ly) - static_cast<double>(R * degree_D(n))) < 0.1);
        }
}

TEST_CASE("bound function B") {
    CHECK(bound_B(-1.0) == 0.0);
    CHECK(bound_B(0.25) == doctest::Approx(0.5));
    CHECK(bound_B(1.25) == doctest::Approx(1.5));
    CHECK(bound_B(0.75) == doctest::Approx(1.0));
    CHECK(bound_B(0.5) == doctest::Approx(1.0));
    CHECK_THROWS_AS(bound_B(2.0), DomainError);
    CHECK_THROWS_AS(bound_B(1.0 + 1e-12), DomainError);
    for (double a = -3.0; a < 6.0; a += 0.0137) {
        if (std::abs(a - std::round(a)) < 1e-6) continue;
        CHECK(bound_B(a) >= a);
        CHECK(bound_B(a) <= std::max(0.0, a) + 0.5 + 1e-12);
    }
}

TEST_CASE("B lemmas") {
    CHECK(max_simplify_lhs(0.3) == doctest::Approx(-0.6));
    CHECK(max_simplify_rhs(0.3) == doctest::Approx(-0.6));
    CHECK(max_simplify_lhs(0.8) == doctest::Approx(-1.0));
    CHECK(max_simplify_rhs(0.8) == doctest::Approx(-1.0));
    auto [l, r] = residue_exponent_sides({0.75, 0.75, 0.75}, 2, 0);
    CHECK(l == doctest::Approx(1.5));
    CHECK(r == doctest::Approx(0.25));
    CHECK(l >= r);
    std::vector<double> grid;
    for (double a = -2.95; a < 5; a += 0.1) grid.push_back(a);
    auto rep = verify_B_lemmas(grid, 20000, 99);
    CHECK(rep.pass);
    CHECK(rep.residue_checked > 15000);
    CHECK(rep.worst_slack >= 0.0);
}

TEST_CASE("partitioned Langlands parameters") {
    LanglandsParameter a({cdouble(0, 1), cdouble(0, 2), cdouble(0, -1), cdouble(0, -2)});
    auto p = partition_parameter(a, Composition({2, 2}));
    CHECK(std::abs(p.beta[0] - cdouble(0, 3)) < 1e-15);
    CHECK(std::abs(p.beta[1] - cdouble(0, -3)) < 1e-15);
    CHECK(std::abs(p.blocks[0][0] - cdouble(0, -0.5)) < 1e-15);
    CHECK(std::abs(p.blocks[0][1] - cdouble(0, 0.5)) < 1e-15);
    CHECK(quadratic_identity_residual(p) < 1e-14);
    auto whole = partition_parameter(a, Composition({4}));
    CHECK(std::abs(whole.beta[0]) < 1e-15);
    CHECK_THROWS_AS(partition_parameter(a, Composition({1, 2})), DomainError);
    CHECK_THROWS_AS(LanglandsParameter({1.0, 1.0}), DomainError);

    std::mt19937_64 rng(4);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + trial % 7;
        std::vector<cdouble> v(static_cast<std::size_t>(n));
        cdouble s = 0;
        for (int i = 0; i < n - 1; ++i) {
            v[static_cast<std::size_t>(i)] = cdouble(g(rng), g(rng));
            s += v[static_cast<std::size_t>(i)];
        }
        v[static_cast<std::size_t>(n - 1)] = -s;
        auto cs = enumerate_compositions(n, 1);
        auto P = partition_parameter(LanglandsParameter(v), cs[rng() % cs.size()]);
        CHECK(quadratic_identity_residual(P) <= 1e-12);
        for (auto& b : P.blocks) {
            cdouble bs = 0;
            for (auto x : b) bs += x;
            CHECK(std::abs(bs) < 1e-13);
        }
    }
}

TEST_CASE("Gamma and F_R decompositions") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 5;
        auto cs = enumerate_compositions(n, 2);
        auto c = cs[rng() % cs.size()];
        auto a = random_tempered(rng, n, 4.0);
        auto rep = verify_gamma_decompositions(a, c, 1 + trial % 3);
        CHECK(rep.pass);
        CHECK(rep.fr_remaining == rep.fr_predicted_remaining);
    }
    auto all_ones = verify_gamma_decompositions(LanglandsParameter::tempered({0.5, 1.1, -1.6}), Composition({1, 1, 1}), 2);
    CHECK(all_ones.pass);
    CHECK(all_ones.fr_remaining == 3);
    CHECK_THROWS_AS(verify_gamma_decompositions(LanglandsParameter::tempered({1, 1, -2}), Composition({1, 2}), 1),
                    DegenerateInputError);
}

TEST_CASE("extra Gamma sum identity is exact") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 500; ++trial) {
        const int r = 2 + trial % 5;
        std::vector<int> parts(static_cast<std::size_t>(r));
        for (auto& p : parts) p = 1 + static_cast<int>(rng() % 4);
        std::vector<Rational> beta;
        Rational s{0};
        for (int i = 0; i < r - 1; ++i) {
            beta.emplace_back(static_cast<std::int64_t>(rng() % 41) - 20, 1 + static_cast<std::int64_t>(rng() % 9));
            s += beta.back();
        }
        beta.push_back(-s);
        auto [l, rr] = extra_gamma_sum_sides(beta, Composition(parts));
        CHECK(l == rr);
    }
}
