#include "doctest.h"

#include "kuznetsov/errors.hpp"
#include "kuznetsov/whittaker.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace kuznetsov;

namespace {

constexpr double kPi = 3.14159265358979323846;

double rel(cdouble a, cdouble b) { return std::abs(a - b) / std::abs(b); }

LanglandsParameter tempered3(std::mt19937_64& rng, double spread) {
    std::uniform_real_distribution<double> u(-spread, spread);
    const double t1 = u(rng), t2 = u(rng);
    return LanglandsParameter::tempered({t1, t2, -t1 - t2});
}

// K_{it}(x) = ∫_0^∞ e^{-x cosh u} cos(tu) du.
double bessel_k_imag_order(double t, double x) {
    boost::math::quadrature::exp_sinh<double> q;
    return q.integrate([&](double u) { return std::exp(-x * std::cosh(u)) * std::cos(t * u); }, 1e-14);
}

}  // namespace

TEST_CASE("GL(2) Mellin transform: exact Gamma values and symmetry") {
    CHECK(std::abs(mellin_gl2(0.0, 1.0) - 1.0) < 1e-15);
    CHECK(rel(mellin_gl2(0.5, 1.0), cdouble(kPi / 2)) < 1e-14);
    const cdouble a(0.3, 1.7), s(0.8, -2.1);
    CHECK(mellin_gl2(a, s) == mellin_gl2(-a, s));
    CHECK(rel(mellin_gl2(LanglandsParameter({a, -a}), s), mellin_gl2(a, s)) < 1e-15);
    CHECK_THROWS_AS(mellin_gl2(0.5, -0.5), PoleError);
}

TEST_CASE("GL(3) recursion agrees with the Barnes closed form") {
    const cdouble k3 = calibrate_kappa3();
    MESSAGE("kappa_3 = " << k3);
    CHECK(std::abs(k3 - 1.0) < 1e-9);
    std::mt19937_64 rng(11);
    const MellinPoint s{0.75, 0.75};
    QuadratureSpec q;
    q.rel_tol = 1e-6;
    double worst = 0;
    for (int i = 0; i < 20; ++i) {
        const auto a = tempered3(rng, 4.0);
        const auto r = mellin_recursive(3, a, s, q);
        worst = std::max(worst, rel(r.value, mellin_gl3_closed(a, s, k3)));
    }
    CHECK(worst <= 1e-6);
    // complex s
    const LanglandsParameter a = LanglandsParameter::tempered({1.3, -0.4, -0.9});
    const MellinPoint s2{cdouble(1.2, 0.7), cdouble(0.6, -1.5)};
    CHECK(rel(mellin_recursive(3, a, s2).value, mellin_gl3_closed(a, s2)) <= 1e-7);
}

TEST_CASE("GL(3) recursion at alpha = 0 is finite, positive and real") {
    const LanglandsParameter zero(std::vector<cdouble>{0.0, 0.0, 0.0});
    const auto r = mellin_recursive(3, zero, {1.0, 1.0});
    CHECK(r.value.real() > 0);
    CHECK(std::abs(r.value.imag()) < 1e-12 * r.value.real());
    CHECK(r.error <= 1e-8 * std::abs(r.value));
    CHECK(r.nodes > 0);
}

TEST_CASE("GL(3) recursion is invariant under all permutations of alpha") {
    const LanglandsParameter a = LanglandsParameter::tempered({2.1, -0.7, -1.4});
    const MellinPoint s{cdouble(0.9, 0.3), cdouble(1.1, -0.2)};
    std::vector<int> p{0, 1, 2};
    const cdouble ref = mellin_recursive(3, a, s).value;
    int count = 0;
    do {
        CHECK(rel(mellin_recursive(3, a.permuted(p), s).value, ref) <= 1e-6);
        ++count;
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(count == 6);
}

TEST_CASE("GL(3) recursion is self-convergent under node doubling") {
    const LanglandsParameter a = LanglandsParameter::tempered({0.8, 0.5, -1.3});
    for (const MellinPoint& s : {MellinPoint{1.0, 1.0}, MellinPoint{0.5, 1.5}, MellinPoint{cdouble(0.7, 2.0), 0.9}}) {
        QuadratureSpec q2;
        q2.nodes_per_unit = 32;
        CHECK(rel(mellin_recursive(3, a, s).value, mellin_recursive(3, a, s, q2).value) <= 1e-10);
    }
}

TEST_CASE("GL(4) recursion is self-convergent and permutation invariant") {
    const LanglandsParameter zero(std::vector<cdouble>{0.0, 0.0, 0.0, 0.0});
    const MellinPoint s{1.0, 1.0, 1.0};
    QuadratureSpec q1;
    q1.rel_tol = 1e-8;
    QuadratureSpec q2 = q1;
    q2.nodes_per_unit = 32;
    const auto v1 = mellin_recursive(4, zero, s, q1);
    const auto v2 = mellin_recursive(4, zero, s, q2);
    CHECK(v1.value.real() > 0);
    CHECK(rel(v1.value, v2.value) <= 1e-5);

    const LanglandsParameter a = LanglandsParameter::tempered({0.6, -0.2, 0.5, -0.9});
    const auto w1 = mellin_recursive(4, a, s, q1);
    const auto w2 = mellin_recursive(4, a.permuted({3, 1, 0, 2}), s, q1);
    CHECK(rel(w1.value, w2.value) <= 1e-6);
}

TEST_CASE("Evaluator dispatches on n and validates input") {
    const LanglandsParameter a2 = LanglandsParameter::tempered({0.4, -0.4});
    WhittakerEvaluator e2(a2);
    CHECK(rel(e2.mellin({1.0}).value, mellin_gl2(cdouble(0, 0.4), 1.0)) < 1e-15);
    CHECK_THROWS_AS(e2.mellin({1.0, 1.0}), DomainError);
    QuadratureSpec bad;
    bad.rel_tol = 0;
    CHECK_THROWS_AS(WhittakerEvaluator(a2, bad), DomainError);
    CHECK_THROWS_AS(WhittakerEvaluator(LanglandsParameter(std::vector<cdouble>(5, 0.0))), DomainError);
    const LanglandsParameter a3 = LanglandsParameter::tempered({0.4, -0.1, -0.3});
    CHECK_THROWS_AS(mellin_recursive(3, a3, {-0.5, 1.0}), DomainError);
}

TEST_CASE("Tolerance that cannot be met raises an accuracy error") {
    const LanglandsParameter a = LanglandsParameter::tempered({0.4, -0.1, -0.3});
    QuadratureSpec q;
    q.rel_tol = 1e-30;
    try {
        mellin_recursive(3, a, {1.0, 1.0}, q);
        FAIL("expected AccuracyError");
    } catch (const AccuracyError& e) {
        CHECK(e.achieved() > 1e-30);
    }
}

TEST_CASE("GL(2) shift identity") {
    const auto r0 = shift_identity_check(2, 1, 1, LanglandsParameter::tempered({0.3, -0.3}), {0.7});
    CHECK(r0.residual <= 1e-13);
    CHECK(r0.pass);
    const auto rz = shift_identity_check(2, 1, 0, LanglandsParameter::tempered({0.3, -0.3}), {0.7});
    CHECK(rz.residual == 0.0);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-3, 3), v(0.1, 3);
    for (int i = 0; i < 100; ++i) {
        const int delta = static_cast<int>(rng() % 6);
        const cdouble a(u(rng) * 0.1, u(rng));
        const auto r = shift_identity_check(2, 1, delta, LanglandsParameter({a, -a}), {cdouble(v(rng), u(rng))});
        CHECK(r.pass);
        CHECK(r.ledger_lhs == 2 * delta);
    }
}

TEST_CASE("GL(3) shift identities and degree ledger") {
    const LanglandsParameter a = LanglandsParameter::tempered({0.7, -0.3, -0.4});
    for (int m = 1; m <= 2; ++m)
        for (int delta = 0; delta <= 3; ++delta) {
            const auto r = shift_identity_check(3, m, delta, a, {cdouble(0.6, 0.2), cdouble(0.9, -0.5)}, 1e-9);
            CHECK(r.pass);
            CHECK(r.ledger_lhs == 3 * delta);
            CHECK(r.ledger_rhs == 3 * delta);
        }
    CHECK_THROWS_AS(shift_identity_check(3, 3, 1, a, {1.0, 1.0}), DomainError);
}

TEST_CASE("GL(2) residues: closed values and contour oracle") {
    const cdouble al(0.0, 0.4);
    const LanglandsParameter a({al, -al});
    const ResidueSpec r0(Composition({1, 1}), {0});
    CHECK(rel(residue_formula(2, r0, a, {}), complex_gamma(-2.0 * al)) < 1e-14);
    const ResidueSpec r2(Composition({1, 1}), {2});
    CHECK(rel(residue_formula(2, r2, a, {}), 0.5 * complex_gamma(-2.0 * al - 2.0)) < 1e-14);
    for (int d = 0; d <= 3; ++d) {
        const ResidueSpec r(Composition({1, 1}), {d});
        CHECK(rel(residue_contour(2, r, a, {}), residue_formula(2, r, a, {})) <= 1e-8);
    }
    CHECK_THROWS_AS(residue_formula(2, r0, LanglandsParameter::tempered({0.0, 0.0}), {}), DegenerateInputError);
    CHECK_THROWS_AS(residue_formula(2, ResidueSpec(Composition({1, 1}), {4}), a, {}), DomainError);
}

TEST_CASE("GL(3) residues: closed form vs contour") {
    const LanglandsParameter a = LanglandsParameter::tempered({0.9, -0.25, -0.65});
    const cdouble s2(0.8, 0.3), s1(0.7, -0.4);
    for (int d = 0; d <= 3; ++d) {
        const ResidueSpec first(Composition({1, 2}), {d});
        CHECK(rel(residue_contour(3, first, a, {s2}), residue_formula(3, first, a, {s2})) <= 1e-8);
        const ResidueSpec second(Composition({2, 1}), {d});
        CHECK(rel(residue_contour(3, second, a, {s1}), residue_formula(3, second, a, {s1})) <= 1e-8);
    }
    for (int d1 = 0; d1 <= 2; ++d1)
        for (int d2 = 0; d2 <= 2; ++d2) {
            const ResidueSpec both(Composition({1, 1, 1}), {d1, d2});
            CHECK(rel(residue_contour(3, both, a, {}, 0.1, 64), residue_formula(3, both, a, {})) <= 1e-8);
        }
}

TEST_CASE("Whittaker function equals 2 sqrt(y) K_alpha(2 pi y)") {
    for (double nu : {0.0, 0.3, 0.45}) {
        const LanglandsParameter a({cdouble(nu), cdouble(-nu)});
        for (double y : {0.2, 0.5, 1.0}) {
            const auto w = whittaker_value(a, y, 0.5);
            const double oracle = 2 * std::sqrt(y) * boost::math::cyl_bessel_k(nu, 2 * kPi * y);
            CHECK(rel(w.value, oracle) <= 1e-8);
        }
    }
    for (double t : {1.0, 4.0}) {
        const LanglandsParameter a = LanglandsParameter::tempered({t, -t});
        for (double y : {0.3, 0.8}) {
            const auto w = whittaker_value(a, y, 0.5);
            const double oracle = 2 * std::sqrt(y) * bessel_k_imag_order(t, 2 * kPi * y);
            CHECK(std::abs(w.value.imag()) <= 1e-10 * std::abs(w.value));
            CHECK(std::abs(w.value.real() - oracle) <= 1e-8 * std::abs(oracle) + 1e-14);
        }
    }
}

TEST_CASE("Whittaker function: contour shift, conjugate symmetry, decay") {
    const LanglandsParameter a = LanglandsParameter::tempered({1.5, -1.5});
    CHECK(rel(whittaker_value(a, 1.0, 0.5).value, whittaker_value(a, 1.0, 1.0).value) <= 1e-8);
    const auto w = whittaker_value(a, 0.4, 0.5);
    CHECK(w.value.real() > 0);
    const LanglandsParameter c({cdouble(0.2, 0.9), cdouble(-0.2, -0.9)});
    const LanglandsParameter cb({cdouble(0.2, -0.9), cdouble(-0.2, 0.9)});
    CHECK(std::abs(whittaker_value(c, 0.6).value - std::conj(whittaker_value(cb, 0.6).value)) <= 1e-12);
    // place the contour near the saddle so the small value is computed to full relative accuracy
    const auto w1 = whittaker_value(a, 1.0, kPi * 1.0);
    const auto w5 = whittaker_value(a, 5.0, kPi * 5.0);
    CHECK(std::abs(w5.value) * 1e3 < std::abs(w1.value));
    CHECK_THROWS_AS(whittaker_value(a, -1.0), DomainError);
    CHECK_THROWS_AS(whittaker_value(a, std::vector<double>{1.0, 2.0}), NotImplementedError);
}
