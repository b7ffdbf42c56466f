#include "doctest.h"

#include "kuznetsov/errors.hpp"
#include "kuznetsov/geometry.hpp"

#include <cmath>
#include <random>

using namespace kuznetsov;

namespace {

std::vector<double> random_y(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> y(static_cast<std::size_t>(n - 1));
    for (auto& v : y) v = std::exp(u(rng));
    return y;
}

Eigen::MatrixXd random_ubar(std::mt19937_64& rng, const WeylElement& w, double scale = 1.0) {
    std::normal_distribution<double> g(0.0, scale);
    Eigen::MatrixXd u = Eigen::MatrixXd::Identity(w.n(), w.n());
    for (auto [i, j] : w.ubar_pattern()) u(i, j) = g(rng);
    return u;
}

double rel_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]) / std::abs(b[i]));
    return m;
}

}  // namespace

TEST_CASE("Iwasawa decomposition of special matrices") {
    auto I = iwasawa_decompose(Eigen::MatrixXd::Identity(4, 4));
    CHECK((I.point.x - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-15);
    for (double v : I.point.y) CHECK(v == doctest::Approx(1.0));
    CHECK(I.c == doctest::Approx(1.0));
    CHECK((I.k - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-15);

    std::vector<double> a{2.0, 0.5, 3.0};
    auto D = iwasawa_decompose(toric_matrix(a));
    CHECK(rel_diff(D.point.y, a) < 1e-15);
    CHECK((D.k - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-15);
    CHECK((D.point.x - Eigen::MatrixXd::Identity(4, 4)).norm() < 1e-15);

    CHECK_THROWS_AS(iwasawa_decompose(Eigen::MatrixXd::Zero(3, 3)), DomainError);
}

TEST_CASE("Iwasawa round trip on random matrices") {
    std::mt19937_64 rng(2024);
    std::normal_distribution<double> g;
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + trial % 5;
        Eigen::MatrixXd m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = g(rng);
        auto d = iwasawa_decompose(m);
        Eigen::MatrixXd back = d.point.matrix() * d.k * d.c;
        worst = std::max(worst, (back - m).norm() / m.norm());
        CHECK((d.k * d.k.transpose() - Eigen::MatrixXd::Identity(n, n)).norm() < 1e-13);
        for (double v : d.point.y) CHECK(v > 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) CHECK(d.point.x(i, j) == 0.0);
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("power function") {
    std::mt19937_64 rng(5);
    for (int n = 2; n <= 6; ++n) {
        std::vector<cdouble> a0;
        for (int j = 1; j <= n; ++j) a0.emplace_back(-(n - 1) / 2.0 + j - 1, 0.0);
        auto y = random_y(rng, n);
        CHECK(std::abs(power_function_y(y, a0) - 1.0) < 1e-13);
        std::vector<cdouble> al;
        cdouble s = 0;
        for (int j = 0; j < n - 1; ++j) {
            al.emplace_back(0.1 * j, 0.7 * j - 0.3);
            s += al.back();
        }
        al.push_back(-s);
        CHECK(std::abs(power_function_y(std::vector<double>(static_cast<std::size_t>(n - 1), 1.0), al) - 1.0) < 1e-14);
    }
    const cdouble s(0.3, 1.7);
    CHECK(std::abs(power_function_y({4.0}, {s, -s}) - std::pow(cdouble(4.0), s + 0.5)) < 1e-13);
}

TEST_CASE("additive character") {
    Eigen::MatrixXd x = Eigen::MatrixXd::Identity(3, 3);
    CHECK(psi_phase(x, {1, 1}) == 0.0);
    x(0, 1) = 0.25;
    x(1, 2) = 0.5;
    CHECK(psi_phase(x, {1, 1}) == doctest::Approx(0.75));
    CHECK(std::abs(psi_M(x, {1, 1}) - std::polar(1.0, 1.5 * M_PI)) < 1e-15);

    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 4;
        Eigen::MatrixXd u = Eigen::MatrixXd::Identity(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) u(i, j) = g(rng);
        std::vector<int> v(static_cast<std::size_t>(n));
        for (auto& s : v) s = (rng() & 1u) ? 1 : -1;
        Eigen::MatrixXd V = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i) V(i, i) = v[static_cast<std::size_t>(i)];
        const std::vector<long> m{2, -1, 3};
        CHECK(psi_phase_twisted(u, m, v) == doctest::Approx(psi_phase(V.inverse() * u * V, m)).epsilon(1e-14));
    }
}

TEST_CASE("Weyl elements and conjugated y coordinates") {
    CHECK_THROWS_AS(WeylElement(Composition({3})), DomainError);
    WeylElement w11(Composition({1, 1}));
    auto yp = weyl_conjugate_y(w11, {2.5});
    CHECK(yp[0] == doctest::Approx(1.0 / 2.5));

    WeylElement w22(Composition({2, 2}));
    Eigen::MatrixXd W = w22.matrix();
    Eigen::MatrixXd expect(4, 4);
    expect << 0, 0, 1, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 0, 0;
    CHECK((W - expect).norm() == 0.0);

    std::mt19937_64 rng(77);
    for (int n = 2; n <= 6; ++n)
        for (auto& c : enumerate_compositions(n, 2)) {
            WeylElement w(c);
            for (int trial = 0; trial < 5; ++trial) {
                auto y = random_y(rng, n);
                auto num = weyl_conjugate_y(w, y);
                auto closed = weyl_conjugate_y_closed(w, y);
                CHECK(rel_diff(closed, num) <= 1e-12);

                std::vector<double> a(static_cast<std::size_t>(n - 1));
                for (auto& v : a) v = std::uniform_real_distribution<double>(-2, 2)(rng);
                const double lhs = norm_power(num, a);
                const double rhs = norm_power(y, conjugate_norm_exponents(w, a));
                CHECK(std::abs(lhs / rhs - 1.0) <= 1e-12);

                const double dw = modular_delta_w(w, toric_diagonal(y));
                const double id = std::sqrt(modular_delta_y(y)) / std::sqrt(modular_delta_y(num));
                CHECK(std::abs(dw / id - 1.0) <= 1e-12);
            }
        }
}

TEST_CASE("xi coordinates") {
    WeylElement wl(Composition({1, 1, 1, 1}));
    auto xi0 = xi_values(wl, Eigen::MatrixXd::Identity(4, 4));
    for (double v : xi0) CHECK(v == doctest::Approx(1.0));

    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 100; ++trial) {
        auto u = random_ubar(rng, wl);
        auto xi = xi_values(wl, u);
        auto poly = xi_long4_polynomials(u);
        for (int k = 0; k < 3; ++k) CHECK(std::abs(xi[static_cast<std::size_t>(k)] - poly[static_cast<std::size_t>(k)]) <= 1e-10 * poly[static_cast<std::size_t>(k)]);
    }
    for (int n = 2; n <= 6; ++n)
        for (auto& c : enumerate_compositions(n, 2)) {
            WeylElement w(c);
            auto u = random_ubar(rng, w, 2.0);
            for (double v : xi_values(w, u)) CHECK(v >= 1.0 - 1e-12);
        }
    WeylElement w13(Composition({1, 3}));
    Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(4, 4);
    bad(1, 2) = 0.5;
    CHECK_THROWS_AS(xi_values(w13, bad), DomainError);
}

TEST_CASE("modular character") {
    CHECK(modular_delta_y({1.0, 1.0, 1.0}) == doctest::Approx(1.0));
    CHECK(norm_power({1.0, 1.0}, {0.5, 0.5}) == doctest::Approx(1.0));
    CHECK(1.0 / std::sqrt(modular_delta_y({4.0})) == doctest::Approx(2.0));

    std::mt19937_64 rng(31);
    for (int n = 2; n <= 6; ++n)
        for (int trial = 0; trial < 20; ++trial) {
            auto y = random_y(rng, n);
            std::vector<double> a;
            for (int j = 1; j < n; ++j) a.push_back(j * (n - j) / 2.0);
            CHECK(std::abs(1.0 / std::sqrt(modular_delta_y(y)) / norm_power(y, a) - 1.0) <= 1e-12);

            // Determinant of the linear map u -> t^{-1} u t on strictly upper entries.
            auto t = toric_diagonal(y);
            const int dim = n * (n - 1) / 2;
            Eigen::MatrixXd L = Eigen::MatrixXd::Zero(dim, dim);
            Eigen::MatrixXd T = Eigen::Map<Eigen::VectorXd>(t.data(), n).asDiagonal();
            int col = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j, ++col) {
                    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, n);
                    E(i, j) = 1.0;
                    Eigen::MatrixXd img = T.inverse() * E * T;
                    int row = 0;
                    for (int p = 0; p < n; ++p)
                        for (int q = p + 1; q < n; ++q, ++row) L(row, col) = img(p, q);
                }
            CHECK(std::abs(L.determinant() / modular_delta(t) - 1.0) <= 1e-12);
        }
}
