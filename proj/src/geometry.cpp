#include "kuznetsov/geometry.hpp"

#include "kuznetsov/errors.hpp"

#include <cmath>

namespace kuznetsov {

Eigen::MatrixXd IwasawaPoint::matrix() const { return x * toric_matrix(y); }

std::vector<double> toric_diagonal(const std::vector<double>& y) {
    const std::size_t n = y.size() + 1;
    std::vector<double> t(n, 1.0);
    for (std::size_t i = n - 1; i-- > 0;) t[i] = t[i + 1] * y[n - 2 - i];
    return t;
}

Eigen::MatrixXd toric_matrix(const std::vector<double>& y) {
    for (double v : y)
        if (!(v > 0)) throw DomainError("toric entries must be positive");
    auto t = toric_diagonal(y);
    return Eigen::Map<Eigen::VectorXd>(t.data(), static_cast<Eigen::Index>(t.size())).asDiagonal();
}

IwasawaDecomposition iwasawa_decompose(const Eigen::MatrixXd& g) {
    const Eigen::Index n = g.rows();
    if (n != g.cols() || n < 1) throw DomainError("iwasawa_decompose: square matrix required");
    // Orthogonalize the rows from the bottom up: (J g)^T = Q R.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) J(i, n - 1 - i) = 1.0;
    Eigen::MatrixXd A = (J * g).transpose();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(A);
    Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
    Eigen::MatrixXd Q = qr.householderQ();
    Eigen::MatrixXd U = J * R.transpose() * J;
    Eigen::MatrixXd K = J * Q.transpose();
    const double scale = g.norm();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(std::abs(U(i, i)) > 1e-14 * scale)) throw DomainError("iwasawa_decompose: singular matrix");
        if (U(i, i) < 0) {
            U.col(i) *= -1.0;
            K.row(i) *= -1.0;
        }
    }
    IwasawaDecomposition out;
    out.diagonal = U.diagonal();
    out.point.x = U * out.diagonal.cwiseInverse().asDiagonal();
    for (Eigen::Index i = 0; i < n; ++i) out.point.x(i, i) = 1.0;
    out.c = out.diagonal(n - 1);
    out.point.y.resize(static_cast<std::size_t>(n - 1));
    for (Eigen::Index k = 1; k < n; ++k) out.point.y[static_cast<std::size_t>(k - 1)] = out.diagonal(n - 1 - k) / out.diagonal(n - k);
    out.k = K;
    return out;
}

cdouble power_function_y(const std::vector<double>& y, const std::vector<cdouble>& alpha) {
    const int n = static_cast<int>(alpha.size());
    if (static_cast<int>(y.size()) != n - 1) throw DomainError("power_function: size mismatch");
    cdouble sum = 0;
    for (auto a : alpha) sum += a;
    if (std::abs(sum) > 1e-12 * (1.0 + std::abs(alpha[0]))) throw DomainError("power_function: alpha must sum to zero");
    cdouble log_val = 0;
    for (int i = 1; i < n; ++i) {
        const int k = n - i;
        cdouble ahat = 0;
        double rhat = 0;
        for (int j = 1; j <= k; ++j) {
            ahat += alpha[static_cast<std::size_t>(j - 1)];
            rhat += (n + 1) / 2.0 - j;
        }
        log_val += (ahat + rhat) * std::log(y[static_cast<std::size_t>(i - 1)]);
    }
    return std::exp(log_val);
}

cdouble power_function(const IwasawaPoint& p, const std::vector<cdouble>& alpha) { return power_function_y(p.y, alpha); }

double psi_phase(const Eigen::MatrixXd& x, const std::vector<long>& m) {
    if (static_cast<Eigen::Index>(m.size()) != x.rows() - 1) throw DomainError("psi_M: size mismatch");
    double s = 0;
    for (std::size_t k = 0; k < m.size(); ++k) s += static_cast<double>(m[k]) * x(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k + 1));
    return s;
}

cdouble psi_M(const Eigen::MatrixXd& x, const std::vector<long>& m) {
    double ph = psi_phase(x, m);
    ph -= std::floor(ph);
    return std::polar(1.0, 2.0 * M_PI * ph);
}

double psi_phase_twisted(const Eigen::MatrixXd& x, const std::vector<long>& m, const std::vector<int>& v) {
    std::vector<long> mv(m);
    for (std::size_t k = 0; k < m.size(); ++k) mv[k] *= v.at(k) * v.at(k + 1);
    return psi_phase(x, mv);
}

WeylElement::WeylElement(Composition c) : comp_(std::move(c)) {
    if (comp_.r() < 2) throw DomainError("Weyl element needs a composition with r >= 2");
    const int n = comp_.n();
    perm_.assign(static_cast<std::size_t>(n), 0);
    for (int i = 1; i <= comp_.r(); ++i)
        for (int j = 1; j <= comp_.part(i); ++j)
            perm_[static_cast<std::size_t>(comp_.partial(i - 1) + j - 1)] = n - comp_.partial(i) + j - 1;
}

Eigen::MatrixXd WeylElement::matrix() const {
    const int n = this->n();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) w(perm_[static_cast<std::size_t>(j)], j) = 1.0;
    return w;
}

std::vector<std::pair<int, int>> WeylElement::ubar_pattern() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n(); ++i)
        for (int j = i + 1; j < n(); ++j)
            if (perm_[static_cast<std::size_t>(i)] > perm_[static_cast<std::size_t>(j)]) out.emplace_back(i, j);
    return out;
}

bool WeylElement::in_ubar(const Eigen::MatrixXd& u, double tol) const {
    const int n = this->n();
    if (u.rows() != n || u.cols() != n) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double want_free = (i < j && perm_[static_cast<std::size_t>(i)] > perm_[static_cast<std::size_t>(j)]);
            if (want_free) continue;
            double target = (i == j) ? 1.0 : 0.0;
            if (std::abs(u(i, j) - target) > tol) return false;
        }
    return true;
}

std::vector<double> weyl_conjugate_y(const WeylElement& w, const std::vector<double>& y) {
    if (static_cast<int>(y.size()) != w.n() - 1) throw DomainError("weyl_conjugate_y: size mismatch");
    Eigen::MatrixXd W = w.matrix();
    Eigen::MatrixXd g = W * toric_matrix(y) * W.transpose();
    return iwasawa_decompose(g).point.y;
}

std::vector<double> weyl_conjugate_y_closed(const WeylElement& w, const std::vector<double>& y) {
    const Composition& c = w.composition();
    const int n = c.n();
    if (static_cast<int>(y.size()) != n - 1) throw DomainError("weyl_conjugate_y: size mismatch");
    auto Y = [&](int k) { return y[static_cast<std::size_t>(k - 1)]; };
    std::vector<double> out(static_cast<std::size_t>(n - 1));
    for (int i = 1; i <= c.r(); ++i) {
        for (int j = 1; j < c.part(i); ++j)
            out[static_cast<std::size_t>(c.partial(i - 1) + j - 1)] = Y(n - c.partial(i) + j);
        if (i < c.r()) {
            double prod = 1.0;
            for (int k = 1; k <= c.part(i) + c.part(i + 1) - 1; ++k) prod *= Y(n - c.partial(i + 1) + k);
            out[static_cast<std::size_t>(c.partial(i) - 1)] = 1.0 / prod;
        }
    }
    return out;
}

std::vector<double> conjugate_norm_exponents(const WeylElement& w, const std::vector<double>& a) {
    const Composition& c = w.composition();
    const int n = c.n();
    if (static_cast<int>(a.size()) != n - 1) throw DomainError("conjugate_norm_exponents: size mismatch");
    auto A = [&](int k) { return (k <= 0 || k >= n) ? 0.0 : a[static_cast<std::size_t>(k - 1)]; };
    std::vector<double> e(static_cast<std::size_t>(n - 1), 0.0);
    for (int i = 1; i <= c.r(); ++i)
        for (int j = 1; j <= c.part(i); ++j) {
            const int k = n - c.partial(i) + j;
            if (k >= n) continue;
            e[static_cast<std::size_t>(k - 1)] = -A(c.partial(i - 1)) + A(c.partial(i - 1) + j) - A(c.partial(i));
        }
    return e;
}

std::vector<double> xi_values(const WeylElement& w, const Eigen::MatrixXd& u) {
    if (!w.in_ubar(u, 0.0)) throw DomainError("xi_values: u is not in the unipotent subgroup attached to w");
    auto dec = iwasawa_decompose(w.matrix() * u);
    const int n = w.n();
    std::vector<double> xi(static_cast<std::size_t>(n - 1));
    double acc = 1.0;
    for (int k = 1; k < n; ++k) {
        const double d = dec.diagonal(n - k);
        acc *= d * d;
        xi[static_cast<std::size_t>(k - 1)] = acc;
    }
    return xi;
}

std::array<double, 3> xi_long4_polynomials(const Eigen::MatrixXd& u) {
    const double x12 = u(0, 1), x13 = u(0, 2), x14 = u(0, 3), x23 = u(1, 2), x24 = u(1, 3), x34 = u(2, 3);
    auto sq = [](double v) { return v * v; };
    return {1 + sq(x12) + sq(x13) + sq(x14),
            1 + sq(x23) + sq(x24) + sq(x12 * x24 - x14) + sq(x12 * x23 - x13) + sq(x13 * x24 - x14 * x23),
            1 + sq(x34) + sq(x23 * x34 - x24) + sq(x12 * x23 * x34 - x13 * x34 - x12 * x24 + x14)};
}

double modular_delta(const std::vector<double>& t) {
    const int n = static_cast<int>(t.size());
    double logd = 0;
    for (int i = 0; i < n; ++i) {
        if (!(t[static_cast<std::size_t>(i)] > 0)) throw DomainError("modular_delta: entries must be positive");
        logd += (2.0 * (i + 1) - n - 1) * std::log(t[static_cast<std::size_t>(i)]);
    }
    return std::exp(logd);
}

double modular_delta_w(const WeylElement& w, const std::vector<double>& t) {
    if (static_cast<int>(t.size()) != w.n()) throw DomainError("modular_delta_w: size mismatch");
    double logd = 0;
    for (auto [i, j] : w.ubar_pattern())
        logd += std::log(t[static_cast<std::size_t>(j)]) - std::log(t[static_cast<std::size_t>(i)]);
    return std::exp(logd);
}

double modular_delta_y(const std::vector<double>& y) { return modular_delta(toric_diagonal(y)); }

double norm_power(const std::vector<double>& y, const std::vector<double>& a) {
    if (y.size() != a.size()) throw DomainError("norm_power: size mismatch");
    double l = 0;
    for (std::size_t j = 0; j < y.size(); ++j) l += a[j] * std::log(y[j]);
    return std::exp(l);
}

}  // namespace kuznetsov
