#include "kuznetsov/whittaker.hpp"

#include "kuznetsov/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace kuznetsov {

namespace {

constexpr double kPi = 3.14159265358979323846;
const cdouble kI(0.0, 1.0);

double max_abs_imag(const LanglandsParameter& alpha, const MellinPoint& s) {
    double m = 0.0;
    for (auto a : alpha.entries()) m = std::max(m, std::abs(a.imag()));
    for (auto v : s) m = std::max(m, std::abs(v.imag()));
    return m;
}

double truncation(const QuadratureSpec& q, const LanglandsParameter& alpha, const MellinPoint& s) {
    if (q.truncation > 0) return q.truncation;
    return std::max(30.0, 10.0 + 3.0 * max_abs_imag(alpha, s));
}

double panel_width(const QuadratureSpec& q, double pole_distance) {
    return std::min(1.0, 2.0 * pole_distance) * 16.0 / q.nodes_per_unit;
}

// Σ_j log Γ(s_j - z_{j-1} + (m-j)α_m/(m-1)) + log Γ(s_j - z_j - jα_m/(m-1)) with z_0 = z_{m-1} = 0.
cdouble log_kernel(int m, cdouble am, const MellinPoint& s, const std::vector<cdouble>& z) {
    auto zz = [&](int k) -> cdouble { return (k == 0 || k == m - 1) ? cdouble(0.0) : z[static_cast<std::size_t>(k - 1)]; };
    const double d = m - 1;
    cdouble acc = 0.0;
    for (int j = 1; j <= m - 1; ++j) {
        const cdouble sj = s[static_cast<std::size_t>(j - 1)];
        acc += log_gamma(sj - zz(j - 1) + static_cast<double>(m - j) * am / d);
        acc += log_gamma(sj - zz(j) - static_cast<double>(j) * am / d);
    }
    return acc;
}

LanglandsParameter beta_of(const LanglandsParameter& alpha) {
    const int m = alpha.n();
    const cdouble am = alpha[m - 1];
    std::vector<cdouble> b;
    for (int i = 0; i < m - 1; ++i) b.push_back(alpha[i] + am / static_cast<double>(m - 1));
    return LanglandsParameter(b);
}

// Largest Re(-Σ_K β) over subsets of size k: left edge of the pole-free strip for z_k.
double left_edge(const LanglandsParameter& beta, int k) {
    const int n = beta.n();
    double best = -1e300;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != k) continue;
        cdouble sum = 0.0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) sum += beta[i];
        best = std::max(best, -sum.real());
    }
    return best;
}

cdouble log_mellin_gl3_closed(const LanglandsParameter& a, cdouble s1, cdouble s2) {
    cdouble acc = 0.0;
    for (int i = 0; i < 3; ++i) acc += log_gamma(s1 + a[i]) + log_gamma(s2 - a[i]);
    return acc - log_gamma(s1 + s2);
}

void require_n(const LanglandsParameter& alpha, int n) {
    if (alpha.n() != n) throw DomainError("Langlands parameter has the wrong length");
}

void require_general_position(const LanglandsParameter& alpha) {
    for (int j = 0; j < alpha.n(); ++j)
        for (int k = 0; k < alpha.n(); ++k) {
            if (j == k) continue;
            const cdouble d = alpha[j] - alpha[k];
            if (std::abs(d.imag()) < 1e-9 && std::abs(d.real() - std::round(d.real())) < 1e-9)
                throw DegenerateInputError("alpha is not in general position: alpha_j - alpha_k is an integer");
        }
}

double sign_factorial(int d) {
    double f = 1.0;
    for (int i = 2; i <= d; ++i) f *= i;
    return ((d % 2) ? -1.0 : 1.0) / f;
}

cdouble circle_residue(const std::function<cdouble(cdouble)>& f, cdouble center, double radius, int points) {
    std::vector<cdouble> terms(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k) {
        const cdouble e = std::exp(kI * (2.0 * kPi * k / points));
        terms[static_cast<std::size_t>(k)] = f(center + radius * e) * radius * e;
    }
    return pairwise_sum(terms) / static_cast<double>(points);
}

}  // namespace

cdouble mellin_gl2(cdouble alpha, cdouble s) {
    try {
        return std::exp(log_gamma(s + alpha) + log_gamma(s - alpha));
    } catch (const PoleError&) {
        throw PoleError("mellin_gl2: s is a pole", s);
    }
}

cdouble mellin_gl2(const LanglandsParameter& alpha, cdouble s) {
    require_n(alpha, 2);
    try {
        return std::exp(log_gamma(s + alpha[0]) + log_gamma(s + alpha[1]));
    } catch (const PoleError&) {
        throw PoleError("mellin_gl2: s is a pole", s);
    }
}

cdouble mellin_gl3_closed(const LanglandsParameter& alpha, const MellinPoint& s, cdouble kappa3) {
    require_n(alpha, 3);
    if (s.size() != 2) throw DomainError("mellin_gl3_closed: s must have length 2");
    cdouble acc = 0.0;
    try {
        for (int i = 0; i < 3; ++i) acc += log_gamma(s[0] + alpha[i]) + log_gamma(s[1] - alpha[i]);
    } catch (const PoleError& e) {
        throw PoleError("mellin_gl3_closed: pole", e.location());
    }
    return kappa3 * std::exp(acc) * rgamma(s[0] + s[1]);
}

std::vector<double> recursion_contours(const LanglandsParameter& alpha, const MellinPoint& s) {
    const int m = alpha.n();
    if (m < 3 || m > 4) throw DomainError("recursion_contours: n must be 3 or 4");
    if (static_cast<int>(s.size()) != m - 1) throw DomainError("recursion_contours: s has the wrong length");
    const cdouble am = alpha[m - 1];
    const LanglandsParameter beta = beta_of(alpha);
    const double d = m - 1;
    std::vector<double> eps;
    for (int k = 1; k <= m - 2; ++k) {
        const double right = std::min((s[static_cast<std::size_t>(k)] + static_cast<double>(m - k - 1) * am / d).real(),
                                      (s[static_cast<std::size_t>(k - 1)] - static_cast<double>(k) * am / d).real());
        const double left = left_edge(beta, k);
        if (!(left < right)) throw DomainError("recursion_contours: no pole-free strip for the inner contour");
        eps.push_back(0.5 * (left + right));
    }
    return eps;
}

namespace {

MellinValue recursion_impl(int n, const LanglandsParameter& alpha, const MellinPoint& s, const QuadratureSpec& q,
                           bool recursive_inner, bool enforce_tol) {
    if (n != 3 && n != 4) throw DomainError("mellin_recursive: n must be 3 or 4");
    require_n(alpha, n);
    if (static_cast<int>(s.size()) != n - 1) throw DomainError("mellin_recursive: s has the wrong length");
    if (!(q.rel_tol > 0)) throw DomainError("mellin_recursive: tolerance must be positive");
    const auto eps = recursion_contours(alpha, s);
    const LanglandsParameter beta = beta_of(alpha);
    const cdouble am = alpha[n - 1];
    const double L = truncation(q, alpha, s);

    // Distance from each contour to the nearest pole.
    std::vector<double> dist;
    {
        const double d = n - 1;
        for (int k = 1; k <= n - 2; ++k) {
            const double right =
                std::min((s[static_cast<std::size_t>(k)] + static_cast<double>(n - k - 1) * am / d).real(),
                         (s[static_cast<std::size_t>(k - 1)] - static_cast<double>(k) * am / d).real());
            dist.push_back(right - eps[static_cast<std::size_t>(k - 1)]);
        }
    }

    LineOptions lo;
    lo.half_width = L;
    lo.rel_tol = q.rel_tol;
    lo.parallel = q.parallel;

    MellinValue out;
    if (n == 3) {
        lo.panel_width = panel_width(q, dist[0]);
        auto f = [&](double t) -> cdouble {
            const cdouble z(eps[0], t);
            const cdouble lk = log_kernel(3, am, s, {z});
            return std::exp(lk + log_gamma(z + beta[0]) + log_gamma(z + beta[1])) / (2.0 * kPi);
        };
        auto r = integrate_line(f, lo);
        out = {r.value, r.error, r.nodes};
    } else {
        LineOptions li = lo;
        li.panel_width = panel_width(q, dist[1]);
        li.parallel = false;
        QuadratureSpec qi = q;
        qi.parallel = false;
        auto outer = [&](double t1) -> QuadratureResult {
            const cdouble z1(eps[0], t1);
            if (!recursive_inner) {
                // factors that depend on z_1 only
                cdouble c1 = log_gamma(s[0] + am) + log_gamma(s[0] - z1 - am / 3.0) +
                             log_gamma(s[1] - z1 + 2.0 * am / 3.0) + log_gamma(s[2] - am);
                for (int i = 0; i < 3; ++i) c1 += log_gamma(z1 + beta[i]);
                return integrate_line(
                    [&](double t2) {
                        const cdouble z2(eps[1], t2);
                        cdouble acc = c1 + log_gamma(s[1] - z2 - 2.0 * am / 3.0) + log_gamma(s[2] - z2 + am / 3.0) -
                                      log_gamma(z1 + z2);
                        for (int i = 0; i < 3; ++i) acc += log_gamma(z2 - beta[i]);
                        return std::exp(acc) / (4.0 * kPi * kPi);
                    },
                    li);
            }
            return integrate_line_nested(
                [&](double t2) {
                    const cdouble z2(eps[1], t2);
                    const auto w3 = recursion_impl(3, beta, {z1, z2}, qi, false, false);
                    const cdouble k = std::exp(log_kernel(4, am, s, {z1, z2})) / (4.0 * kPi * kPi);
                    return QuadratureResult{k * w3.value, std::abs(k) * w3.error, w3.nodes};
                },
                li);
        };
        lo.panel_width = panel_width(q, dist[0]);
        auto r = integrate_line_nested(outer, lo);
        out = {r.value, r.error, r.nodes};
    }
    if (enforce_tol && !(out.error <= q.rel_tol * std::abs(out.value)))
        throw AccuracyError("mellin_recursive: tolerance not reached", out.error / std::abs(out.value));
    return out;
}

}  // namespace

MellinValue mellin_recursive(int n, const LanglandsParameter& alpha, const MellinPoint& s, const QuadratureSpec& q,
                             bool recursive_inner) {
    return recursion_impl(n, alpha, s, q, recursive_inner, true);
}

cdouble calibrate_kappa3(const QuadratureSpec& q) {
    const LanglandsParameter zero(std::vector<cdouble>{0.0, 0.0, 0.0});
    const MellinPoint s{1.0, 1.0};
    return mellin_recursive(3, zero, s, q).value / mellin_gl3_closed(zero, s, 1.0);
}

WhittakerEvaluator::WhittakerEvaluator(LanglandsParameter alpha, QuadratureSpec q) : alpha_(std::move(alpha)), q_(q) {
    if (alpha_.n() < 2 || alpha_.n() > 4) throw DomainError("WhittakerEvaluator: n must be 2, 3 or 4");
    if (!(q_.rel_tol > 0)) throw DomainError("WhittakerEvaluator: tolerance must be positive");
    if (q_.nodes_per_unit < 1) throw DomainError("WhittakerEvaluator: nodes_per_unit must be positive");
}

MellinValue WhittakerEvaluator::mellin(const MellinPoint& s) const {
    if (static_cast<int>(s.size()) != n() - 1) throw DomainError("MellinPoint length does not match n");
    if (n() == 2) return {mellin_gl2(alpha_, s[0]), 0.0, 0};
    return mellin_recursive(n(), alpha_, s, q_);
}

cdouble pochhammer(cdouble x, int k) {
    cdouble p = 1.0;
    for (int i = 0; i < k; ++i) p *= x + static_cast<double>(i);
    return p;
}

ShiftReport shift_identity_check(int n, int m, int delta, const LanglandsParameter& alpha, const MellinPoint& s,
                                 double tol) {
    if (n != 2 && n != 3) throw DomainError("shift_identity_check: n must be 2 or 3");
    if (m < 1 || m > n - 1) throw DomainError("shift_identity_check: need 1 <= m <= n-1");
    if (delta < 0) throw DomainError("shift_identity_check: delta must be nonnegative");
    require_n(alpha, n);
    ShiftReport r;
    r.n = n;
    r.m = m;
    r.delta = delta;
    r.sigma_total = delta;
    cdouble lhs, rhs;
    if (n == 2) {
        r.degree_P = 0;
        lhs = pochhammer(s[0] + alpha[0], delta) * pochhammer(s[0] + alpha[1], delta) * mellin_gl2(alpha, s[0]);
        rhs = mellin_gl2(alpha, s[0] + static_cast<double>(delta));
    } else {
        r.degree_P = delta;
        cdouble B = 1.0;
        MellinPoint shifted = s;
        for (int i = 0; i < 3; ++i) B *= pochhammer(m == 1 ? s[0] + alpha[i] : s[1] - alpha[i], delta);
        shifted[static_cast<std::size_t>(m - 1)] += static_cast<double>(delta);
        lhs = B * mellin_gl3_closed(alpha, s);
        rhs = pochhammer(s[0] + s[1], delta) * mellin_gl3_closed(alpha, shifted);
    }
    r.residual = std::abs(lhs - rhs) / std::abs(rhs);
    r.ledger_lhs = r.degree_P + 2 * r.sigma_total;
    r.ledger_rhs = delta * static_cast<int>(binomial(n, m));
    r.pass = r.residual <= tol && r.ledger_lhs == r.ledger_rhs;
    return r;
}

cdouble residue_formula(int n, const ResidueSpec& spec, const LanglandsParameter& alpha, const MellinPoint& s_rest) {
    if (n != 2 && n != 3) throw NotImplementedError("residue_formula: only n = 2, 3");
    require_n(alpha, n);
    if (spec.composition.n() != n) throw DomainError("residue_formula: composition does not match n");
    for (int d : spec.deltas)
        if (d < 0 || d > 3) throw DomainError("residue_formula: delta must lie in 0..3");
    require_general_position(alpha);
    const auto& parts = spec.composition.parts();
    const auto& a = alpha;
    if (n == 2) {
        const int d = spec.deltas.at(0);
        return sign_factorial(d) * complex_gamma(a[1] - a[0] - static_cast<double>(d));
    }
    if (parts == std::vector<int>{1, 2}) {
        if (s_rest.size() != 1) throw DomainError("residue_formula: expected s_2");
        const int d = spec.deltas.at(0);
        const double dd = d;
        const cdouble s2 = s_rest[0];
        return sign_factorial(d) * complex_gamma(a[1] - a[0] - dd) * complex_gamma(a[2] - a[0] - dd) *
               complex_gamma(s2 - a[1]) * complex_gamma(s2 - a[2]) * pochhammer(s2 - a[0] - dd, d);
    }
    if (parts == std::vector<int>{2, 1}) {
        if (s_rest.size() != 1) throw DomainError("residue_formula: expected s_1");
        const int d = spec.deltas.at(0);
        const double dd = d;
        const cdouble s1 = s_rest[0];
        return sign_factorial(d) * complex_gamma(a[2] - a[0] - dd) * complex_gamma(a[2] - a[1] - dd) *
               complex_gamma(s1 + a[0]) * complex_gamma(s1 + a[1]) * pochhammer(s1 + a[2] - dd, d);
    }
    if (!s_rest.empty()) throw DomainError("residue_formula: no free variables remain");
    const int d1 = spec.deltas.at(0), d2 = spec.deltas.at(1);
    const double e1 = d1, e2 = d2;
    return sign_factorial(d1) * complex_gamma(a[1] - a[0] - e1) * complex_gamma(a[2] - a[0] - e1) *
           sign_factorial(d2) * complex_gamma(a[2] - a[1] - e2) * pochhammer(a[2] - a[0] - e1 - e2, d1);
}

cdouble residue_contour(int n, const ResidueSpec& spec, const LanglandsParameter& alpha, const MellinPoint& s_rest,
                        double radius, int points) {
    if (n != 2 && n != 3) throw NotImplementedError("residue_contour: only n = 2, 3");
    require_n(alpha, n);
    const auto& parts = spec.composition.parts();
    const auto& a = alpha;
    if (n == 2) {
        const cdouble c = -a[0] - static_cast<double>(spec.deltas.at(0));
        return circle_residue([&](cdouble s) { return mellin_gl2(alpha, s); }, c, radius, points);
    }
    if (parts == std::vector<int>{1, 2}) {
        const cdouble c = -a[0] - static_cast<double>(spec.deltas.at(0));
        return circle_residue([&](cdouble s1) { return mellin_gl3_closed(alpha, {s1, s_rest.at(0)}); }, c, radius,
                              points);
    }
    if (parts == std::vector<int>{2, 1}) {
        const cdouble c = a[2] - static_cast<double>(spec.deltas.at(0));
        return circle_residue([&](cdouble s2) { return mellin_gl3_closed(alpha, {s_rest.at(0), s2}); }, c, radius,
                              points);
    }
    const cdouble c1 = -a[0] - static_cast<double>(spec.deltas.at(0));
    const cdouble c2 = a[2] - static_cast<double>(spec.deltas.at(1));
    auto g = [&](cdouble s2) {
        return circle_residue([&](cdouble s1) { return mellin_gl3_closed(alpha, {s1, s2}); }, c1, radius, points);
    };
    return circle_residue(g, c2, radius, points);
}

MellinValue whittaker_value(const LanglandsParameter& alpha, double y, double b, const QuadratureSpec& q) {
    require_n(alpha, 2);
    if (!(y > 0)) throw DomainError("whittaker_value: y must be positive");
    if (!(b > 0)) throw DomainError("whittaker_value: b must be positive");
    // s = 2(b + iu): (1/2πi) ds = du/π, and W̃_{2,α/2}(s/2) = Γ(b+iu+α_1/2)Γ(b+iu+α_2/2).
    const double dist = b - 0.5 * std::max(alpha[0].real(), alpha[1].real());
    if (!(dist > 0)) throw DomainError("whittaker_value: contour is left of a pole");
    const double lpy = std::log(kPi * y);
    auto f = [&](double u) -> cdouble {
        const cdouble w(b, u);
        return std::exp(-2.0 * w * lpy + log_gamma(w + 0.5 * alpha[0]) + log_gamma(w + 0.5 * alpha[1])) *
               (0.5 * std::sqrt(y) / kPi);
    };
    LineOptions lo;
    lo.half_width = truncation(q, alpha, {});
    lo.panel_width = panel_width(q, dist);
    lo.rel_tol = q.rel_tol;
    lo.parallel = q.parallel;
    auto r = integrate_line(f, lo);
    MellinValue out{r.value, r.error, r.nodes};
    if (!(out.error <= q.rel_tol * std::abs(out.value)))
        throw AccuracyError("whittaker_value: tolerance not reached", out.error / std::abs(out.value));
    return out;
}

MellinValue whittaker_value(const LanglandsParameter& alpha, const std::vector<double>& y, double b,
                            const QuadratureSpec& q) {
    if (y.size() != 1) throw NotImplementedError("whittaker_value: only n = 2");
    return whittaker_value(alpha, y[0], b, q);
}

}  // namespace kuznetsov
