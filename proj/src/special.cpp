#include "kuznetsov/special.hpp"

#include "kuznetsov/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <random>

namespace kuznetsov {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

bool is_nonpositive_integer(cdouble z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::round(z.real());
}

cdouble reduce_imag(cdouble v) { return {v.real(), std::remainder(v.imag(), 2.0 * kPi)}; }

cdouble lanczos_log_gamma(cdouble z) {
    const cdouble zz = z - 1.0;
    cdouble x = kLanczos[0];
    for (std::size_t k = 1; k < kLanczos.size(); ++k) x += kLanczos[k] / (zz + static_cast<double>(k));
    const cdouble t = zz + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * kPi) + (zz + 0.5) * std::log(t) - t + std::log(x);
}

// sin(πx) and cos(πx) for x in [-1, 1] with the argument folded into [-1/2, 1/2].
std::pair<double, double> sincos_pi(double x) {
    double s_sign = 1.0, c_sign = 1.0;
    if (x > 0.5) {
        x = 1.0 - x;
        c_sign = -1.0;
    } else if (x < -0.5) {
        x = -1.0 - x;
        c_sign = -1.0;
    }
    return {s_sign * std::sin(kPi * x), c_sign * std::cos(kPi * x)};
}

}  // namespace

cdouble log_sin_pi(cdouble z) {
    if (z.imag() < 0) return std::conj(log_sin_pi(std::conj(z)));
    const double x0 = z.real() - 2.0 * std::round(z.real() / 2.0);
    const double y = z.imag();
    if (y < 15.0) {
        auto [s, c] = sincos_pi(x0);
        const cdouble v(s * std::cosh(kPi * y), c * std::sinh(kPi * y));
        if (v == 0.0) throw PoleError("log_sin_pi: zero of sin", z);
        return std::log(v);
    }
    const cdouble zr(x0, y);
    const cdouble i(0, 1);
    return -i * kPi * zr + std::log(1.0 - std::exp(2.0 * i * kPi * zr)) + cdouble(-std::log(2.0), kPi / 2);
}

cdouble log_gamma(cdouble z) {
    if (is_nonpositive_integer(z)) throw PoleError("log_gamma: pole", z);
    if (z.real() >= 0.5) return reduce_imag(lanczos_log_gamma(z));
    return reduce_imag(std::log(kPi) - log_sin_pi(z) - lanczos_log_gamma(1.0 - z));
}

cdouble complex_gamma(cdouble z) { return std::exp(log_gamma(z)); }

cdouble rgamma(cdouble z) {
    if (is_nonpositive_integer(z)) return 0.0;
    return std::exp(-log_gamma(z));
}

double stirling_abs_gamma(double sigma, double t) {
    const double at = std::abs(t);
    return std::sqrt(2.0 * kPi) * std::pow(at, sigma - 0.5) * std::exp(-kPi * at / 2.0);
}

cdouble gamma_R(cdouble z, int R) {
    if (R < 1) throw DomainError("gamma_R: R must be a positive integer");
    if (is_nonpositive_integer(z)) return 0.0;
    const cdouble num = (0.5 + R + z) / 2.0;
    if (is_nonpositive_integer(num)) throw PoleError("gamma_R: pole of the numerator", z);
    return std::exp(log_gamma(num) - log_gamma(z));
}

cdouble log_gamma_R(cdouble z, int R) {
    if (R < 1) throw DomainError("gamma_R: R must be a positive integer");
    if (is_nonpositive_integer(z)) throw PoleError("log_gamma_R: zero of gamma_R", z);
    return log_gamma((0.5 + R + z) / 2.0) - log_gamma(z);
}

cdouble gamma_R_triple(cdouble w, int delta, int R) {
    if (R < 1) throw DomainError("gamma_R_triple: R must be a positive integer");
    const cdouble a = (0.5 + R + w) / 2.0, b = (0.5 + R - w) / 2.0, c = -w - static_cast<double>(delta);
    if (is_nonpositive_integer(c) || is_nonpositive_integer(w) || is_nonpositive_integer(-w))
        throw PoleError("gamma_R_triple: removable point, use the entire form", w);
    return std::exp(log_gamma(a) + log_gamma(b) + log_gamma(c) - log_gamma(w) - log_gamma(-w));
}

cdouble gamma_R_triple_entire(cdouble w, int delta, int R) {
    if (R < 1) throw DomainError("gamma_R_triple: R must be a positive integer");
    const cdouble a = (0.5 + R + w) / 2.0, b = (0.5 + R - w) / 2.0;
    const double sign = (delta % 2 == 0) ? 1.0 : -1.0;
    return std::exp(log_gamma(a) + log_gamma(b)) * sign * w * rgamma(1.0 + w + static_cast<double>(delta));
}

LanglandsParameter::LanglandsParameter(std::vector<cdouble> entries) : a_(std::move(entries)) {
    if (a_.empty()) throw DomainError("Langlands parameter must be nonempty");
    cdouble s = 0;
    double scale = 1.0;
    for (auto v : a_) {
        s += v;
        scale += std::abs(v);
    }
    if (std::abs(s) > 1e-14 * scale * static_cast<double>(a_.size()))
        throw DomainError("Langlands parameter entries must sum to zero");
}

LanglandsParameter LanglandsParameter::tempered(const std::vector<double>& imag_parts) {
    std::vector<cdouble> v;
    for (double t : imag_parts) v.emplace_back(0.0, t);
    return LanglandsParameter(std::move(v));
}

cdouble LanglandsParameter::hat(int k) const {
    cdouble s = 0;
    for (int j = 0; j < k; ++j) s += a_.at(static_cast<std::size_t>(j));
    return s;
}

bool LanglandsParameter::is_tempered(double tol) const {
    return std::all_of(a_.begin(), a_.end(), [tol](cdouble v) { return std::abs(v.real()) <= tol; });
}

LanglandsParameter LanglandsParameter::permuted(const std::vector<int>& perm) const {
    std::vector<cdouble> v;
    for (int p : perm) v.push_back(a_.at(static_cast<std::size_t>(p)));
    return LanglandsParameter(std::move(v));
}

LanglandsParameter LanglandsParameter::scaled(double f) const {
    std::vector<cdouble> v(a_);
    for (auto& x : v) x *= f;
    return LanglandsParameter(std::move(v));
}

PartitionedParameter partition_parameter(const LanglandsParameter& alpha, const Composition& c) {
    if (alpha.n() != c.n()) throw DomainError("partition_parameter: size mismatch");
    PartitionedParameter p{alpha, c, {}, {}};
    for (int l = 1; l <= c.r(); ++l) {
        const cdouble beta = alpha.hat(c.partial(l)) - alpha.hat(c.partial(l - 1));
        const double nl = c.part(l);
        std::vector<cdouble> block;
        for (int j = 1; j <= c.part(l); ++j) block.push_back(alpha[c.partial(l - 1) + j - 1] - beta / nl);
        p.blocks.push_back(std::move(block));
        p.beta.push_back(beta);
    }
    return p;
}

double quadratic_identity_residual(const PartitionedParameter& p) {
    cdouble lhs = 0, rhs = 0;
    for (auto v : p.base.entries()) lhs += v * v;
    for (std::size_t l = 0; l < p.blocks.size(); ++l) {
        for (auto v : p.blocks[l]) rhs += v * v;
        rhs += p.beta[l] * p.beta[l] / static_cast<double>(p.blocks[l].size());
    }
    return std::abs(lhs - rhs);
}

std::vector<LinearForm> f_R_linear_forms(int n) {
    if (n < 2 || n > 16) throw DomainError("f_R_linear_forms: 2 <= n <= 16 required");
    std::vector<LinearForm> out;
    for (int j = 1; j <= n - 2; ++j) {
        std::vector<unsigned> subsets;
        for (unsigned K = 0; K < (1u << n); ++K)
            if (std::popcount(K) == j) subsets.push_back(K);
        for (std::size_t a = 0; a < subsets.size(); ++a)
            for (std::size_t b = a + 1; b < subsets.size(); ++b) {
                LinearForm f(static_cast<std::size_t>(n), 0);
                for (int i = 0; i < n; ++i) f[static_cast<std::size_t>(i)] = static_cast<int>((subsets[a] >> i) & 1u) - static_cast<int>((subsets[b] >> i) & 1u);
                auto nz = std::find_if(f.begin(), f.end(), [](int v) { return v != 0; });
                if (*nz < 0)
                    for (auto& v : f) v = -v;
                out.push_back(std::move(f));
            }
    }
    return out;
}

namespace {

cdouble apply_form(const LinearForm& f, const std::vector<cdouble>& alpha) {
    cdouble s = 0;
    for (std::size_t i = 0; i < f.size(); ++i) s += static_cast<double>(f[i]) * alpha[i];
    return s;
}

cdouble log_factor(cdouble delta, int R) { return (R / 2.0) * std::log(1.0 - delta * delta); }

}  // namespace

cdouble log_f_R_poly(const std::vector<cdouble>& alpha, int R) {
    const int n = static_cast<int>(alpha.size());
    if (n < 2) throw DomainError("f_R_poly: n must be >= 2");
    cdouble s = 0;
    if (n == 2) return s;
    for (auto& f : f_R_linear_forms(n)) s += log_factor(apply_form(f, alpha), R);
    return s;
}

cdouble f_R_poly(const std::vector<cdouble>& alpha, int R) { return std::exp(log_f_R_poly(alpha, R)); }
cdouble f_R_poly(const LanglandsParameter& alpha, int R) { return f_R_poly(alpha.entries(), R); }

double bound_B(double a, double eps) {
    if (a <= 0.0) return 0.0;
    const double fl = std::floor(a);
    const double frac = a - fl;
    if (frac <= eps || frac >= 1.0 - eps) throw DomainError("bound_B: argument too close to a positive integer");
    if (frac <= 0.5) return fl + 2.0 * frac;
    return fl + 1.0;
}

double max_simplify_lhs(double a) {
    const double c = std::ceil(a);
    return std::max(0.0, 2.0 * (c - a) - 1.0) - c;
}

double max_simplify_rhs(double a) {
    const double fl = std::floor(a);
    if (a - fl > 0.5) return -std::ceil(a);
    return -fl - 2.0 * (a - fl);
}

std::pair<double, double> residue_exponent_sides(const std::vector<double>& a, int m, int delta, double eps) {
    const int n = static_cast<int>(a.size()) + 1;
    if (m < 1 || m > n - 1) throw DomainError("residue_exponent_sides: m out of range");
    auto A = [&](int j) { return a[static_cast<std::size_t>(j - 1)]; };
    const double x = A(m) - delta;
    if (!(x > 0)) throw DomainError("residue_exponent_sides: need a_m - delta > 0");
    double lhs = 0;
    for (int j = 1; j <= m - 1; ++j) lhs += bound_B(A(j) - static_cast<double>(j) / m * x, eps);
    for (int j = 1; j <= n - m - 1; ++j) lhs += bound_B(A(m + j) - static_cast<double>(n - m - j) / (n - m) * x, eps);
    double rhs = 0;
    for (int j = 1; j <= n - 1; ++j) rhs += bound_B(A(j), eps);
    rhs -= (n - 2) / 2.0 * (x + 1.0) + bound_B(A(m), eps);
    return {lhs, rhs};
}

BLemmaReport verify_B_lemmas(const std::vector<double>& grid, int samples, std::uint64_t seed) {
    BLemmaReport rep;
    rep.worst_slack = 1e300;
    for (double a : grid) {
        ++rep.max_simplify_checked;
        const double l = max_simplify_lhs(a), r = max_simplify_rhs(a);
        if (l > r + 1e-12) {
            rep.pass = false;
            rep.detail = "max-simplify violated at a=" + std::to_string(a);
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ua(0.01, 4.0);
    for (int s = 0; s < samples; ++s) {
        const int n = 2 + static_cast<int>(rng() % 5);
        std::vector<double> a(static_cast<std::size_t>(n - 1));
        for (auto& v : a) v = ua(rng);
        const int m = 1 + static_cast<int>(rng() % static_cast<unsigned>(n - 1));
        const int dmax = static_cast<int>(std::floor(a[static_cast<std::size_t>(m - 1)]));
        const int delta = static_cast<int>(rng() % static_cast<unsigned>(dmax + 1));
        if (!(a[static_cast<std::size_t>(m - 1)] - delta > 0)) {
            ++rep.skipped;
            continue;
        }
        try {
            auto [l, r] = residue_exponent_sides(a, m, delta);
            ++rep.residue_checked;
            rep.worst_slack = std::min(rep.worst_slack, l - r);
            if (l < r - 1e-12) {
                rep.pass = false;
                rep.detail = "residue exponent inequality violated";
            }
        } catch (const DomainError&) {
            ++rep.skipped;
        }
    }
    return rep;
}

GammaDecompReport verify_gamma_decompositions(const LanglandsParameter& alpha, const Composition& c, int R) {
    const int n = alpha.n();
    if (n != c.n()) throw DomainError("verify_gamma_decompositions: size mismatch");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(alpha[i] - alpha[j]) < 1e-8) throw DegenerateInputError("alpha is not in general position");
    GammaDecompReport rep;
    auto P = partition_parameter(alpha, c);
    rep.quadratic_err = quadratic_identity_residual(P);
    double sq_norm = 0;
    for (auto v : alpha.entries()) sq_norm += std::norm(v);

    auto lgR = [R](cdouble z) { return log_gamma_R(z, R); };
    double full = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) full += lgR(alpha[i] - alpha[j]).real();

    // Blocks (i != j) and cross-block pairs written through α^(ℓ) and β.
    double fact = 0;
    for (int l = 0; l < c.r(); ++l) {
        const auto& B = P.blocks[static_cast<std::size_t>(l)];
        for (std::size_t i = 0; i < B.size(); ++i)
            for (std::size_t j = 0; j < B.size(); ++j)
                if (i != j) fact += lgR(B[i] - B[j]).real();
    }
    for (int k = 0; k < c.r(); ++k)
        for (int m = k + 1; m < c.r(); ++m) {
            const cdouble shift = P.beta[static_cast<std::size_t>(k)] / static_cast<double>(c.part(k + 1)) -
                                  P.beta[static_cast<std::size_t>(m)] / static_cast<double>(c.part(m + 1));
            for (auto bk : P.blocks[static_cast<std::size_t>(k)])
                for (auto bm : P.blocks[static_cast<std::size_t>(m)]) {
                    const cdouble arg = bk - bm + shift;
                    fact += lgR(arg).real() + lgR(-arg).real();
                }
        }
    rep.gamma_log_err = std::abs(full - fact) / std::max(1.0, std::abs(full));

    if (c.r() == 2) {
        const int k = c.part(1);
        const cdouble shift = static_cast<double>(n) / (k * (n - k)) * alpha.hat(k);
        double two = 0;
        for (int l = 0; l < 2; ++l) {
            const auto& B = P.blocks[static_cast<std::size_t>(l)];
            for (std::size_t i = 0; i < B.size(); ++i)
                for (std::size_t j = 0; j < B.size(); ++j)
                    if (i != j) two += lgR(B[i] - B[j]).real();
        }
        for (auto b : P.blocks[0])
            for (auto g : P.blocks[1]) two += lgR(b - g + shift).real() + lgR(g - b - shift).real();
        rep.gamma_two_block_err = std::abs(full - two) / std::max(1.0, std::abs(full));
    }

    // F_R: block factors are a sub-multiset of the global linear forms.
    std::map<LinearForm, int> remaining;
    for (auto& f : f_R_linear_forms(n)) ++remaining[f];
    std::int64_t predicted = degree_D(n);
    double block_log = 0;
    for (int l = 1; l <= c.r(); ++l) {
        const int nl = c.part(l);
        if (nl == 1) continue;
        predicted -= degree_D(nl);
        if (nl == 2) continue;
        block_log += log_f_R_poly(P.blocks[static_cast<std::size_t>(l - 1)], R).real();
        for (auto& f : f_R_linear_forms(nl)) {
            LinearForm g(static_cast<std::size_t>(n), 0);
            for (int j = 0; j < nl; ++j) g[static_cast<std::size_t>(c.partial(l - 1) + j)] = f[static_cast<std::size_t>(j)];
            auto it = remaining.find(g);
            if (it == remaining.end() || it->second == 0) {
                rep.fr_multiset_ok = false;
                continue;
            }
            --it->second;
        }
    }
    double rest_log = 0;
    rep.fr_remaining = 0;
    for (auto& [f, cnt] : remaining) {
        rep.fr_remaining += cnt;
        for (int i = 0; i < cnt; ++i) rest_log += log_factor(apply_form(f, alpha.entries()), R).real();
    }
    rep.fr_predicted_remaining = predicted;
    const double fr_full = log_f_R_poly(alpha.entries(), R).real();
    rep.fr_log_err = std::abs(fr_full - block_log - rest_log) / std::max(1.0, std::abs(fr_full));

    rep.pass = rep.gamma_log_err <= 1e-9 && rep.gamma_two_block_err <= 1e-9 && rep.fr_log_err <= 1e-9 &&
               rep.fr_multiset_ok && rep.fr_remaining == rep.fr_predicted_remaining && rep.quadratic_err <= 1e-12 * (1.0 + sq_norm);
    if (!rep.pass) rep.detail = "decomposition mismatch for " + c.str();
    return rep;
}

std::pair<Rational, Rational> extra_gamma_sum_sides(const std::vector<Rational>& beta, const Composition& c) {
    if (static_cast<int>(beta.size()) != c.r()) throw DomainError("extra_gamma_sum_sides: size mismatch");
    Rational total{0};
    for (auto& b : beta) total += b;
    if (total != Rational(0)) throw DomainError("extra_gamma_sum_sides: beta must sum to zero");
    Rational lhs{0};
    for (int k = 1; k <= c.r(); ++k)
        for (int m = k + 1; m <= c.r(); ++m)
            lhs += Rational(c.part(k) * c.part(m)) *
                   (beta[static_cast<std::size_t>(k - 1)] / Rational(c.part(k)) - beta[static_cast<std::size_t>(m - 1)] / Rational(c.part(m)));
    Rational rhs{0}, hat{0};
    for (int j = 1; j < c.r(); ++j) {
        hat += beta[static_cast<std::size_t>(j - 1)];
        rhs += Rational(c.part(j) + c.part(j + 1)) * hat;
    }
    return {lhs, rhs};
}

}  // namespace kuznetsov
