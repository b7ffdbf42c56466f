#include "kuznetsov/testfn.hpp"

#include "kuznetsov/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace kuznetsov {

namespace {

constexpr double kPi = 3.14159265358979323846;

LanglandsParameter gl2(double t) { return LanglandsParameter::tempered({t, -t}); }

// Half-width of the α window outside which every Gaussian convention is below 1e-24.
double alpha_window(double T) { return T * std::sqrt(2.0 * std::log(1e12)); }

// log[Γ_R(2it)Γ_R(-2it)], real for real t; -inf at t = 0 where the product vanishes.
double log_gamma_R_pair(double t, int R) {
    if (t == 0.0) return -HUGE_VAL;
    return (log_gamma_R(cdouble(0, 2 * t), R) + log_gamma_R(cdouble(0, -2 * t), R)).real();
}

// Distance from Re(s) = sigma to the nearest pole s = ±it - δ of W̃_{2,α}.
double pole_distance(double sigma) {
    if (sigma > 0) return sigma;
    return std::abs(sigma - std::round(sigma));
}

// |Γ(s+it)Γ(s-it)| falls like e^{-π(|u|-|t|)} past the poles, so 15 units of tail reach 1e-20.
std::vector<double> inner_breaks(double t, double h0) {
    const double c = std::abs(t), L = 15.0;
    return graded_breaks(-c - L, c + L, {-c, c}, h0, 2.0);
}

// Integrand even in t: 2∫_0^tmax.
QuadratureResult outer_t_integral(const std::function<QuadratureResult(double)>& f, double T, double tmax,
                                  bool parallel) {
    auto br = graded_breaks(0.0, tmax, {0.0}, 0.5, std::max(1.0, T / 8));
    auto r = integrate_panels_nested(f, br, std::max(1.0, T / 8), parallel);
    return {2.0 * r.value, 2.0 * r.error, r.nodes};
}

void require_n2(const TestFunctionParams& p) {
    if (p.n != 2) throw NotImplementedError("only n = 2 is supported");
}

void check_accuracy(const MellinValue& v, double tol, const char* what) {
    if (!(v.error <= tol * std::abs(v.value))) throw AccuracyError(what, v.error / std::abs(v.value));
}

}  // namespace

TestFunctionParams::TestFunctionParams(double T_, int R_, int n_) : T(T_), R(R_), n(n_) {
    if (!(T >= 1.0)) throw DomainError("TestFunctionParams: T must be >= 1");
    if (R < 1) throw DomainError("TestFunctionParams: R must be >= 1");
    if (n < 2) throw DomainError("TestFunctionParams: n must be >= 2");
}

cdouble log_gaussian(const LanglandsParameter& alpha, double T, GaussianWidth w) {
    cdouble q = 0.0;
    for (auto a : alpha.entries()) q += a * a;
    return w == GaussianWidth::TwoTSquared ? q / (2 * T * T) : q / (T * T / 2);
}

cdouble log_p_sharp(const LanglandsParameter& alpha, const TestFunctionParams& p, GaussianWidth w) {
    if (alpha.n() != p.n) throw DomainError("p_sharp: alpha has the wrong length");
    std::vector<cdouble> half;
    for (auto a : alpha.entries()) half.push_back(0.5 * a);
    cdouble acc = log_gaussian(alpha, p.T, w) + log_f_R_poly(half, p.R);
    for (int j = 0; j < alpha.n(); ++j)
        for (int k = 0; k < alpha.n(); ++k)
            if (j != k) acc += log_gamma((1.0 + 2.0 * p.R + alpha[j] - alpha[k]) / 4.0);
    return acc;
}

cdouble p_sharp(const LanglandsParameter& alpha, const TestFunctionParams& p, GaussianWidth w) {
    return std::exp(log_p_sharp(alpha, p, w));
}

double h_value(const LanglandsParameter& alpha, const TestFunctionParams& p, GaussianWidth w) {
    if (!alpha.is_tempered(1e-12)) throw DomainError("h_value: alpha must be tempered");
    double acc = 2.0 * log_p_sharp(alpha, p, w).real();
    for (int j = 0; j < alpha.n(); ++j)
        for (int k = 0; k < alpha.n(); ++k)
            if (j != k) acc -= log_gamma((1.0 + alpha[j] - alpha[k]) / 2.0).real();
    return std::exp(acc);
}

MellinValue p_y(const std::vector<double>& y, const TestFunctionParams& p, const ContourShift& shift,
                const QuadratureSpec& q, GaussianWidth w) {
    require_n2(p);
    if (y.size() != 1 || shift.values.size() != 1) throw DomainError("p_y: y and shift must have length n-1");
    if (!(y[0] > 0)) throw DomainError("p_y: y must be positive");
    const double sigma = -shift.at(1);
    const double dist = pole_distance(sigma);
    if (dist < 1e-3) throw DomainError("p_y: contour passes too close to a pole");
    const double lpy = std::log(kPi * y[0]);
    const double tmax = alpha_window(p.T);
    const double h0 = std::min(1.0, 2.0 * dist);
    auto outer = [&](double t) -> QuadratureResult {
        if (t <= 0.0) return {};
        const double base = log_gaussian(gl2(t), p.T, w).real() + log_gamma_R_pair(t, p.R) + 0.5 * std::log(y[0]);
        auto inner = [&](double u) -> cdouble {
            const cdouble s(sigma, u);
            return std::exp(base - 2.0 * s * lpy + log_gamma(s + cdouble(0, t)) + log_gamma(s - cdouble(0, t)));
        };
        auto r = integrate_panels(inner, inner_breaks(t, h0), 2.0, false);
        return {r.value / (2 * kPi), r.error / (2 * kPi), r.nodes};
    };
    auto r = outer_t_integral(outer, p.T, tmax, q.parallel);
    MellinValue out{r.value, r.error, r.nodes};
    check_accuracy(out, q.rel_tol, "p_y: tolerance not reached");
    return out;
}

MellinValue residue_term(const std::vector<double>& y, const TestFunctionParams& p, const ContourShift& shift,
                         const ResidueSpec& spec, const QuadratureSpec& q, GaussianWidth w) {
    require_n2(p);
    if (y.size() != 1 || shift.values.size() != 1) throw DomainError("residue_term: y and shift must have length 1");
    if (!(y[0] > 0)) throw DomainError("residue_term: y must be positive");
    if (spec.composition.n() != 2) throw DomainError("residue_term: composition must be of 2");
    if (!is_admissible(spec.composition, shift)) return {};
    const int delta = spec.deltas.at(0);
    if (delta > std::floor(shift.at(1))) throw DomainError("residue_term: delta exceeds floor(a)");
    const double lpy = std::log(kPi * y[0]);
    const double lfact = std::lgamma(delta + 1.0);
    // Γ_R(w)Γ_R(-w)Γ(-w-δ) with w = 2it in the entire form Γ((1/2+R+w)/2)Γ((1/2+R-w)/2)(-1)^δ w/Γ(1+w+δ);
    // its (-1)^δ cancels the one in the residue (-1)^δ/δ! of Γ(s+it) at s = -it-δ
    auto f = [&](double t) -> cdouble {
        if (t == 0.0) return 0.0;
        const cdouble wv(0, 2 * t);
        const cdouble lg = log_gamma((0.5 + p.R + wv) / 2.0) + log_gamma((0.5 + p.R - wv) / 2.0) + std::log(wv) -
                           log_gamma(1.0 + wv + static_cast<double>(delta));
        const cdouble e = log_gaussian(gl2(t), p.T, w) + 0.5 * std::log(y[0]) +
                          2.0 * (cdouble(0, t) + static_cast<double>(delta)) * lpy + lg - lfact;
        return std::exp(e);
    };
    const double tmax = alpha_window(p.T);
    auto br = graded_breaks(-tmax, tmax, {0.0}, 0.5, std::max(1.0, p.T / 8));
    auto r = integrate_panels(f, br, 1.0, q.parallel);
    MellinValue out{r.value, r.error, r.nodes};
    check_accuracy(out, q.rel_tol, "residue_term: tolerance not reached");
    return out;
}

DecompositionReport check_decomposition(const std::vector<double>& ys, const TestFunctionParams& p, double a,
                                        double b, const QuadratureSpec& q) {
    if (!(b > 0)) throw DomainError("check_decomposition: b must be positive");
    DecompositionReport rep;
    rep.y = ys;
    const ContourShift right{{-b}}, left{{a}};
    for (double y : ys) {
        rep.unshifted.push_back(p_y({y}, p, right, q).value);
        rep.shifted.push_back(p_y({y}, p, left, q).value);
        cdouble res = 0.0;
        if (a > 0)
            for (int d = 0; d <= static_cast<int>(std::floor(a)); ++d)
                res += residue_term({y}, p, left, ResidueSpec(Composition({1, 1}), {d}), q).value;
        rep.residues.push_back(res);
    }
    cdouble num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < ys.size(); ++i) {
        num += std::conj(rep.residues[i]) * (rep.unshifted[i] - rep.shifted[i]);
        den += std::norm(rep.residues[i]);
    }
    rep.kappa = den > 0 ? num / den : cdouble(0.0);
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const cdouble r = rep.unshifted[i] - rep.shifted[i] - rep.kappa * rep.residues[i];
        rep.max_residual = std::max(rep.max_residual, std::abs(r) / std::abs(rep.unshifted[i]));
    }
    return rep;
}

MellinValue I_TR(int m, const ContourShift& shift, const TestFunctionParams& p, const QuadratureSpec& q,
                 GaussianWidth w) {
    if (m != 2) throw NotImplementedError("I_TR: only m = 2 is supported");
    if (shift.values.size() != 1) throw DomainError("I_TR: shift must have length 1");
    const double sigma = -shift.at(1);
    const double dist = pole_distance(sigma);
    if (dist < 1e-3) throw DomainError("I_TR: contour passes too close to a pole");
    const double h0 = std::min(0.5, 2.0 * dist);
    const double tmax = alpha_window(p.T);
    // even in t: integrate over t > 0 and double
    auto outer = [&](double t) -> QuadratureResult {
        if (t <= 0.0) return {};
        const double base = log_gaussian(gl2(t), p.T, w).real() + log_gamma_R_pair(t, p.R);
        auto inner = [&](double u) -> cdouble {
            const cdouble s(sigma, u);
            return std::exp(base + (log_gamma(s + cdouble(0, t)) + log_gamma(s - cdouble(0, t))).real());
        };
        auto br = graded_breaks(-t - 30.0, t + 30.0, {-t, t}, h0, 1e9);
        auto r = integrate_panels(inner, br, 1e9, false);
        return {2.0 * r.value, 2.0 * r.error, r.nodes};
    };
    auto br = graded_breaks(0.0, tmax, {0.0}, 0.5, 1e9);
    auto r = integrate_panels_nested(outer, br, std::max(1.0, p.T / 8), q.parallel);
    MellinValue out{r.value, r.error, r.nodes};
    check_accuracy(out, q.rel_tol, "I_TR: tolerance not reached");
    return out;
}

MellinValue main_term(const TestFunctionParams& p, const QuadratureSpec& q, GaussianWidth w) {
    // log of 1/Γ(iτ/2)Γ(-iτ/2) = (τ/2) sinh(πτ/2)/π
    auto log_inv_denominator = [](double tau) {
        const double x = std::abs(tau);
        if (x == 0.0) return -HUGE_VAL;
        const double z = kPi * x / 2;
        const double lsinh = z + std::log1p(-std::exp(-2 * z)) - std::log(2.0);
        return std::log(x / 2) + lsinh - std::log(kPi);
    };
    const double tmax = alpha_window(p.T);
    if (p.n == 2) {
        auto f = [&](double t) -> cdouble {
            if (t == 0.0) return 0.0;
            const auto a = gl2(t);
            return std::exp(2.0 * log_p_sharp(a, p, w).real() + log_inv_denominator(2 * t));
        };
        auto br = graded_breaks(-tmax, tmax, {0.0}, 0.5, 1e9);
        auto r = integrate_panels(f, br, std::max(1.0, p.T / 8), q.parallel);
        MellinValue out{r.value, r.error, r.nodes};
        check_accuracy(out, q.rel_tol, "main_term: tolerance not reached");
        return out;
    }
    if (p.n != 3) throw NotImplementedError("main_term: only n = 2, 3");
    // α = i(t1, t2, -t1-t2); per unordered pair with τ = t_j - t_k the integrand carries
    // |1 + τ²/4|^R |Γ((1+2R+iτ)/4)|^4 (τ/2)sinh(πτ/2)/π, times the Gaussian.
    const double sig = (1.0 + 2.0 * p.R) / 4.0;
    const double gscale = (w == GaussianWidth::TwoTSquared) ? 1.0 / (p.T * p.T) : 4.0 / (p.T * p.T);
    auto pair_log = [&](double tau) {
        return p.R * std::log1p(tau * tau / 4.0) + 4.0 * log_gamma(cdouble(sig, tau / 4.0)).real() +
               log_inv_denominator(tau);
    };
    const double hmax = std::max(1.0, p.T / 4);
    auto outer = [&](double t1) -> QuadratureResult {
        auto inner = [&](double t2) -> cdouble {
            const double t3 = -t1 - t2;
            const double e = -gscale * (t1 * t1 + t2 * t2 + t3 * t3) + pair_log(t1 - t2) + pair_log(t1 - t3) +
                             pair_log(t2 - t3);
            return std::isinf(e) ? 0.0 : std::exp(e);
        };
        // graded towards the lines where a difference α_j - α_k vanishes
        auto br = graded_breaks(-tmax, tmax, {t1, -2 * t1, -t1 / 2}, 1.0, hmax);
        auto r = integrate_panels(inner, br, hmax, false);
        return {r.value, r.error, r.nodes};
    };
    auto br = graded_breaks(-tmax, tmax, {0.0}, 1.0, hmax);
    auto r = integrate_panels_nested(outer, br, hmax, q.parallel);
    MellinValue out{r.value, r.error, r.nodes};
    check_accuracy(out, q.rel_tol, "main_term: tolerance not reached");
    return out;
}

ScalingFit fit_log_slope(const std::vector<double>& T, const std::vector<double>& values, double predicted,
                         std::string measure) {
    if (T.size() != values.size()) throw DomainError("fit_log_slope: size mismatch");
    if (T.size() < 4) throw DomainError("fit_log_slope: need at least 4 points");
    for (std::size_t i = 1; i < T.size(); ++i)
        if (!(T[i] > T[i - 1])) throw DomainError("fit_log_slope: T grid must be strictly increasing");
    for (double v : values)
        if (!(v > 0)) throw DomainError("fit_log_slope: values must be positive");
    const std::size_t n = T.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += std::log(T[i]);
        sy += std::log(values[i]);
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = std::log(T[i]) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(values[i]) - my);
    }
    ScalingFit f;
    f.measure = std::move(measure);
    f.T = T;
    f.values = values;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    f.predicted = predicted;
    f.residual = std::abs(f.slope - predicted);
    return f;
}

ScalingFit fit_scaling(ScalingMeasure m, int n, int R, double a, const std::vector<double>& Ts,
                       const QuadratureSpec& q) {
    std::vector<double> vals;
    if (m == ScalingMeasure::ITR) {
        if (n != 2) throw NotImplementedError("fit_scaling: I_TR only for m = 2");
        for (double T : Ts) vals.push_back(I_TR(2, ContourShift{{a}}, TestFunctionParams(T, R, 2), q).value.real());
        return fit_log_slope(Ts, vals, R + 1.5 - bound_B(a), "I_TR");
    }
    for (double T : Ts) vals.push_back(main_term(TestFunctionParams(T, R, n), q).value.real());
    const double pred = static_cast<double>(R * (2 * degree_D(n) + n * (n - 1)) + n - 1);
    return fit_log_slope(Ts, vals, pred, "main_term");
}

}  // namespace kuznetsov
