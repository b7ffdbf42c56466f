#include "kuznetsov/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <tbb/parallel_for.h>

#include <algorithm>
#include <cmath>

namespace kuznetsov {

namespace {

template <int N>
GaussRule make_rule() {
    using G = boost::math::quadrature::gauss<double, N>;
    GaussRule r;
    const auto& ab = G::abscissa();
    const auto& wt = G::weights();
    for (std::size_t i = 0; i < ab.size(); ++i) {
        if (ab[i] == 0.0) {
            r.x.push_back(0.0);
            r.w.push_back(wt[i]);
            continue;
        }
        r.x.push_back(ab[i]);
        r.w.push_back(wt[i]);
        r.x.push_back(-ab[i]);
        r.w.push_back(wt[i]);
    }
    return r;
}

template <typename T>
T tree_sum(const T* p, std::size_t n) {
    if (n == 0) return T{};
    if (n <= 8) {
        T s{};
        for (std::size_t i = 0; i < n; ++i) s += p[i];
        return s;
    }
    const std::size_t h = n / 2;
    return tree_sum(p, h) + tree_sum(p + h, n - h);
}

}  // namespace

const GaussRule& GaussRule::gl16() {
    static const GaussRule r = make_rule<16>();
    return r;
}

const GaussRule& GaussRule::gl8() {
    static const GaussRule r = make_rule<8>();
    return r;
}

cdouble pairwise_sum(const std::vector<cdouble>& v) { return tree_sum(v.data(), v.size()); }
double pairwise_sum(const std::vector<double>& v) { return tree_sum(v.data(), v.size()); }

std::vector<cdouble> parallel_map(const std::vector<double>& pts, const std::function<cdouble(double)>& f, bool parallel) {
    std::vector<cdouble> out(pts.size());
    if (parallel && pts.size() > 64) {
        tbb::parallel_for(std::size_t{0}, pts.size(), [&](std::size_t i) { out[i] = f(pts[i]); });
    } else {
        for (std::size_t i = 0; i < pts.size(); ++i) out[i] = f(pts[i]);
    }
    return out;
}

QuadratureResult integrate_panels_nested(const std::function<QuadratureResult(double)>& f, std::vector<double> breaks,
                                         double width, bool parallel, std::vector<cdouble>* panel_values) {
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    std::vector<std::pair<double, double>> panels;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const double a = breaks[i], b = breaks[i + 1];
        const int k = std::max(1, static_cast<int>(std::ceil((b - a) / width - 1e-12)));
        for (int j = 0; j < k; ++j) panels.emplace_back(a + (b - a) * j / k, a + (b - a) * (j + 1) / k);
    }
    const auto& g16 = GaussRule::gl16();
    const auto& g8 = GaussRule::gl8();
    const std::size_t per = g16.x.size() + g8.x.size();
    std::vector<double> pts;
    pts.reserve(panels.size() * per);
    for (auto [a, b] : panels) {
        const double c = 0.5 * (a + b), h = 0.5 * (b - a);
        for (double x : g16.x) pts.push_back(c + h * x);
        for (double x : g8.x) pts.push_back(c + h * x);
    }
    std::vector<QuadratureResult> vals(pts.size());
    if (parallel && pts.size() > 64) {
        tbb::parallel_for(std::size_t{0}, pts.size(), [&](std::size_t i) { vals[i] = f(pts[i]); });
    } else {
        for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = f(pts[i]);
    }
    std::vector<cdouble> s16(panels.size());
    std::vector<double> errs(panels.size());
    std::size_t inner_nodes = 0;
    for (const auto& v : vals) inner_nodes += v.nodes;
    for (std::size_t p = 0; p < panels.size(); ++p) {
        const double h = 0.5 * (panels[p].second - panels[p].first);
        cdouble a16 = 0, a8 = 0;
        double mag = 0, inner = 0;
        const std::size_t base = p * per;
        for (std::size_t i = 0; i < g16.x.size(); ++i) {
            a16 += g16.w[i] * vals[base + i].value;
            mag += g16.w[i] * std::abs(vals[base + i].value);
            inner += g16.w[i] * vals[base + i].error;
        }
        for (std::size_t i = 0; i < g8.x.size(); ++i) a8 += g8.w[i] * vals[base + g16.x.size() + i].value;
        s16[p] = h * a16;
        // QUADPACK-style scaling of the GL8 discrepancy to an estimate for GL16
        const double d = std::abs(s16[p] - h * a8);
        mag *= h;
        errs[p] = ((mag > 0 && d > 0) ? d * std::min(1.0, std::pow(200.0 * d / mag, 1.5)) : d) + h * inner;
    }
    if (panel_values) *panel_values = s16;
    QuadratureResult r;
    r.value = pairwise_sum(s16);
    r.error = pairwise_sum(errs);
    r.nodes = inner_nodes;
    return r;
}

QuadratureResult integrate_panels(const std::function<cdouble(double)>& f, std::vector<double> breaks, double width,
                                  bool parallel, std::vector<cdouble>* panel_values) {
    return integrate_panels_nested([&](double t) { return QuadratureResult{f(t), 0.0, 1}; }, std::move(breaks), width,
                                   parallel, panel_values);
}

QuadratureResult integrate_line_nested(const std::function<QuadratureResult(double)>& f, const LineOptions& opt) {
    double L = opt.half_width;
    std::vector<double> br{-L, L};
    for (double b : opt.extra_breaks)
        if (b > -L && b < L) br.push_back(b);
    std::vector<cdouble> pv;
    QuadratureResult total = integrate_panels_nested(f, br, opt.panel_width, opt.parallel, &pv);
    double tail = pv.empty() ? 0.0 : std::abs(pv.front()) + std::abs(pv.back());
    for (int d = 0; d < opt.max_doublings; ++d) {
        if (tail <= opt.rel_tol / 10.0 * std::abs(total.value)) break;
        auto right = integrate_panels_nested(f, {L, 2 * L}, opt.panel_width, opt.parallel);
        auto left = integrate_panels_nested(f, {-2 * L, -L}, opt.panel_width, opt.parallel);
        const cdouble add = right.value + left.value;
        total.value += add;
        total.error += right.error + left.error;
        total.nodes += right.nodes + left.nodes;
        tail = std::abs(add);
        L *= 2;
    }
    total.error += tail;
    return total;
}

QuadratureResult integrate_line(const std::function<cdouble(double)>& f, const LineOptions& opt) {
    return integrate_line_nested([&](double t) { return QuadratureResult{f(t), 0.0, 1}; }, opt);
}

std::vector<double> graded_breaks(double lo, double hi, const std::vector<double>& centers, double h_min, double h_max) {
    std::vector<double> br{lo, hi};
    for (double c : centers) {
        if (c < lo || c > hi) continue;
        br.push_back(c);
        for (double h = h_min; h < (hi - lo); h *= 2) {
            if (c + h < hi) br.push_back(c + h);
            if (c - h > lo) br.push_back(c - h);
            if (h > h_max) break;
        }
    }
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
    return br;
}

}  // namespace kuznetsov
