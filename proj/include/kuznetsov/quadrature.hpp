#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace kuznetsov {

using cdouble = std::complex<double>;

struct QuadratureResult {
    cdouble value{0.0};
    double error = 0.0;       // scaled |GL16 - GL8| summed over panels plus the tail estimate
    std::size_t nodes = 0;
};

// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
    std::vector<double> x, w;
    static const GaussRule& gl16();
    static const GaussRule& gl8();
};

// Summation that is independent of thread count: a fixed pairwise tree.
cdouble pairwise_sum(const std::vector<cdouble>& v);
double pairwise_sum(const std::vector<double>& v);

// Evaluate f at every point, in parallel when `parallel` is set; results keep input order.
std::vector<cdouble> parallel_map(const std::vector<double>& pts, const std::function<cdouble(double)>& f, bool parallel = true);

// Composite GL16 over [a, b] split at the given breakpoints into panels no wider than `width`.
// When `panel_values` is given it receives the per-panel GL16 sums in ascending order.
QuadratureResult integrate_panels(const std::function<cdouble(double)>& f, std::vector<double> breaks, double width,
                                  bool parallel = true, std::vector<cdouble>* panel_values = nullptr);

// ∫_{-∞}^{∞} f(t) dt on panels over [-L, L]; while the two edge panels carry more than rel_tol/10
// of the total, the tails [L, 2L] are added and L doubles.
struct LineOptions {
    double half_width = 30.0;
    double panel_width = 1.0;
    double rel_tol = 1e-10;
    int max_doublings = 6;
    bool parallel = true;
    std::vector<double> extra_breaks;  // extra panel boundaries, e.g. near singularities
};
QuadratureResult integrate_line(const std::function<cdouble(double)>& f, const LineOptions& opt);

// Variants for an integrand that is itself a quadrature: inner error estimates are integrated
// with the outer GL16 weights and added to the outer estimate; node counts are summed.
QuadratureResult integrate_panels_nested(const std::function<QuadratureResult(double)>& f, std::vector<double> breaks,
                                         double width, bool parallel = true,
                                         std::vector<cdouble>* panel_values = nullptr);
QuadratureResult integrate_line_nested(const std::function<QuadratureResult(double)>& f, const LineOptions& opt);

// Graded breakpoints clustering towards `center` from [lo, hi]: center ± h·2^k.
std::vector<double> graded_breaks(double lo, double hi, const std::vector<double>& centers, double h_min, double h_max);

}  // namespace kuznetsov
