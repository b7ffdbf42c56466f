#pragma once

#include "kuznetsov/combinatorics.hpp"
#include "kuznetsov/quadrature.hpp"
#include "kuznetsov/special.hpp"

#include <vector>

namespace kuznetsov {

// Point s = (s_1, ..., s_{n-1}) at which a Mellin transform is evaluated.
using MellinPoint = std::vector<cdouble>;

// Vertical-line quadrature controls. truncation <= 0 selects max(30, 10 + 3·max|Im α|, ...) automatically.
struct QuadratureSpec {
    double truncation = 0.0;
    int nodes_per_unit = 16;  // GL16 nodes per unit of imaginary length
    double rel_tol = 1e-8;
    bool parallel = true;
};

struct MellinValue {
    cdouble value{0.0};
    double error = 0.0;
    std::size_t nodes = 0;
};

// Γ(s+α)Γ(s-α).
cdouble mellin_gl2(cdouble alpha, cdouble s);
// Γ(s+α_1)Γ(s+α_2) for a GL(2) Langlands parameter.
cdouble mellin_gl2(const LanglandsParameter& alpha, cdouble s);

// κ_3 ∏Γ(s_1+α_i) ∏Γ(s_2-α_i) / Γ(s_1+s_2).
cdouble mellin_gl3_closed(const LanglandsParameter& alpha, const MellinPoint& s, cdouble kappa3 = 1.0);

// Contour abscissae (Re z) used by the recursion: midpoints of the pole-free strips.
std::vector<double> recursion_contours(const LanglandsParameter& alpha, const MellinPoint& s);

// One step of the recursion: W̃_m from W̃_{m-1} by (m-2)-fold vertical-line quadrature.
// For n = 4 the inner GL(3) transform uses the closed form unless `recursive_inner` is set.
MellinValue mellin_recursive(int n, const LanglandsParameter& alpha, const MellinPoint& s, const QuadratureSpec& q = {},
                             bool recursive_inner = false);

// Ratio recursion / closed form at α = 0, s = (1,1).
cdouble calibrate_kappa3(const QuadratureSpec& q = {});

class WhittakerEvaluator {
public:
    WhittakerEvaluator(LanglandsParameter alpha, QuadratureSpec q = {});
    int n() const { return alpha_.n(); }
    const LanglandsParameter& alpha() const { return alpha_; }
    const QuadratureSpec& quadrature() const { return q_; }
    // Exact for n = 2, recursion for n = 3, 4.
    MellinValue mellin(const MellinPoint& s) const;

private:
    LanglandsParameter alpha_;
    QuadratureSpec q_;
};

// Rising factorial (x)_k.
cdouble pochhammer(cdouble x, int k);

struct ShiftReport {
    int n = 0, m = 0, delta = 0;
    double residual = 0.0;  // |lhs - rhs| / |rhs|
    int degree_P = 0;       // degree of the polynomial multiplier on the shifted side
    int sigma_total = 0;    // |Σ|
    int ledger_lhs = 0;     // deg P + 2|Σ|
    int ledger_rhs = 0;     // δ·C(n, m)
    bool pass = false;
};

// n = 2: (s+α)_δ (s-α)_δ W̃(s) = W̃(s+δ).
// n = 3: B_m^(δ)(s_m, α) W̃(s) = (s_1+s_2)_δ W̃(s + δ e_m), with B_m^(δ) = ∏_{#K=m} (s_m + Σ_K α)_δ.
ShiftReport shift_identity_check(int n, int m, int delta, const LanglandsParameter& alpha, const MellinPoint& s,
                                 double tol = 1e-12);

// Residue of W̃ at s_{n̂_k} = -α̂_{n̂_k} - δ_k for each interior block boundary of the composition,
// taken in increasing order of n̂_k. `s_rest` holds the remaining free variables in order.
cdouble residue_formula(int n, const ResidueSpec& spec, const LanglandsParameter& alpha, const MellinPoint& s_rest);

// The same residue by trapezoidal quadrature on circles of the given radius around each pole.
cdouble residue_contour(int n, const ResidueSpec& spec, const LanglandsParameter& alpha, const MellinPoint& s_rest,
                        double radius = 0.1, int points = 128);

// W_{2,α}(y) by inverse Mellin transform on Re(s) = 2b.
MellinValue whittaker_value(const LanglandsParameter& alpha, double y, double b = 0.5, const QuadratureSpec& q = {});
MellinValue whittaker_value(const LanglandsParameter& alpha, const std::vector<double>& y, double b = 0.5,
                            const QuadratureSpec& q = {});

}  // namespace kuznetsov
