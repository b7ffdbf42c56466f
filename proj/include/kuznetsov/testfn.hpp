#pragma once

#include "kuznetsov/combinatorics.hpp"
#include "kuznetsov/special.hpp"
#include "kuznetsov/whittaker.hpp"

#include <string>
#include <vector>

namespace kuznetsov {

// Which Gaussian factor a routine uses: e^{Σα²/(2T²)} or e^{Σα²/(T²/2)}.
enum class GaussianWidth { TwoTSquared, HalfTSquared };

struct TestFunctionParams {
    double T = 1.0;
    int R = 1;
    int n = 2;
    TestFunctionParams() = default;
    TestFunctionParams(double T_, int R_, int n_);
};

// log of the Gaussian factor for a given convention.
cdouble log_gaussian(const LanglandsParameter& alpha, double T, GaussianWidth w);

// e^{Σα²/(2T²)} F_R(α/2) ∏_{j≠k} Γ((1+2R+α_j-α_k)/4).
cdouble p_sharp(const LanglandsParameter& alpha, const TestFunctionParams& p,
                GaussianWidth w = GaussianWidth::TwoTSquared);
cdouble log_p_sharp(const LanglandsParameter& alpha, const TestFunctionParams& p,
                    GaussianWidth w = GaussianWidth::TwoTSquared);

// |p#|² / ∏_{j≠k} Γ((1+α_j-α_k)/2) on tempered α.
double h_value(const LanglandsParameter& alpha, const TestFunctionParams& p,
               GaussianWidth w = GaussianWidth::TwoTSquared);

// Integrals over α = (it, -it) and s on Re(s) = -a, with measures dt and d(Im s):
//   p_y(y; -a) = (1/2π) ∫∫ G(α) F_R(α) Γ_R(2it)Γ_R(-2it) y^{1/2} (πy)^{-2s} W̃_{2,α}(s) ds dt
// where G is the Gaussian (default e^{Σα²/(T²/2)}). A negative a (Re(s) = -a > 0) gives p(y) itself.
MellinValue p_y(const std::vector<double>& y, const TestFunctionParams& p, const ContourShift& shift,
                const QuadratureSpec& q = {}, GaussianWidth w = GaussianWidth::HalfTSquared);

// ∫ G(α) F_R(α) Γ_R(2it)Γ_R(-2it) y^{1/2} (πy)^{2(it+δ)} Res_{s=-it-δ} W̃_{2,α}(s) dt.
// Zero when the composition is not admissible for the shift.
MellinValue residue_term(const std::vector<double>& y, const TestFunctionParams& p, const ContourShift& shift,
                         const ResidueSpec& spec, const QuadratureSpec& q = {},
                         GaussianWidth w = GaussianWidth::HalfTSquared);

struct DecompositionReport {
    std::vector<double> y;
    std::vector<cdouble> unshifted, shifted, residues;  // residues summed over δ ≤ ⌊a⌋
    cdouble kappa{0.0};                                  // least-squares fit over all y
    double max_residual = 0.0;                           // max_y |p(y) - p(y;-a) - κ·res| / |p(y)|
};
// p(y) on Re(s) = b against p(y; -a) + κ Σ_δ residue_term, one κ for the whole y grid.
DecompositionReport check_decomposition(const std::vector<double>& ys, const TestFunctionParams& p, double a,
                                        double b = 0.5, const QuadratureSpec& q = {});

// I^{(2)}(-a) = ∫ G(α) F_R(α) |Γ_R(2it)Γ_R(-2it)| ∫_{Re s=-a} |W̃_{2,α}(s)| d(Im s) dt.
MellinValue I_TR(int m, const ContourShift& shift, const TestFunctionParams& p, const QuadratureSpec& q = {},
                 GaussianWidth w = GaussianWidth::HalfTSquared);

// ∫ |p#(α)|² / ∏_{j≠k} Γ((α_j-α_k)/2) dα over tempered α with α̂_n = 0, for n = 2, 3.
MellinValue main_term(const TestFunctionParams& p, const QuadratureSpec& q = {},
                      GaussianWidth w = GaussianWidth::TwoTSquared);

struct ScalingFit {
    std::string measure;
    std::vector<double> T, values;
    double slope = 0.0;
    double intercept = 0.0;
    double predicted = 0.0;
    double residual = 0.0;  // |slope - predicted|
};

// Least-squares slope of log(value) against log(T).
ScalingFit fit_log_slope(const std::vector<double>& T, const std::vector<double>& values, double predicted,
                         std::string measure = "");

enum class ScalingMeasure { ITR, MainTerm };
// I_TR: predicted R + 3/2 - B(a) (m = 2). Main term: predicted R(2D(n) + n(n-1)) + n - 1.
ScalingFit fit_scaling(ScalingMeasure m, int n, int R, double a, const std::vector<double>& Ts,
                       const QuadratureSpec& q = {});

}  // namespace kuznetsov
