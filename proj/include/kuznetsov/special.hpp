#pragma once

#include "kuznetsov/combinatorics.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace kuznetsov {

using cdouble = std::complex<double>;

// log Γ(z) with imaginary part reduced to (-π, π]; throws PoleError at nonpositive integers.
cdouble log_gamma(cdouble z);
cdouble complex_gamma(cdouble z);
// 1/Γ(z), entire.
cdouble rgamma(cdouble z);
// log sin(πz), stable for large |Im z|.
cdouble log_sin_pi(cdouble z);
// √(2π)|t|^{σ-1/2} e^{-π|t|/2}.
double stirling_abs_gamma(double sigma, double t);

// Γ((1/2+R+z)/2)/Γ(z); zero at nonpositive integers.
cdouble gamma_R(cdouble z, int R);
cdouble log_gamma_R(cdouble z, int R);
// Γ_R(w)Γ_R(-w)Γ(-w-δ) as a direct product (throws at the removable points), and in the
// entire form Γ((1/2+R+w)/2)Γ((1/2+R-w)/2)(-1)^δ w/Γ(1+w+δ).
cdouble gamma_R_triple(cdouble w, int delta, int R);
cdouble gamma_R_triple_entire(cdouble w, int delta, int R);

class LanglandsParameter {
public:
    LanglandsParameter() = default;
    explicit LanglandsParameter(std::vector<cdouble> entries);
    static LanglandsParameter tempered(const std::vector<double>& imag_parts);

    const std::vector<cdouble>& entries() const { return a_; }
    int n() const { return static_cast<int>(a_.size()); }
    cdouble operator[](int i) const { return a_[static_cast<std::size_t>(i)]; }  // 0-based
    cdouble hat(int k) const;                                                  // α̂_k, k = 0..n
    bool is_tempered(double tol = 1e-14) const;
    LanglandsParameter permuted(const std::vector<int>& perm) const;
    LanglandsParameter scaled(double f) const;

private:
    std::vector<cdouble> a_;
};

struct PartitionedParameter {
    LanglandsParameter base;
    Composition composition;
    std::vector<std::vector<cdouble>> blocks;
    std::vector<cdouble> beta;
};

PartitionedParameter partition_parameter(const LanglandsParameter& alpha, const Composition& c);
// |Σα_i² - Σ_ℓ(|α^(ℓ)|² + β_ℓ²/n_ℓ)|.
double quadratic_identity_residual(const PartitionedParameter& p);

// Integer coefficient vector of Σ_K α - Σ_L α, sign-normalized (first nonzero entry positive).
using LinearForm = std::vector<int>;
std::vector<LinearForm> f_R_linear_forms(int n);
cdouble log_f_R_poly(const std::vector<cdouble>& alpha, int R);
cdouble f_R_poly(const LanglandsParameter& alpha, int R);
cdouble f_R_poly(const std::vector<cdouble>& alpha, int R);

// Piecewise bound function; throws DomainError within eps of a positive integer.
double bound_B(double a, double eps = 1e-9);

struct BLemmaReport {
    bool pass = true;
    long max_simplify_checked = 0;
    long residue_checked = 0;
    long skipped = 0;
    double worst_slack = 0;
    std::string detail;
};
// max{0, 2(⌈a⌉-a)-1} - ⌈a⌉ against its piecewise right side.
double max_simplify_lhs(double a);
double max_simplify_rhs(double a);
// Both sides of the residue exponent inequality for a_1..a_{n-1}, index m, shift δ.
std::pair<double, double> residue_exponent_sides(const std::vector<double>& a, int m, int delta, double eps = 1e-9);
BLemmaReport verify_B_lemmas(const std::vector<double>& grid, int samples, std::uint64_t seed);

struct GammaDecompReport {
    bool pass = true;
    double gamma_log_err = 0;      // full product vs block/cross factorization
    double gamma_two_block_err = 0; // r = 2 form with n/(k(n-k)) α̂_k
    double fr_log_err = 0;          // F_R quotient vs remaining factors
    bool fr_multiset_ok = true;
    std::int64_t fr_remaining = 0;
    std::int64_t fr_predicted_remaining = 0;
    double quadratic_err = 0;
    std::string detail;
};
GammaDecompReport verify_gamma_decompositions(const LanglandsParameter& alpha, const Composition& c, int R);

// Σ_{k<m}Σ_iΣ_j(β_k/n_k - β_m/n_m) and Σ_j (n_j+n_{j+1})β̂_j, in exact arithmetic.
std::pair<Rational, Rational> extra_gamma_sum_sides(const std::vector<Rational>& beta, const Composition& c);

}  // namespace kuznetsov
