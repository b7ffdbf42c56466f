#pragma once

#include "kuznetsov/combinatorics.hpp"
#include "kuznetsov/geometry.hpp"
#include "kuznetsov/special.hpp"
#include "kuznetsov/testfn.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kuznetsov {

// Kloosterman sum request. GL(2) uses (m, l, c); for n >= 3 the moduli and Weyl element are only stored.
struct KloostermanQuery {
    std::int64_t m = 1, l = 1;
    std::vector<std::int64_t> moduli;  // (c_1, ..., c_{n-1})
    std::optional<WeylElement> w;
    int n() const { return static_cast<int>(moduli.size()) + 1; }
};

// Σ_{x mod c, gcd(x,c)=1} e(2πi(mx + l x̄)/c), phases reduced exactly mod c.
cdouble kloosterman_gl2(std::int64_t m, std::int64_t l, std::int64_t c);
cdouble kloosterman(const KloostermanQuery& q);
// δ^{1/2}(c) = c_1 ⋯ c_{n-1}, the trivial bound used for convergence.
double kloosterman_trivial_bound(const std::vector<std::int64_t>& moduli);

std::int64_t mod_inverse(std::int64_t x, std::int64_t c);
int divisor_count(std::int64_t c);
std::int64_t euler_phi(std::int64_t c);

struct WeilReport {
    std::int64_t c_max = 0;
    bool pass = true;
    double worst_ratio = 0.0;  // max |S(1,1;c)| / (d(c)√c)
    std::int64_t worst_c = 0;
    double max_imag = 0.0;     // max |Im S|
    bool trivial_ok = true;    // |S| <= φ(c)
};
WeilReport weil_check(std::int64_t c_max);

// |S(m,l;c1c2) - S(m c̄2², l; c1) S(m c̄1², l; c2)| for coprime c1, c2.
double twisted_multiplicativity_residual(std::int64_t m, std::int64_t l, std::int64_t c1, std::int64_t c2);

// a_j = ρ + j(n-j)/2 · (1+ε), j = 1..n-1.
std::vector<double> choice_of_a(int n, double rho, double eps);

struct TailReport {
    double a1 = 0.0;
    double exponent = 0.0;               // 1 + 4a_1
    std::vector<std::int64_t> block_start;  // dyadic blocks [2^k, 2^{k+1})
    std::vector<double> block_sums;      // Σ |S(1,1;c)| / c^{exponent}
    std::vector<double> trivial_sums;    // the same with |S| replaced by c
    std::vector<double> ratios;          // successive block ratios
    std::vector<double> partial_sums;    // cumulative through each block
    double max_ratio = 0.0;
    bool convergent = false;             // every ratio < 0.9
};
// n = 2 specialisation of K(c,w;a) summed over complete dyadic blocks up to c_max.
TailReport kloosterman_tail(double a1, std::int64_t c_max);

struct ExponentReport {
    int n = 0;
    Rational rho{0};
    Composition composition;
    Rational phi{0};
    Rational t_exponent{0};    // (n-1)(n+4)/2 - ⌊(n-1)/2⌋ - ρn - Φ(C), ε and R parts dropped
    Rational lm_exponent{0};   // 2ρ + (n²+1)/4
    Rational rho_threshold{0}; // 3/2 - 3/(2n) for odd n, 3/2 - 1/n for even n
    Rational slack{0};         // t_exponent at the minimal Φ = n(n-1)/2; <= 0 means the bound beats the benchmark
};
ExponentReport iwbounds_exponent(int n, const Rational& rho, const Composition& c);

// B on exact rationals; nullopt within the undefined gap at a positive integer.
std::optional<Rational> bound_B_exact(const Rational& a);

struct AplusbReport {
    int n = 0;
    Rational rho{0};
    Composition composition;
    Rational eps_prime{0};
    std::vector<Rational> a, b;  // b with the sign of ±δ/2 giving the smaller defined B
    Rational lhs{0};             // Σ (B(a_j) + B(b_j))
    Rational rhs{0};             // ⌊(n-1)/2⌋ + nρ + Φ(C)
    Rational epsilon{0};
    bool pass = false;           // lhs >= rhs - epsilon
    bool perturbed = false;
    std::string detail;
};
// ε′ = 1/10000 and ε = 1/100 unless given.
AplusbReport verify_aplusb(int n, const Rational& rho, const Composition& c, Rational eps_prime = Rational(1, 10000),
                           Rational epsilon = Rational(1, 100));

struct MaassFormRecord {
    double r = 0.0;                       // α = (ir, -ir)
    std::map<int, double> hecke;          // k -> λ(k), with λ(1) = 1
    double adjoint_L = 1.0;               // L(1, Ad φ)
    std::string source;
    LanglandsParameter alpha() const { return LanglandsParameter::tempered({r, -r}); }
    double lambda(int k) const;           // throws DomainError if absent
    // Coprime pairs (p, q) with pq stored and |λ(p)λ(q) - λ(pq)| > tol.
    std::vector<std::string> multiplicativity_violations(double tol = 1e-6) const;
};

// A block of a Hecke divisor sum: a GL(2) form (block size 2) or a unit mark (block size 1, λ ≡ 1).
struct HeckeBlock {
    std::optional<MaassFormRecord> form;
    int size() const { return form ? 2 : 1; }
};

// Σ_{c_1⋯c_r = m} ∏ λ_i(c_i) c_i^{s_i}; requires Σ n_i s_i = 0.
cdouble hecke_divisor_sum(std::int64_t m, const std::vector<cdouble>& s, const std::vector<HeckeBlock>& blocks);

struct CuspidalSum {
    double diagonal = 0.0;      // Σ h_j / L_j
    double off_diagonal = 0.0;  // Σ λ_j(l) λ_j(m) h_j / L_j
    double ratio = 0.0;
    std::size_t used = 0;       // records with Gaussian weight above 1e-12
};
CuspidalSum cuspidal_sum(const std::vector<MaassFormRecord>& forms, const TestFunctionParams& p, int l, int m);

struct MaassIngest {
    std::vector<MaassFormRecord> records;
    std::vector<std::string> warnings;
};
// Header r,lambda_2,...,lambda_K,adjoint_L (a lambda_1 column and a trailing source column are optional).
MaassIngest ingest_maass_csv(const std::string& path);
MaassIngest parse_maass_csv(const std::string& text, const std::string& source = "");

// Non-physical fixture: completely multiplicative random signs, r in [1, 10], L in [0.5, 2].
std::vector<MaassFormRecord> synthetic_maass_fixture(int count, std::uint64_t seed, int k_max = 30);

}  // namespace kuznetsov
