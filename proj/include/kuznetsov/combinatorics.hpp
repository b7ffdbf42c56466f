#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace kuznetsov {

using Rational = boost::rational<std::int64_t>;

// Ordered positive parts (n_1,...,n_r) summing to n.
class Composition {
public:
    Composition() = default;
    explicit Composition(std::vector<int> parts);

    const std::vector<int>& parts() const { return parts_; }
    int n() const { return n_; }
    int r() const { return static_cast<int>(parts_.size()); }
    int part(int i) const { return parts_.at(static_cast<std::size_t>(i - 1)); }  // 1-based
    int partial(int k) const { return hat_.at(static_cast<std::size_t>(k)); }     // n̂_k, k = 0..r
    std::string str() const;

    bool operator==(const Composition& o) const { return parts_ == o.parts_; }
    bool operator<(const Composition& o) const { return parts_ < o.parts_; }

private:
    std::vector<int> parts_;
    std::vector<int> hat_{0};
    int n_ = 0;
};

// Orders of the iterated residues at s_{n̂_i} = -α̂_{n̂_i} - δ_i.
struct ResidueSpec {
    Composition composition;
    std::vector<int> deltas;
    ResidueSpec(Composition c, std::vector<int> d);
};

// Real shift vector (a_1,...,a_{n-1}).
struct ContourShift {
    std::vector<double> values;
    int n() const { return static_cast<int>(values.size()) + 1; }
    double at(int j) const { return values.at(static_cast<std::size_t>(j - 1)); }  // 1-based
    bool non_integer_proximity(double eps) const;
};

std::vector<Composition> enumerate_compositions(int n, int min_length);
std::vector<Composition> admissible_compositions(const ContourShift& a);
bool is_admissible(const Composition& c, const ContourShift& a);

std::int64_t binomial(int n, int k);
std::int64_t factorial(int n);

// D(n) via the sum of binomial pair counts, and via the central binomial form.
std::int64_t degree_D(int n);
std::int64_t degree_D_pairs(int n);
std::int64_t degree_D_central(int n);

Rational phi(const Composition& c);

// n!/(n_1!...n_{r-1}!) as displayed; the full multinomial divides by n_r! as well.
std::int64_t kappa(const Composition& c);
std::int64_t kappa_multinomial(const Composition& c);
// Brute-force orbit size of the flag {α̂_{n̂_1},...,α̂_{n̂_{r-1}}} under S_n, n <= 8.
std::int64_t kappa_orbit_count(const Composition& c);

struct IdentityReport {
    bool pass = true;
    long checked = 0;
    std::optional<Composition> counterexample;
    std::string detail;
};

IdentityReport verify_partition_identities(int n_max);
// Both sides of the two sum identities for a single composition.
std::pair<std::int64_t, std::int64_t> pair_count_identity(const Composition& c);
std::pair<std::int64_t, std::int64_t> partial_sum_identity(const Composition& c);

// a_k = ρ + k(n-k)/2 with a_0 = a_n = 0, and b_{i,j} built from it.
std::vector<Rational> even_odd_a(int n, const Rational& rho);
std::vector<std::vector<Rational>> even_odd_b(const Composition& c, const Rational& rho);
int count_nonintegral_exponents(const Composition& c, const Rational& rho);
int even_odd_closed_form(const Composition& c);

struct EvenOddReport {
    long checked = 0;
    long mismatches = 0;
    std::optional<Composition> first_mismatch;
    Rational first_rho{0};
    int first_count = 0;
    int first_formula = 0;
};
EvenOddReport verify_even_odd(int n_max, const std::vector<Rational>& rhos);

// #{K : #K = m, #(K ∩ {1..m}) ∉ {m, m-1}} by enumeration, against C(n,m) - m(n-m) - 1.
std::int64_t count_extra_poly_subsets(int n, int m);

bool is_half_integer(const Rational& q);

}  // namespace kuznetsov
