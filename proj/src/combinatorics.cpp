#include "kuznetsov/combinatorics.hpp"

#include "kuznetsov/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <set>

namespace kuznetsov {

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw DomainError("composition must have at least one part");
    for (int p : parts_) {
        if (p < 1) throw DomainError("composition parts must be positive");
        n_ += p;
        hat_.push_back(n_);
    }
}

std::string Composition::str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(parts_[i]);
    }
    return s + ")";
}

ResidueSpec::ResidueSpec(Composition c, std::vector<int> d) : composition(std::move(c)), deltas(std::move(d)) {
    if (static_cast<int>(deltas.size()) != composition.r() - 1)
        throw DomainError("residue spec needs r-1 shift orders");
    for (int v : deltas)
        if (v < 0) throw DomainError("residue shift orders must be nonnegative");
}

bool ContourShift::non_integer_proximity(double eps) const {
    return std::all_of(values.begin(), values.end(),
                       [eps](double v) { return std::abs(v - std::round(v)) > eps; });
}

namespace {

void compose(int remaining, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (remaining == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = 1; p <= remaining; ++p) {
        cur.push_back(p);
        compose(remaining - p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Composition> enumerate_compositions(int n, int min_length) {
    if (n < 1) throw DomainError("enumerate_compositions: n must be >= 1");
    if (min_length < 1) throw DomainError("enumerate_compositions: min_length must be >= 1");
    if (n > 16) throw DomainError("enumerate_compositions: n > 16 not supported");
    std::vector<std::vector<int>> raw;
    std::vector<int> cur;
    compose(n, cur, raw);
    // Shorter compositions first, lexicographic within a length.
    std::stable_sort(raw.begin(), raw.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    std::vector<Composition> out;
    for (auto& p : raw)
        if (static_cast<int>(p.size()) >= min_length) out.emplace_back(std::move(p));
    return out;
}

bool is_admissible(const Composition& c, const ContourShift& a) {
    if (c.n() != a.n()) throw DomainError("composition size does not match shift length");
    if (c.r() < 2) return false;
    for (int i = 1; i < c.r(); ++i)
        if (!(a.at(c.partial(i)) > 0)) return false;
    return true;
}

std::vector<Composition> admissible_compositions(const ContourShift& a) {
    std::vector<Composition> out;
    if (a.values.empty()) return out;
    for (auto& c : enumerate_compositions(a.n(), 2))
        if (is_admissible(c, a)) out.push_back(c);
    return out;
}

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::int64_t factorial(int n) {
    if (n < 0 || n > 20) throw DomainError("factorial: argument out of range");
    std::int64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

std::int64_t degree_D_pairs(int n) {
    if (n < 2) throw DomainError("degree_D: n must be >= 2");
    std::int64_t s = 0;
    for (int j = 1; j <= n - 2; ++j) {
        std::int64_t b = binomial(n, j);
        s += b * (b - 1) / 2;
    }
    return s;
}

std::int64_t degree_D_central(int n) {
    if (n < 2) throw DomainError("degree_D: n must be >= 2");
    return binomial(2 * n, n) / 2 - static_cast<std::int64_t>(n) * (n - 1) / 2 - (std::int64_t{1} << (n - 1));
}

std::int64_t degree_D(int n) {
    std::int64_t a = degree_D_pairs(n);
    if (a != degree_D_central(n)) throw std::logic_error("degree_D closed forms disagree");
    return a;
}

Rational phi(const Composition& c) {
    if (c.r() < 2) throw DomainError("phi: composition must have r >= 2");
    Rational s{0};
    const std::int64_t n = c.n();
    for (int k = 1; k < c.r(); ++k) {
        std::int64_t hk = c.partial(k);
        s += Rational((c.part(k) + c.part(k + 1)) * (n - hk) * hk, 2);
    }
    return s;
}

std::int64_t kappa(const Composition& c) {
    if (c.r() < 2) throw DomainError("kappa: composition must have r >= 2");
    std::int64_t d = 1;
    for (int i = 1; i < c.r(); ++i) d *= factorial(c.part(i));
    return factorial(c.n()) / d;
}

std::int64_t kappa_multinomial(const Composition& c) {
    std::int64_t d = 1;
    for (int p : c.parts()) d *= factorial(p);
    return factorial(c.n()) / d;
}

std::int64_t kappa_orbit_count(const Composition& c) {
    if (c.n() > 8) throw DomainError("kappa_orbit_count: n > 8 is too large for brute force");
    // With generic α, σ·α̂_k is determined by the subset σ({1..k}).
    std::vector<int> perm(static_cast<std::size_t>(c.n()));
    std::iota(perm.begin(), perm.end(), 0);
    std::set<std::vector<unsigned>> orbit;
    do {
        std::vector<unsigned> flag;
        for (int i = 1; i < c.r(); ++i) {
            unsigned mask = 0;
            for (int k = 0; k < c.partial(i); ++k) mask |= 1u << perm[static_cast<std::size_t>(k)];
            flag.push_back(mask);
        }
        orbit.insert(flag);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return static_cast<std::int64_t>(orbit.size());
}

std::pair<std::int64_t, std::int64_t> pair_count_identity(const Composition& c) {
    std::int64_t lhs = 0;
    for (int k = 1; k <= c.r(); ++k) {
        for (int k2 = k + 1; k2 <= c.r(); ++k2) lhs += std::int64_t{c.part(k)} * c.part(k2);
        lhs += std::int64_t{c.part(k)} * (c.part(k) - 1) / 2;
    }
    return {lhs, std::int64_t{c.n()} * (c.n() - 1) / 2};
}

std::pair<std::int64_t, std::int64_t> partial_sum_identity(const Composition& c) {
    std::int64_t lhs = std::int64_t{c.n()} * c.n();
    for (int l = 1; l <= c.r(); ++l)
        lhs += std::int64_t{c.part(l)} * (c.part(l) - 1) / 2 - std::int64_t{c.part(l)} * c.partial(l);
    return {lhs, std::int64_t{c.n()} * (c.n() - 1) / 2};
}

IdentityReport verify_partition_identities(int n_max) {
    IdentityReport rep;
    for (int n = 1; n <= n_max; ++n) {
        for (auto& c : enumerate_compositions(n, 1)) {
            ++rep.checked;
            auto [a1, b1] = pair_count_identity(c);
            auto [a2, b2] = partial_sum_identity(c);
            if (a1 != b1 || a2 != b2) {
                rep.pass = false;
                rep.counterexample = c;
                rep.detail = "identity failed at " + c.str();
                return rep;
            }
        }
    }
    return rep;
}

bool is_half_integer(const Rational& q) { return q.denominator() == 2; }

std::vector<Rational> even_odd_a(int n, const Rational& rho) {
    std::vector<Rational> a(static_cast<std::size_t>(n + 1), Rational{0});
    for (int k = 1; k < n; ++k) a[static_cast<std::size_t>(k)] = rho + Rational(k * (n - k), 2);
    return a;
}

std::vector<std::vector<Rational>> even_odd_b(const Composition& c, const Rational& rho) {
    auto a = even_odd_a(c.n(), rho);
    std::vector<std::vector<Rational>> b;
    for (int i = 1; i <= c.r(); ++i) {
        std::vector<Rational> row;
        const auto lo = static_cast<std::size_t>(c.partial(i - 1));
        const auto hi = static_cast<std::size_t>(c.partial(i));
        for (int j = 1; j <= c.part(i); ++j) row.push_back(a[lo] - a[lo + static_cast<std::size_t>(j)] + a[hi]);
        b.push_back(std::move(row));
    }
    return b;
}

int count_nonintegral_exponents(const Composition& c, const Rational& rho) {
    if (!is_half_integer(rho)) throw DomainError("count_nonintegral_exponents: rho must lie in 1/2 + Z");
    int count = 0;
    auto a = even_odd_a(c.n(), rho);
    for (int k = 1; k < c.n(); ++k)
        if (a[static_cast<std::size_t>(k)].denominator() != 1) ++count;
    for (auto& row : even_odd_b(c, rho))
        for (auto& v : row)
            if (v.denominator() != 1) ++count;
    return count;
}

int even_odd_closed_form(const Composition& c) {
    const int n = c.n();
    const int n1 = c.part(1), nr = c.part(c.r());
    if (n % 2 == 1) return 2 * n - n1 - nr - 1;
    int s = n / 2 - 1 + n1 / 2 + nr / 2;
    for (int i = 2; i < c.r(); ++i) s += (c.part(i) + 1) / 2;
    return s;
}

EvenOddReport verify_even_odd(int n_max, const std::vector<Rational>& rhos) {
    EvenOddReport rep;
    for (int n = 2; n <= n_max; ++n)
        for (auto& c : enumerate_compositions(n, 2))
            for (auto& rho : rhos) {
                ++rep.checked;
                int got = count_nonintegral_exponents(c, rho);
                int want = even_odd_closed_form(c);
                if (got != want) {
                    if (rep.mismatches == 0) {
                        rep.first_mismatch = c;
                        rep.first_rho = rho;
                        rep.first_count = got;
                        rep.first_formula = want;
                    }
                    ++rep.mismatches;
                }
            }
    return rep;
}

std::int64_t count_extra_poly_subsets(int n, int m) {
    if (m < 1 || m >= n || n > 20) throw DomainError("count_extra_poly_subsets: need 1 <= m < n <= 20");
    std::int64_t count = 0;
    const unsigned low = (1u << m) - 1u;
    for (unsigned K = 0; K < (1u << n); ++K) {
        if (std::popcount(K) != m) continue;
        int inter = std::popcount(K & low);
        if (inter != m && inter != m - 1) ++count;
    }
    return count;
}

}  // namespace kuznetsov
