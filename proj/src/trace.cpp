#include "kuznetsov/trace.hpp"

#include "kuznetsov/errors.hpp"

#include <tbb/parallel_for.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

namespace kuznetsov {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::int64_t mod(std::int64_t x, std::int64_t c) {
    const std::int64_t r = x % c;
    return r < 0 ? r + c : r;
}

// (g, u) with u·x ≡ g (mod c).
std::pair<std::int64_t, std::int64_t> ext_gcd(std::int64_t x, std::int64_t c) {
    std::int64_t r0 = c, r1 = mod(x, c), u0 = 0, u1 = 1;
    while (r1 != 0) {
        const std::int64_t q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(u0, u1) = std::make_pair(u1, u0 - q * u1);
    }
    return {r0, mod(u0, c)};
}

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t c) {
    return static_cast<std::int64_t>(static_cast<__int128>(a) * b % c);
}

std::int64_t floor_rat(const Rational& q) {
    std::int64_t f = q.numerator() / q.denominator();
    if (q.numerator() % q.denominator() != 0 && q.numerator() < 0) --f;
    return f;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

double parse_double(const std::string& s, std::size_t line) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || p != end || s.empty()) throw ParseError("not a number: '" + s + "'", line);
    return v;
}

std::vector<int> primes_up_to(int k) {
    std::vector<int> ps;
    for (int p = 2; p <= k; ++p) {
        bool prime = true;
        for (int q : ps) {
            if (q * q > p) break;
            if (p % q == 0) {
                prime = false;
                break;
            }
        }
        if (prime) ps.push_back(p);
    }
    return ps;
}

}  // namespace

std::int64_t mod_inverse(std::int64_t x, std::int64_t c) {
    if (c < 1) throw DomainError("mod_inverse: modulus must be positive");
    if (c == 1) return 0;
    auto [g, u] = ext_gcd(x, c);
    if (g != 1) throw DomainError("mod_inverse: not a unit");
    return u;
}

int divisor_count(std::int64_t c) {
    if (c < 1) throw DomainError("divisor_count: argument must be positive");
    int d = 1;
    for (std::int64_t p = 2; p * p <= c; ++p) {
        int e = 0;
        while (c % p == 0) {
            c /= p;
            ++e;
        }
        d *= e + 1;
    }
    return c > 1 ? 2 * d : d;
}

std::int64_t euler_phi(std::int64_t c) {
    if (c < 1) throw DomainError("euler_phi: argument must be positive");
    std::int64_t r = c;
    for (std::int64_t p = 2; p * p <= c; ++p) {
        if (c % p != 0) continue;
        while (c % p == 0) c /= p;
        r -= r / p;
    }
    if (c > 1) r -= r / c;
    return r;
}

namespace {

// e(k/c) for 0 <= k < c, exact whenever the cosine is one of 0, ±1/2, ±1
cdouble unit_root(std::int64_t k, std::int64_t c) {
    if ((4 * k) % c == 0) {
        static constexpr double cs[4] = {1, 0, -1, 0}, sn[4] = {0, 1, 0, -1};
        const auto q = static_cast<std::size_t>((4 * k) / c);
        return {cs[q], sn[q]};
    }
    if ((6 * k) % c == 0) {
        const double h = std::sqrt(3.0) / 2;
        static constexpr double cs[6] = {1, 0.5, -0.5, -1, -0.5, 0.5};
        const double sn[6] = {0, h, h, 0, -h, -h};
        const auto q = static_cast<std::size_t>((6 * k) / c);
        return {cs[q], sn[q]};
    }
    // symmetric reduction keeps the angle in [-π, π]
    const std::int64_t ks = 2 * k > c ? k - c : k;
    const double th = 2.0 * kPi * static_cast<double>(ks) / static_cast<double>(c);
    return {std::cos(th), std::sin(th)};
}

}  // namespace

cdouble kloosterman_gl2(std::int64_t m, std::int64_t l, std::int64_t c) {
    if (c < 1) throw DomainError("kloosterman_gl2: c must be >= 1");
    if (c == 1) return 1.0;
    const std::int64_t mm = mod(m, c), ll = mod(l, c);
    // histogram of exact phases k/c, then one exponential per residue
    std::vector<std::int64_t> count(static_cast<std::size_t>(c), 0);
    for (std::int64_t x = 1; x < c; ++x) {
        auto [g, xb] = ext_gcd(x, c);
        if (g != 1) continue;
        const std::int64_t k = (mulmod(mm, x, c) + mulmod(ll, xb, c)) % c;
        ++count[static_cast<std::size_t>(k)];
    }
    double re = 0.0, im = 0.0;
    for (std::int64_t k = 0; k < c; ++k) {
        const auto n = count[static_cast<std::size_t>(k)];
        if (n == 0) continue;
        const cdouble e = unit_root(k, c);
        re += static_cast<double>(n) * e.real();
        im += static_cast<double>(n) * e.imag();
    }
    return {re, im};
}

cdouble kloosterman(const KloostermanQuery& q) {
    if (q.moduli.empty()) throw DomainError("kloosterman: no moduli");
    for (auto c : q.moduli)
        if (c < 1) throw DomainError("kloosterman: moduli must be >= 1");
    if (q.n() != 2) throw NotImplementedError("kloosterman: only GL(2) sums are evaluated");
    return kloosterman_gl2(q.m, q.l, q.moduli[0]);
}

double kloosterman_trivial_bound(const std::vector<std::int64_t>& moduli) {
    double p = 1.0;
    for (auto c : moduli) {
        if (c < 1) throw DomainError("kloosterman_trivial_bound: moduli must be >= 1");
        p *= static_cast<double>(c);
    }
    return p;
}

WeilReport weil_check(std::int64_t c_max) {
    if (c_max < 1) throw DomainError("weil_check: c_max must be >= 1");
    std::vector<cdouble> s(static_cast<std::size_t>(c_max));
    tbb::parallel_for(std::int64_t(1), c_max + 1, [&](std::int64_t c) {
        s[static_cast<std::size_t>(c - 1)] = kloosterman_gl2(1, 1, c);
    });
    WeilReport rep;
    rep.c_max = c_max;
    for (std::int64_t c = 1; c <= c_max; ++c) {
        const cdouble v = s[static_cast<std::size_t>(c - 1)];
        const double ratio = std::abs(v) / (divisor_count(c) * std::sqrt(static_cast<double>(c)));
        if (ratio > rep.worst_ratio) {
            rep.worst_ratio = ratio;
            rep.worst_c = c;
        }
        rep.max_imag = std::max(rep.max_imag, std::abs(v.imag()));
        if (std::abs(v) > static_cast<double>(euler_phi(c)) + 1e-9) rep.trivial_ok = false;
    }
    rep.pass = rep.worst_ratio <= 1.0 + 1e-12 && rep.trivial_ok && rep.max_imag <= 1e-9;
    return rep;
}

double twisted_multiplicativity_residual(std::int64_t m, std::int64_t l, std::int64_t c1, std::int64_t c2) {
    if (std::gcd(c1, c2) != 1) throw DomainError("twisted_multiplicativity_residual: moduli must be coprime");
    const std::int64_t i2 = mod_inverse(c2, c1), i1 = mod_inverse(c1, c2);
    const cdouble lhs = kloosterman_gl2(m, l, c1 * c2);
    const cdouble rhs = kloosterman_gl2(mulmod(mod(m, c1), mulmod(i2, i2, c1), c1), l, c1) *
                        kloosterman_gl2(mulmod(mod(m, c2), mulmod(i1, i1, c2), c2), l, c2);
    return std::abs(lhs - rhs);
}

std::vector<double> choice_of_a(int n, double rho, double eps) {
    if (n < 2) throw DomainError("choice_of_a: n must be >= 2");
    std::vector<double> a;
    for (int j = 1; j < n; ++j) a.push_back(rho + j * (n - j) / 2.0 * (1.0 + eps));
    return a;
}

TailReport kloosterman_tail(double a1, std::int64_t c_max) {
    if (c_max < 4) throw DomainError("kloosterman_tail: c_max must be >= 4");
    TailReport rep;
    rep.a1 = a1;
    rep.exponent = 1.0 + 4.0 * a1;
    std::vector<double> term(static_cast<std::size_t>(c_max) + 1, 0.0);
    tbb::parallel_for(std::int64_t(1), c_max + 1, [&](std::int64_t c) {
        term[static_cast<std::size_t>(c)] = std::abs(kloosterman_gl2(1, 1, c)) / std::pow(static_cast<double>(c), rep.exponent);
    });
    double cumulative = 0.0;
    for (std::int64_t lo = 1; 2 * lo - 1 <= c_max; lo *= 2) {
        double block = 0.0, trivial = 0.0;
        for (std::int64_t c = lo; c < 2 * lo; ++c) {
            block += term[static_cast<std::size_t>(c)];
            trivial += std::pow(static_cast<double>(c), 1.0 - rep.exponent);
        }
        cumulative += block;
        rep.block_start.push_back(lo);
        rep.block_sums.push_back(block);
        rep.trivial_sums.push_back(trivial);
        rep.partial_sums.push_back(cumulative);
    }
    // the first block is the single term c = 1; ratios start from the block [2, 4)
    for (std::size_t i = 2; i < rep.block_sums.size(); ++i) {
        const double r = rep.block_sums[i] / rep.block_sums[i - 1];
        rep.ratios.push_back(r);
        rep.max_ratio = std::max(rep.max_ratio, r);
    }
    rep.convergent = !rep.ratios.empty() && rep.max_ratio < 0.9;
    return rep;
}

ExponentReport iwbounds_exponent(int n, const Rational& rho, const Composition& c) {
    if (!is_half_integer(rho)) throw DomainError("iwbounds_exponent: rho must lie in 1/2 + Z");
    if (c.n() != n || c.r() < 2) throw DomainError("iwbounds_exponent: composition of n with r >= 2 required");
    ExponentReport rep;
    rep.n = n;
    rep.rho = rho;
    rep.composition = c;
    rep.phi = phi(c);
    const Rational base = Rational((n - 1) * (n + 4), 2) - Rational((n - 1) / 2) - rho * Rational(n);
    rep.t_exponent = base - rep.phi;
    rep.lm_exponent = Rational(2) * rho + Rational(n * n + 1, 4);
    rep.rho_threshold = n % 2 ? Rational(3, 2) - Rational(3, 2 * n) : Rational(3, 2) - Rational(1, n);
    rep.slack = base - Rational(n * (n - 1), 2);
    return rep;
}

std::optional<Rational> bound_B_exact(const Rational& a) {
    if (a <= Rational(0)) return Rational(0);
    const std::int64_t f = floor_rat(a);
    const Rational frac = a - Rational(f);
    if (frac == Rational(0)) return std::nullopt;
    if (frac <= Rational(1, 2)) return Rational(f) + Rational(2) * frac;
    return Rational(f + 1);
}

AplusbReport verify_aplusb(int n, const Rational& rho, const Composition& c, Rational eps_prime, Rational epsilon) {
    if (!is_half_integer(rho)) throw DomainError("verify_aplusb: rho must lie in 1/2 + Z");
    if (c.n() != n || c.r() < 2) throw DomainError("verify_aplusb: composition of n with r >= 2 required");
    AplusbReport rep;
    rep.n = n;
    rep.rho = rho;
    rep.composition = c;
    rep.epsilon = epsilon;
    rep.rhs = Rational((n - 1) / 2) + Rational(n) * rho + phi(c);
    for (int attempt = 0; attempt < 2; ++attempt) {
        rep.eps_prime = eps_prime;
        const Rational delta = Rational(2) * eps_prime / Rational(n * n);
        std::vector<Rational> a(static_cast<std::size_t>(n + 1), Rational(0));
        for (int j = 1; j < n; ++j) a[static_cast<std::size_t>(j)] = rho + Rational(j * (n - j), 2) * (Rational(1) + delta);
        std::vector<Rational> b(static_cast<std::size_t>(n), Rational(0));
        for (int i = 1; i <= c.r(); ++i)
            for (int j = 1; j <= c.part(i); ++j) {
                const int idx = n - c.partial(i) + j;
                if (idx > n - 1) continue;  // (i, j) = (1, n_1) would be b_n = a_0
                const Rational base = a[static_cast<std::size_t>(c.partial(i - 1))] -
                                      a[static_cast<std::size_t>(c.partial(i - 1) + j)] +
                                      a[static_cast<std::size_t>(c.partial(i))];
                b[static_cast<std::size_t>(idx)] = base;
            }
        Rational lhs(0);
        bool defined = true;
        for (int j = 1; j < n; ++j) {
            auto ba = bound_B_exact(a[static_cast<std::size_t>(j)]);
            // both signs of ±δ/2 occur; keep the one with the smaller defined B
            const Rational base = b[static_cast<std::size_t>(j)];
            std::optional<Rational> bb;
            for (const Rational& cand : {base - delta / Rational(2), base + delta / Rational(2)}) {
                auto v = bound_B_exact(cand);
                if (v && (!bb || *v < *bb)) {
                    bb = v;
                    b[static_cast<std::size_t>(j)] = cand;
                }
            }
            if (!ba || !bb) {
                defined = false;
                break;
            }
            lhs += *ba + *bb;
        }
        rep.a.assign(a.begin() + 1, a.end() - 1);
        rep.b.assign(b.begin() + 1, b.end());
        if (defined) {
            rep.lhs = lhs;
            rep.pass = lhs >= rep.rhs - epsilon;
            return rep;
        }
        rep.perturbed = true;
        eps_prime = eps_prime * Rational(7, 10);
    }
    rep.pass = false;
    rep.detail = "B undefined at an integer argument after one perturbation";
    return rep;
}

double MaassFormRecord::lambda(int k) const {
    auto it = hecke.find(k);
    if (it == hecke.end())
        throw DomainError("Maass record r = " + std::to_string(r) + (source.empty() ? "" : " (" + source + ")") +
                          " has no Hecke eigenvalue for k = " + std::to_string(k));
    return it->second;
}

std::vector<std::string> MaassFormRecord::multiplicativity_violations(double tol) const {
    std::vector<std::string> out;
    for (const auto& [p, lp] : hecke)
        for (const auto& [q, lq] : hecke) {
            if (p < 2 || q <= p || std::gcd(p, q) != 1) continue;
            auto it = hecke.find(p * q);
            if (it == hecke.end()) continue;
            if (std::abs(lp * lq - it->second) > tol)
                out.push_back("r = " + std::to_string(r) + ": lambda(" + std::to_string(p) + ")lambda(" +
                              std::to_string(q) + ") != lambda(" + std::to_string(p * q) + ")");
        }
    return out;
}

cdouble hecke_divisor_sum(std::int64_t m, const std::vector<cdouble>& s, const std::vector<HeckeBlock>& blocks) {
    if (m < 1) throw DomainError("hecke_divisor_sum: m must be positive");
    if (s.size() != blocks.size() || s.empty()) throw DomainError("hecke_divisor_sum: one exponent per block");
    cdouble weighted = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        weighted += static_cast<double>(blocks[i].size()) * s[i];
        scale += std::abs(s[i]);
    }
    if (std::abs(weighted) > 1e-12 * std::max(1.0, scale)) throw DomainError("hecke_divisor_sum: Σ n_i s_i must vanish");
    // ordered factorisations m = c_1 ⋯ c_r by recursion on the first factor
    std::function<cdouble(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t rest) -> cdouble {
        auto factor = [&](std::int64_t c) {
            const double lam = blocks[i].form ? blocks[i].form->lambda(static_cast<int>(c)) : 1.0;
            return lam * std::exp(s[i] * std::log(static_cast<double>(c)));
        };
        if (i + 1 == blocks.size()) return factor(rest);
        cdouble acc = 0.0;
        for (std::int64_t c = 1; c <= rest; ++c)
            if (rest % c == 0) acc += factor(c) * rec(i + 1, rest / c);
        return acc;
    };
    return rec(0, m);
}

CuspidalSum cuspidal_sum(const std::vector<MaassFormRecord>& forms, const TestFunctionParams& p, int l, int m) {
    if (forms.empty()) throw DomainError("cuspidal_sum: no forms");
    if (p.n != 2) throw NotImplementedError("cuspidal_sum: only n = 2");
    if (l < 1 || m < 1) throw DomainError("cuspidal_sum: l and m must be positive");
    std::vector<double> w, prod;
    CuspidalSum out;
    for (const auto& f : forms) {
        if (!(f.adjoint_L > 0)) throw DomainError("cuspidal_sum: adjoint_L must be positive");
        const double lm = f.lambda(l) * f.lambda(m);
        const auto a = f.alpha();
        if (std::exp(log_gaussian(a, p.T, GaussianWidth::TwoTSquared).real()) < 1e-12) continue;
        w.push_back(h_value(a, p) / f.adjoint_L);
        prod.push_back(lm * w.back());
        ++out.used;
    }
    out.diagonal = pairwise_sum(w);
    out.off_diagonal = pairwise_sum(prod);
    out.ratio = out.diagonal > 0 ? out.off_diagonal / out.diagonal : 0.0;
    return out;
}

MaassIngest parse_maass_csv(const std::string& text, const std::string& source) {
    MaassIngest out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    std::vector<std::string> header;
    int r_col = -1, l_col = -1, src_col = -1;
    std::vector<std::pair<int, int>> lambda_cols;  // (column, k)
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        auto cells = split_commas(line);
        if (header.empty()) {
            header = cells;
            for (int i = 0; i < static_cast<int>(cells.size()); ++i) {
                const auto& h = cells[static_cast<std::size_t>(i)];
                if (h == "r") r_col = i;
                else if (h == "adjoint_L") l_col = i;
                else if (h == "source") src_col = i;
                else if (h.rfind("lambda_", 0) == 0) {
                    int k = 0;
                    const auto* b = h.data() + 7;
                    auto [ptr, ec] = std::from_chars(b, h.data() + h.size(), k);
                    if (ec != std::errc() || ptr != h.data() + h.size() || k < 1)
                        throw ParseError("bad column name '" + h + "'", lineno);
                    lambda_cols.emplace_back(i, k);
                } else {
                    throw ParseError("unknown column '" + h + "'", lineno);
                }
            }
            if (r_col < 0 || l_col < 0) throw ParseError("header must contain r and adjoint_L", lineno);
            continue;
        }
        if (cells.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(cells.size()),
                             lineno);
        MaassFormRecord rec;
        rec.r = parse_double(cells[static_cast<std::size_t>(r_col)], lineno);
        rec.adjoint_L = parse_double(cells[static_cast<std::size_t>(l_col)], lineno);
        if (!(rec.adjoint_L > 0)) throw ParseError("adjoint_L must be positive", lineno);
        rec.source = src_col >= 0 ? cells[static_cast<std::size_t>(src_col)] : source;
        rec.hecke[1] = 1.0;
        for (auto [col, k] : lambda_cols) {
            const double v = parse_double(cells[static_cast<std::size_t>(col)], lineno);
            if (k == 1 && v != 1.0) throw ParseError("lambda(1) must equal 1", lineno);
            rec.hecke[k] = v;
        }
        for (auto& w : rec.multiplicativity_violations()) out.warnings.push_back("line " + std::to_string(lineno) + ": " + w);
        out.records.push_back(std::move(rec));
    }
    return out;
}

MaassIngest ingest_maass_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("ingest_maass_csv: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_maass_csv(ss.str(), path);
}

std::vector<MaassFormRecord> synthetic_maass_fixture(int count, std::uint64_t seed, int k_max) {
    if (count < 1 || k_max < 2) throw DomainError("synthetic_maass_fixture: bad size");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(1.0, 10.0), ul(0.5, 2.0);
    std::bernoulli_distribution coin(0.5);
    const auto primes = primes_up_to(k_max);
    std::vector<MaassFormRecord> out;
    for (int j = 0; j < count; ++j) {
        MaassFormRecord rec;
        rec.r = ur(rng);
        rec.adjoint_L = ul(rng);
        rec.source = "synthetic";
        std::map<int, double> sign;
        for (int p : primes) sign[p] = coin(rng) ? 1.0 : -1.0;
        for (int k = 1; k <= k_max; ++k) {
            double v = 1.0;
            int x = k;
            for (int p : primes)
                while (x % p == 0) {
                    x /= p;
                    v *= sign[p];
                }
            rec.hecke[k] = v;
        }
        out.push_back(std::move(rec));
    }
    return out;
}

}  // namespace kuznetsov
