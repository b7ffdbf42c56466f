#include "kuznetsov/suite.hpp"

#include "kuznetsov/combinatorics.hpp"
#include "kuznetsov/errors.hpp"
#include "kuznetsov/geometry.hpp"
#include "kuznetsov/special.hpp"
#include "kuznetsov/trace.hpp"

#include <json.hpp>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <tbb/global_control.h>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <memory>
#include <numeric>
#include <random>
#include <sstream>

namespace kuznetsov {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double x = 0.0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size() || v.empty())
        throw DomainError("config: " + key + " expects a number, got '" + v + "'");
    return x;
}

long long to_int(const std::string& key, const std::string& v) {
    long long x = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || p != v.data() + v.size() || v.empty())
        throw DomainError("config: " + key + " expects an integer, got '" + v + "'");
    return x;
}

std::string fmt(double x) {
    std::ostringstream ss;
    ss << std::setprecision(17) << x;
    return ss.str();
}

struct Outcome {
    bool pass = false;
    double max_error = 0.0;
    std::string detail;
};

struct Verifier {
    std::string name, anchor, inputs;
    std::function<Outcome(const RunConfig&)> run;
};

double rel(cdouble a, cdouble b) { return std::abs(a - b) / std::abs(b); }

LanglandsParameter random_tempered(std::mt19937_64& rng, int n, double spread) {
    std::uniform_real_distribution<double> u(-spread, spread);
    std::vector<double> t(static_cast<std::size_t>(n));
    double s = 0;
    for (int i = 0; i + 1 < n; ++i) {
        t[static_cast<std::size_t>(i)] = u(rng);
        s += t[static_cast<std::size_t>(i)];
    }
    t.back() = -s;
    return LanglandsParameter::tempered(t);
}

std::vector<double> random_y(std::mt19937_64& rng, int n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> y(static_cast<std::size_t>(n - 1));
    for (auto& v : y) v = std::exp(u(rng));
    return y;
}

Eigen::MatrixXd random_ubar(std::mt19937_64& rng, const WeylElement& w, double scale) {
    std::normal_distribution<double> g(0.0, scale);
    Eigen::MatrixXd u = Eigen::MatrixXd::Identity(w.n(), w.n());
    for (auto [i, j] : w.ubar_pattern()) u(i, j) = g(rng);
    return u;
}

// ---- combinatorics

std::vector<Verifier> combinatorics_verifiers() {
    std::vector<Verifier> v;
    v.push_back({"degree_D_dual_forms", "degree-D.closed-forms", "n=2..12", [](const RunConfig&) {
                     Outcome o;
                     long bad = 0;
                     for (int n = 2; n <= 12; ++n) bad += degree_D_pairs(n) != degree_D_central(n);
                     bad += degree_D(2) != 0;
                     bad += degree_D(3) != 3;
                     bad += degree_D(4) != 21;
                     o.pass = bad == 0;
                     o.max_error = static_cast<double>(bad);
                     o.detail = "D(2..4) = 0, 3, 21; " + std::to_string(bad) + " mismatches";
                     return o;
                 }});
    v.push_back({"partition_identities", "composition.pair-and-partial-sum-identities", "n<=10", [](const RunConfig&) {
                     const auto r = verify_partition_identities(10);
                     Outcome o;
                     o.pass = r.pass;
                     o.detail = std::to_string(r.checked) + " compositions" +
                                (r.counterexample ? ", counterexample " + r.counterexample->str() : "");
                     return o;
                 }});
    v.push_back({"phi_invariance_and_minimum", "phi.permutation-invariance-and-minimum", "n=2..9", [](const RunConfig&) {
                     Outcome o;
                     long bad = 0, checked = 0;
                     for (int n = 2; n <= 9; ++n) {
                         Rational best(1000000);
                         for (auto& c : enumerate_compositions(n, 2)) {
                             auto p = c.parts();
                             std::sort(p.begin(), p.end());
                             const Rational val = phi(c);
                             do {
                                 bad += phi(Composition(p)) != val;
                                 ++checked;
                             } while (std::next_permutation(p.begin(), p.end()));
                             best = std::min(best, val);
                         }
                         bad += best != Rational(n * (n - 1), 2);
                     }
                     o.pass = bad == 0;
                     o.max_error = static_cast<double>(bad);
                     o.detail = std::to_string(checked) + " permutations";
                     return o;
                 }});
    v.push_back({"phi_refinement", "phi.refinement-increment", "500 random splits, n=3..9", [](const RunConfig& cfg) {
                     std::mt19937_64 rng(cfg.seed + 1);
                     long bad = 0;
                     for (int trial = 0; trial < 500; ++trial) {
                         const int n = 3 + static_cast<int>(rng() % 7);
                         auto cs = enumerate_compositions(n, 2);
                         auto c = cs[rng() % cs.size()];
                         std::vector<int> idx;
                         for (int k = 0; k < c.r(); ++k)
                             if (c.parts()[static_cast<std::size_t>(k)] >= 2) idx.push_back(k);
                         if (idx.empty()) continue;
                         const int k = idx[rng() % idx.size()];
                         const int nk = c.parts()[static_cast<std::size_t>(k)];
                         const int a = 1 + static_cast<int>(rng() % static_cast<unsigned>(nk - 1));
                         auto p = c.parts();
                         p[static_cast<std::size_t>(k)] = a;
                         p.insert(p.begin() + k + 1, nk - a);
                         bad += phi(Composition(p)) - phi(c) != Rational(nk * a * (nk - a), 2);
                     }
                     return Outcome{bad == 0, static_cast<double>(bad), std::to_string(bad) + " mismatches"};
                 }});
    v.push_back({"even_odd_counts", "even-odd.non-integral-count", "n<=10, rho in {-1/2,1/2,3/2,5/2}",
                 [](const RunConfig&) {
                     const auto r = verify_even_odd(10, {Rational(-1, 2), Rational(1, 2), Rational(3, 2), Rational(5, 2)});
                     Outcome o;
                     o.pass = r.mismatches == 0;
                     o.max_error = static_cast<double>(r.mismatches);
                     std::ostringstream ss;
                     ss << r.mismatches << " of " << r.checked << " cases differ from the closed form";
                     if (r.first_mismatch)
                         ss << "; first " << r.first_mismatch->str() << ": count " << r.first_count << ", formula "
                            << r.first_formula;
                     o.detail = ss.str();
                     return o;
                 }});
    v.push_back({"kappa_orbit_count", "kappa.orbit-size", "n=2..6", [](const RunConfig&) {
                     long bad = 0, checked = 0;
                     for (int n = 2; n <= 6; ++n)
                         for (auto& c : enumerate_compositions(n, 2)) {
                             ++checked;
                             bad += kappa_orbit_count(c) != kappa_multinomial(c);
                             bad += (kappa(c) == kappa_orbit_count(c)) != (c.part(c.r()) == 1);
                         }
                     return Outcome{bad == 0, static_cast<double>(bad),
                                    std::to_string(checked) + " compositions; contract formula equals the orbit size iff n_r = 1"};
                 }});
    v.push_back({"extra_poly_subset_count", "shift.extra-polynomial-degree", "n=2..12", [](const RunConfig&) {
                     long bad = 0;
                     for (int n = 2; n <= 12; ++n)
                         for (int m = 1; m < n; ++m)
                             bad += count_extra_poly_subsets(n, m) != binomial(n, m) - std::int64_t{m} * (n - m) - 1;
                     return Outcome{bad == 0, static_cast<double>(bad), std::to_string(bad) + " mismatches"};
                 }});
    v.push_back({"composition_enumeration", "composition.enumeration", "n=1..12", [](const RunConfig&) {
                     long bad = 0;
                     for (int n = 1; n <= 12; ++n) {
                         auto all = enumerate_compositions(n, 1);
                         bad += all.size() != (std::size_t{1} << (n - 1));
                         auto sorted = all;
                         std::sort(sorted.begin(), sorted.end());
                         bad += std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
                     }
                     return Outcome{bad == 0, static_cast<double>(bad), "2^(n-1) distinct compositions"};
                 }});
    return v;
}

// ---- geometry

std::vector<Verifier> geometry_verifiers() {
    std::vector<Verifier> v;
    v.push_back({"iwasawa_round_trip", "iwasawa.decomposition", "1000 gaussian matrices, n=2..6", [](const RunConfig& cfg) {
                     std::mt19937_64 rng(cfg.seed + 10);
                     std::normal_distribution<double> g;
                     double worst = 0;
                     for (int trial = 0; trial < 1000; ++trial) {
                         const int n = 2 + trial % 5;
                         Eigen::MatrixXd m(n, n);
                         for (int i = 0; i < n; ++i)
                             for (int j = 0; j < n; ++j) m(i, j) = g(rng);
                         auto d = iwasawa_decompose(m);
                         worst = std::max(worst, (d.point.matrix() * d.k * d.c - m).norm() / m.norm());
                     }
                     return Outcome{worst <= 1e-12, worst, ""};
                 }});
    v.push_back({"xi_long_element_gl4", "xi.long-element-gl4-polynomials", "100 random u", [](const RunConfig& cfg) {
                     std::mt19937_64 rng(cfg.seed + 11);
                     WeylElement wl(Composition({1, 1, 1, 1}));
                     double worst = 0;
                     for (int trial = 0; trial < 100; ++trial) {
                         auto u = random_ubar(rng, wl, 1.0);
                         auto xi = xi_values(wl, u);
                         auto poly = xi_long4_polynomials(u);
                         for (std::size_t k = 0; k < 3; ++k) worst = std::max(worst, std::abs(xi[k] - poly[k]) / poly[k]);
                     }
                     return Outcome{worst <= 1e-10, worst, ""};
                 }});
    v.push_back({"weyl_conjugate_y", "iwasawa.weyl-conjugated-y", "5 random y per composition, n<=6", [](const RunConfig& cfg) {
                     std::mt19937_64 rng(cfg.seed + 12);
                     double worst = 0;
                     for (int n = 2; n <= 6; ++n)
                         for (auto& c : enumerate_compositions(n, 2)) {
                             WeylElement w(c);
                             for (int trial = 0; trial < 5; ++trial) {
                                 auto y = random_y(rng, n);
                                 auto num = weyl_conjugate_y(w, y);
                                 auto closed = weyl_conjugate_y_closed(w, y);
                                 for (std::size_t i = 0; i < y.size(); ++i)
                                     worst = std::max(worst, std::abs(closed[i] - num[i]) / num[i]);
                             }
                         }
                     return Outcome{worst <= 1e-12, worst, ""};
                 }});
    v.push_back({"modular_character_w", "modular-character.delta-w", "5 random y per composition, n<=6", [](const RunConfig& cfg) {
                     std::mt19937_64 rng(cfg.seed + 13);
                     double worst = 0;
                     for (int n = 2; n <= 6; ++n)
                         for (auto& c : enumerate_compositions(n, 2)) {
                             WeylElement w(c);
                             for (int trial = 0; trial < 5; ++trial) {
                                 auto y = random_y(rng, n);
                                 auto num = weyl_conjugate_y(w, y);
                                 const double dw = modular_delta_w(w, toric_diagonal(y));
                                 const double id = std::sqrt(modular_delta_y(y)) / std::sqrt(modular_delta_y(num));
                                 worst = std::max(worst, std::abs(dw / id - 1.0));
                             }
                         }
                     return Outcome{worst <= 1e-12, worst, ""};
                 }});
    v.push_back({"xi_lower_bound", "xi.lower-bound", "one random u per composition, n<=6", [](const RunConfig& cfg) {
                     std::mt19937_64 rng(cfg.seed + 14);
                     double worst = 0;
                     for (int n = 2; n <= 6; ++n)
                         for (auto& c : enumerate_compositions(n, 2)) {
                             WeylElement w(c);
                             for (double x : xi_values(w, random_ubar(rng, w, 2.0))) worst = std::max(worst, 1.0 - x);
                         }
                     return Outcome{worst <= 1e-12, std::max(0.0, worst), "min xi >= 1"};
                 }});
    return v;
}

// ---- special functions

std::vector<Verifier> special_verifiers() {
    std::vector<Verifier> v;
    v.push_back({"gamma_decompositions", "gamma.product-and-F_R-decompositions", "1000 tempered samples, n=2..6",
                 [](const RunConfig& cfg) {
                     std::mt19937_64 rng(cfg.seed + 20);
                     double worst = 0;
                     bool ok = true;
                     for (int trial = 0; trial < 1000; ++trial) {
                         const int n = 2 + trial % 5;
                         auto cs = enumerate_compositions(n, 2);
                         auto c = cs[rng() % cs.size()];
                         auto r = verify_gamma_decompositions(random_tempered(rng, n, 4.0), c, 1 + trial % 3);
                         ok = ok && r.pass && r.fr_multiset_ok && r.fr_remaining == r.fr_predicted_remaining;
                         worst = std::max({worst, r.gamma_log_err, r.gamma_two_block_err, r.fr_log_err, r.quadratic_err});
                     }
                     return Outcome{ok && worst <= cfg.identity_tol, worst, ""};
                 }});
    v.push_back({"extra_gamma_sum", "gamma.extra-sum-identity", "1000 rational samples, n<=6", [](const RunConfig& cfg) {
                     std::mt19937_64 rng(cfg.seed + 21);
                     long bad = 0;
                     for (int trial = 0; trial < 1000; ++trial) {
                         // n <= 6: r parts of size 1, then the remaining budget spread at random
                         const int r = 2 + trial % 5;
                         std::vector<int> parts(static_cast<std::size_t>(r), 1);
                         for (int extra = static_cast<int>(rng() % static_cast<unsigned>(7 - r)); extra > 0; --extra)
                             ++parts[rng() % parts.size()];
                         std::vector<Rational> beta;
                         Rational s{0};
                         for (int i = 0; i < r - 1; ++i) {
                             beta.emplace_back(static_cast<std::int64_t>(rng() % 41) - 20, 1 + static_cast<std::int64_t>(rng() % 9));
                             s += beta.back();
                         }
                         beta.push_back(-s);
                         auto [l, rr] = extra_gamma_sum_sides(beta, Composition(parts));
                         bad += l != rr;
                     }
                     return Outcome{bad == 0, static_cast<double>(bad), "exact rational arithmetic"};
                 }});
    v.push_back({"B_function_lemmas", "bound-B.lemmas", "grid -2.95..4.95 step 0.1, 20000 samples", [](const RunConfig& cfg) {
                     std::vector<double> grid;
                     for (double a = -2.95; a < 5; a += 0.1) grid.push_back(a);
                     auto r = verify_B_lemmas(grid, 20000, cfg.seed + 22);
                     return Outcome{r.pass, std::max(0.0, -r.worst_slack), "worst slack " + fmt(r.worst_slack)};
                 }});
    v.push_back({"log_gamma_real_axis", "gamma.lanczos", "x in (0, 60]", [](const RunConfig&) {
                     double worst = 0;
                     for (double x = 0.05; x <= 60; x += 0.173)
                         worst = std::max(worst, std::abs(log_gamma(x).real() - boost::math::lgamma(x)) /
                                                     std::max(1.0, std::abs(boost::math::lgamma(x))));
                     return Outcome{worst <= 1e-13, worst, ""};
                 }});
    v.push_back({"quadratic_identity", "langlands.block-quadratic-identity", "1000 complex samples, n=2..8",
                 [](const RunConfig& cfg) {
                     std::mt19937_64 rng(cfg.seed + 23);
                     std::normal_distribution<double> g;
                     double worst = 0;
                     for (int trial = 0; trial < 1000; ++trial) {
                         const int n = 2 + trial % 7;
                         std::vector<cdouble> a(static_cast<std::size_t>(n));
                         cdouble s = 0;
                         for (int i = 0; i < n - 1; ++i) {
                             a[static_cast<std::size_t>(i)] = cdouble(g(rng), g(rng));
                             s += a[static_cast<std::size_t>(i)];
                         }
                         a.back() = -s;
                         auto cs = enumerate_compositions(n, 1);
                         worst = std::max(worst, quadratic_identity_residual(partition_parameter(LanglandsParameter(a), cs[rng() % cs.size()])));
                     }
                     return Outcome{worst <= 1e-12, worst, ""};
                 }});
    return v;
}

// ---- Whittaker

std::vector<Verifier> whittaker_verifiers() {
    std::vector<Verifier> v;
    v.push_back({"kappa3_calibration", "whittaker.gl3-normalisation", "alpha=0, s=(1,1)", [](const RunConfig& cfg) {
                     const cdouble k3 = calibrate_kappa3(cfg.quadrature());
                     return Outcome{std::abs(k3 - 1.0) <= std::max(1e-9, 10 * cfg.quad_tol), std::abs(k3 - 1.0),
                                    "kappa3 = " + fmt(k3.real()) + " + " + fmt(k3.imag()) + "i"};
                 }});
    v.push_back({"gl3_recursion_vs_closed", "whittaker.gl3-recursion", "20 tempered alpha (spread 4), s=(3/4,3/4)",
                 [](const RunConfig& cfg) {
                     std::mt19937_64 rng(cfg.seed + 30);
                     QuadratureSpec q = cfg.quadrature();
                     q.rel_tol = std::max(q.rel_tol, 1e-6);
                     double worst = 0;
                     for (int i = 0; i < 20; ++i) {
                         const auto a = random_tempered(rng, 3, 4.0);
                         const MellinPoint s{0.75, 0.75};
                         worst = std::max(worst, rel(mellin_recursive(3, a, s, q).value, mellin_gl3_closed(a, s)));
                     }
                     return Outcome{worst <= q.rel_tol, worst, ""};
                 }});
    v.push_back({"gl3_permutation_invariance", "whittaker.weyl-invariance", "6 permutations", [](const RunConfig& cfg) {
                     const LanglandsParameter a = LanglandsParameter::tempered({2.1, -0.7, -1.4});
                     const MellinPoint s{cdouble(0.9, 0.3), cdouble(1.1, -0.2)};
                     QuadratureSpec q = cfg.quadrature();
                     q.rel_tol = std::max(q.rel_tol, 1e-6);
                     const cdouble ref = mellin_recursive(3, a, s, q).value;
                     std::vector<int> p{0, 1, 2};
                     double worst = 0;
                     do {
                         worst = std::max(worst, rel(mellin_recursive(3, a.permuted(p), s, q).value, ref));
                     } while (std::next_permutation(p.begin(), p.end()));
                     return Outcome{worst <= q.rel_tol, worst, ""};
                 }});
    v.push_back({"gl2_shift_identity", "whittaker.shift-equation", "100 random (alpha, s), delta<=5", [](const RunConfig& cfg) {
                     std::mt19937_64 rng(cfg.seed + 31);
                     std::uniform_real_distribution<double> u(-3, 3), w(0.1, 3);
                     double worst = 0;
                     bool ok = true;
                     for (int i = 0; i < 100; ++i) {
                         const int delta = static_cast<int>(rng() % 6);
                         const cdouble a(u(rng) * 0.1, u(rng));
                         const auto r = shift_identity_check(2, 1, delta, LanglandsParameter({a, -a}), {cdouble(w(rng), u(rng))});
                         ok = ok && r.pass && r.ledger_lhs == r.ledger_rhs;
                         worst = std::max(worst, r.residual);
                     }
                     const LanglandsParameter a3 = LanglandsParameter::tempered({0.7, -0.3, -0.4});
                     for (int m = 1; m <= 2; ++m)
                         for (int d = 0; d <= 3; ++d) {
                             const auto r = shift_identity_check(3, m, d, a3, {cdouble(0.6, 0.2), cdouble(0.9, -0.5)}, 1e-9);
                             ok = ok && r.pass && r.ledger_lhs == r.ledger_rhs;
                         }
                     return Outcome{ok && worst <= 1e-12, worst, "degree ledger deg P + 2|S| = delta C(n,m) for n = 2, 3"};
                 }});
    v.push_back({"residues_vs_contour", "whittaker.residues", "n=2 delta<=3, n=3 first residues delta<=3",
                 [](const RunConfig&) {
                     double worst = 0;
                     const cdouble al(0.0, 0.4);
                     const LanglandsParameter a2({al, -al});
                     for (int d = 0; d <= 3; ++d) {
                         const ResidueSpec r(Composition({1, 1}), {d});
                         worst = std::max(worst, rel(residue_contour(2, r, a2, {}), residue_formula(2, r, a2, {})));
                     }
                     const LanglandsParameter a3 = LanglandsParameter::tempered({0.9, -0.25, -0.65});
                     for (int d = 0; d <= 3; ++d) {
                         const ResidueSpec f(Composition({1, 2}), {d}), s(Composition({2, 1}), {d});
                         worst = std::max(worst, rel(residue_contour(3, f, a3, {cdouble(0.8, 0.3)}), residue_formula(3, f, a3, {cdouble(0.8, 0.3)})));
                         worst = std::max(worst, rel(residue_contour(3, s, a3, {cdouble(0.7, -0.4)}), residue_formula(3, s, a3, {cdouble(0.7, -0.4)})));
                     }
                     return Outcome{worst <= 1e-8, worst, ""};
                 }});
    v.push_back({"whittaker_gl2_bessel", "whittaker.gl2-bessel", "real order 0.3, y in {0.2, 0.7, 1.5}", [](const RunConfig& cfg) {
                     double worst = 0;
                     const double nu = 0.3;
                     const LanglandsParameter a({cdouble(nu), cdouble(-nu)});
                     for (double y : {0.2, 0.7, 1.5}) {
                         const auto w = whittaker_value(a, y, std::max(0.5, kPi * y), cfg.quadrature());
                         const double ref = 2.0 * std::sqrt(y) * boost::math::cyl_bessel_k(nu, 2 * kPi * y);
                         worst = std::max(worst, std::abs(w.value.real() - ref) / ref);
                     }
                     return Outcome{worst <= std::max(1e-8, cfg.quad_tol), worst, ""};
                 }});
    return v;
}

// ---- test functions

std::vector<Verifier> testfn_verifiers() {
    std::vector<Verifier> v;
    v.push_back({"p_sharp_at_zero", "test-function.p-sharp", "n=2, R=1, alpha=0", [](const RunConfig&) {
                     const double g = boost::math::tgamma(0.75);
                     const double e = std::abs(p_sharp(LanglandsParameter::tempered({0.0, 0.0}), TestFunctionParams(10, 1, 2)) - g * g);
                     return Outcome{e <= 1e-13, e, "Gamma(3/4)^2 = " + fmt(g * g)};
                 }});
    v.push_back({"h_permutation_invariance", "test-function.h-symmetry", "200 tempered alpha, n=3", [](const RunConfig& cfg) {
                     std::mt19937_64 rng(cfg.seed + 40);
                     const TestFunctionParams p(5, 2, 3);
                     double worst = 0;
                     bool nonneg = true;
                     for (int i = 0; i < 200; ++i) {
                         const auto a = random_tempered(rng, 3, 12);
                         const double h = h_value(a, p);
                         nonneg = nonneg && h >= 0;
                         std::vector<int> perm{0, 1, 2};
                         while (std::next_permutation(perm.begin(), perm.end()))
                             worst = std::max(worst, std::abs(h_value(a.permuted(perm), p) - h) / h);
                     }
                     return Outcome{nonneg && worst <= 1e-12, worst, ""};
                 }});
    v.push_back({"cauchy_decomposition", "test-function.contour-shift-decomposition",
                 "n=2, T=3, R=1, a=0.75 and 1.25, y=0.15*1.3^i (i<10), b=1/2", [](const RunConfig& cfg) {
                     const TestFunctionParams p(3, 1, 2);
                     std::vector<double> ys;
                     for (int i = 0; i < 10; ++i) ys.push_back(0.15 * std::pow(1.3, i));
                     double worst = 0, kerr = 0;
                     std::ostringstream ss;
                     for (double a : {0.75, 1.25}) {
                         const auto r = check_decomposition(ys, p, a, 0.5, cfg.quadrature());
                         worst = std::max(worst, r.max_residual);
                         kerr = std::max(kerr, std::abs(r.kappa - 2.0));
                         ss << "a=" << a << ": kappa=" << fmt(r.kappa.real()) << " residual=" << fmt(r.max_residual) << "; ";
                     }
                     return Outcome{worst <= 1e-6, worst, ss.str() + "|kappa-2| <= " + fmt(kerr)};
                 }});
    v.push_back({"main_term_slope_n2", "test-function.main-term-scaling", "R=1, T in {16,32,64,128}", [](const RunConfig& cfg) {
                     const auto f = fit_scaling(ScalingMeasure::MainTerm, 2, 1, 0.0, {16, 32, 64, 128}, cfg.quadrature());
                     return Outcome{f.residual <= cfg.fit_threshold(0.1), f.residual,
                                    "slope " + fmt(f.slope) + " predicted " + fmt(f.predicted)};
                 }});
    v.push_back({"main_term_slope_n3", "test-function.main-term-scaling", "R=1, T in {32,64,128,256}", [](const RunConfig& cfg) {
                     const auto f = fit_scaling(ScalingMeasure::MainTerm, 3, 1, 0.0, {32, 64, 128, 256}, cfg.quadrature());
                     return Outcome{f.residual <= cfg.fit_threshold(0.3), f.residual,
                                    "slope " + fmt(f.slope) + " predicted " + fmt(f.predicted)};
                 }});
    for (double a : {0.25, 0.75, 1.25}) {
        std::ostringstream in;
        in << "R=2, a=" << a << ", T in {16,32,64,128}";
        v.push_back({"ITR_slope_a" + fmt(a), "test-function.I_TR-scaling", in.str(), [a](const RunConfig& cfg) {
                         const auto f = fit_scaling(ScalingMeasure::ITR, 2, 2, a, {16, 32, 64, 128}, cfg.quadrature());
                         return Outcome{f.residual <= cfg.fit_threshold(0.15), f.residual,
                                        "slope " + fmt(f.slope) + " predicted " + fmt(f.predicted)};
                     }});
    }
    return v;
}

// ---- trace harness

std::vector<Verifier> trace_verifiers() {
    std::vector<Verifier> v;
    v.push_back({"kloosterman_small", "kloosterman.gl2-values", "S(1,1;c), c=1,2,3", [](const RunConfig&) {
                     const double e = std::max({std::abs(kloosterman_gl2(1, 1, 1) - 1.0), std::abs(kloosterman_gl2(1, 1, 2) - 1.0),
                                                std::abs(kloosterman_gl2(1, 1, 3) + 1.0)});
                     return Outcome{e == 0.0, e, "1, 1, -1 exactly"};
                 }});
    v.push_back({"kloosterman_weil", "kloosterman.weil-bound", "c<=5000", [](const RunConfig&) {
                     const auto r = weil_check(5000);
                     return Outcome{r.pass, r.worst_ratio,
                                    "max |S|/(d(c) sqrt c) = " + fmt(r.worst_ratio) + " at c = " + std::to_string(r.worst_c)};
                 }});
    v.push_back({"kloosterman_twisted_multiplicativity", "kloosterman.twisted-multiplicativity",
                 "100 coprime pairs c1,c2 <= 60", [](const RunConfig& cfg) {
                     std::mt19937_64 rng(cfg.seed + 50);
                     std::uniform_int_distribution<long> uc(1, 60), um(-50, 50);
                     double worst = 0;
                     int checked = 0;
                     while (checked < 100) {
                         const long c1 = uc(rng), c2 = uc(rng);
                         if (std::gcd(c1, c2) != 1) continue;
                         worst = std::max(worst, twisted_multiplicativity_residual(um(rng), um(rng), c1, c2));
                         ++checked;
                     }
                     return Outcome{worst <= 1e-10, worst, ""};
                 }});
    v.push_back({"kloosterman_tail", "kloosterman.convergence-of-K", "rho=3/2, eps=0.01, c<=10000; a_1=0", [](const RunConfig&) {
                     const auto good = kloosterman_tail(choice_of_a(2, 1.5, 0.01)[0], 10000);
                     const auto bad = kloosterman_tail(0.0, 10000);
                     return Outcome{good.convergent && !bad.convergent, good.max_ratio,
                                    "max block ratio " + fmt(good.max_ratio) + "; a_1=0 max ratio " + fmt(bad.max_ratio)};
                 }});
    v.push_back({"exponent_calculators", "geometric-side.exponents", "n=2..12, rho=3/2", [](const RunConfig&) {
                     bool ok = iwbounds_exponent(4, Rational(3, 2), Composition({1, 3})).lm_exponent == Rational(29, 4);
                     Rational worst(-1000);
                     for (int n = 2; n <= 12; ++n)
                         for (const auto& c : enumerate_compositions(n, 2)) {
                             const auto r = iwbounds_exponent(n, Rational(3, 2), c);
                             worst = std::max(worst, r.t_exponent);
                             ok = ok && r.slack <= Rational(0);
                         }
                     return Outcome{ok, std::max(0.0, boost::rational_cast<double>(worst)),
                                    "(lm)-exponent 29/4 at n=4; max exponent slack " + fmt(boost::rational_cast<double>(worst))};
                 }});
    v.push_back({"aplusb_bound", "geometric-side.a-plus-b", "n=2..7, rho in {1/2,3/2,5/2}", [](const RunConfig&) {
                     bool ok = true;
                     Rational slack(1000);
                     long count = 0;
                     for (const Rational rho : {Rational(1, 2), Rational(3, 2), Rational(5, 2)})
                         for (int n = 2; n <= 7; ++n)
                             for (const auto& c : enumerate_compositions(n, 2)) {
                                 const auto r = verify_aplusb(n, rho, c);
                                 ok = ok && r.pass;
                                 slack = std::min(slack, r.lhs - r.rhs);
                                 ++count;
                             }
                     return Outcome{ok, std::max(0.0, -boost::rational_cast<double>(slack)),
                                    std::to_string(count) + " cases; min slack " + fmt(boost::rational_cast<double>(slack))};
                 }});
    v.push_back({"hecke_divisor_sums", "eisenstein.hecke-divisor-sum", "Borel GL(2), m<=60", [](const RunConfig&) {
                     const std::vector<HeckeBlock> borel{HeckeBlock{}, HeckeBlock{}};
                     const cdouble s(0.2, 1.7);
                     double worst = std::abs(hecke_divisor_sum(1, {s, -s}, borel) - 1.0);
                     for (long a = 1; a <= 12; ++a)
                         for (long b = 1; b <= 5; ++b) {
                             if (std::gcd(a, b) != 1) continue;
                             const cdouble l = hecke_divisor_sum(a * b, {s, -s}, borel);
                             const cdouble r = hecke_divisor_sum(a, {s, -s}, borel) * hecke_divisor_sum(b, {s, -s}, borel);
                             worst = std::max(worst, std::abs(l - r) / std::max(1e-300, std::abs(r)));
                         }
                     return Outcome{worst <= 1e-12, worst, "multiplicative in m"};
                 }});
    v.push_back({"cuspidal_orthogonality_fixture", "spectral.orthogonality-ratio", "synthetic 50-form fixture, T=10, R=1, l,m<=10",
                 [](const RunConfig& cfg) {
                     const auto fx = synthetic_maass_fixture(50, cfg.seed);
                     const TestFunctionParams p(10, 1, 2);
                     bool diag = true;
                     double off = 0;
                     for (int l = 1; l <= 10; ++l)
                         for (int m = 1; m <= 10; ++m) {
                             const double r = cuspidal_sum(fx, p, l, m).ratio;
                             const long sq = std::lround(std::sqrt(static_cast<double>(l * m)));
                             if (l == m)
                                 diag = diag && r == 1.0;
                             else if (sq * sq != l * m)
                                 off = std::max(off, std::abs(r));
                         }
                     return Outcome{diag && off <= 3.0 / std::sqrt(50.0), off,
                                    "non-physical fixture; max off-diagonal |ratio| " + fmt(off)};
                 }});
    return v;
}

}  // namespace

QuadratureSpec RunConfig::quadrature() const {
    QuadratureSpec q;
    q.rel_tol = quad_tol;
    q.nodes_per_unit = nodes_per_unit;
    q.truncation = truncation;
    return q;
}

double RunConfig::fit_threshold(double base) const {
    return base * (1.0 + std::max(0.0, std::log10(quad_tol / 1e-8)));
}

void RunConfig::set(const std::string& key, const std::string& value) {
    const std::string v = trim(value);
    if (key == "quad_tol") quad_tol = to_double(key, v);
    else if (key == "identity_tol") identity_tol = to_double(key, v);
    else if (key == "tol") quad_tol = identity_tol = to_double(key, v);
    else if (key == "nodes_per_unit") nodes_per_unit = static_cast<int>(to_int(key, v));
    else if (key == "truncation") truncation = to_double(key, v);
    else if (key == "threads") threads = static_cast<int>(to_int(key, v));
    else if (key == "format") format = v;
    else if (key == "seed") seed = static_cast<std::uint64_t>(to_int(key, v));
    else if (key == "timings") {
        if (v == "true" || v == "1") timings = true;
        else if (v == "false" || v == "0") timings = false;
        else throw DomainError("config: timings expects true or false");
    } else {
        throw DomainError("config: unknown key '" + key + "'");
    }
    validate();
}

void RunConfig::validate() const {
    if (!(quad_tol > 0) || !(identity_tol > 0)) throw DomainError("config: tolerances must be positive");
    if (nodes_per_unit < 1) throw DomainError("config: nodes_per_unit must be >= 1");
    if (threads < 0) throw DomainError("config: threads must be >= 0");
    if (format != "json" && format != "csv") throw DomainError("config: format must be json or csv");
}

std::map<std::string, std::string> RunConfig::to_map() const {
    return {{"quad_tol", fmt(quad_tol)},
            {"identity_tol", fmt(identity_tol)},
            {"nodes_per_unit", std::to_string(nodes_per_unit)},
            {"truncation", fmt(truncation)},
            {"threads", std::to_string(threads)},
            {"format", format},
            {"seed", std::to_string(seed)},
            {"timings", timings ? "true" : "false"}};
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("config: expected key=value", lineno);
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ParseError("config: empty key", lineno);
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

RunConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("config: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    RunConfig cfg;
    for (const auto& [k, v] : parse_config_text(ss.str())) cfg.set(k, v);
    return cfg;
}

RunConfig default_config() {
    const char* path = std::getenv(kConfigEnvVar);
    if (path && *path) return load_config(path);
    return RunConfig{};
}

SuiteSelector parse_selector(const std::string& s) {
    static const std::map<std::string, SuiteSelector> names{
        {"combinatorics", SuiteSelector::Combinatorics}, {"geometry", SuiteSelector::Geometry},
        {"special", SuiteSelector::Special},             {"whittaker", SuiteSelector::Whittaker},
        {"testfn", SuiteSelector::Testfn},               {"trace", SuiteSelector::Trace},
        {"all", SuiteSelector::All}};
    auto it = names.find(s);
    if (it == names.end()) throw DomainError("unknown suite '" + s + "'");
    return it->second;
}

std::string selector_name(SuiteSelector s) {
    switch (s) {
        case SuiteSelector::Combinatorics: return "combinatorics";
        case SuiteSelector::Geometry: return "geometry";
        case SuiteSelector::Special: return "special";
        case SuiteSelector::Whittaker: return "whittaker";
        case SuiteSelector::Testfn: return "testfn";
        case SuiteSelector::Trace: return "trace";
        case SuiteSelector::All: return "all";
    }
    return "";
}

std::string fnv1a_hex(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<VerificationReport> run_suite(SuiteSelector sel, const RunConfig& cfg) {
    cfg.validate();
    std::unique_ptr<tbb::global_control> limit;
    if (cfg.threads > 0)
        limit = std::make_unique<tbb::global_control>(tbb::global_control::max_allowed_parallelism,
                                                      static_cast<std::size_t>(cfg.threads));
    std::vector<Verifier> all;
    auto add = [&](std::vector<Verifier> v) { all.insert(all.end(), v.begin(), v.end()); };
    const bool every = sel == SuiteSelector::All;
    if (every || sel == SuiteSelector::Combinatorics) add(combinatorics_verifiers());
    if (every || sel == SuiteSelector::Geometry) add(geometry_verifiers());
    if (every || sel == SuiteSelector::Special) add(special_verifiers());
    if (every || sel == SuiteSelector::Whittaker) add(whittaker_verifiers());
    if (every || sel == SuiteSelector::Testfn) add(testfn_verifiers());
    if (every || sel == SuiteSelector::Trace) add(trace_verifiers());

    std::vector<VerificationReport> out;
    for (const auto& v : all) {
        VerificationReport r;
        r.name = v.name;
        r.anchor = v.anchor;
        // the digest covers everything that can change the outcome, but not thread count or format
        r.inputs_digest = fnv1a_hex(v.name + "|" + v.inputs + "|seed=" + std::to_string(cfg.seed) + "|quad_tol=" +
                                    fmt(cfg.quad_tol) + "|identity_tol=" + fmt(cfg.identity_tol) +
                                    "|nodes=" + std::to_string(cfg.nodes_per_unit) + "|trunc=" + fmt(cfg.truncation));
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const Outcome o = v.run(cfg);
            r.pass = o.pass;
            r.max_error = o.max_error;
            r.detail = v.inputs + (o.detail.empty() ? "" : "; " + o.detail);
        } catch (const std::exception& e) {
            r.pass = false;
            r.error = true;
            r.detail = v.inputs + "; error: " + e.what();
        }
        r.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    }
    return out;
}

std::string reports_to_json(const std::vector<VerificationReport>& reports, bool timings) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        nlohmann::ordered_json j;
        j["name"] = r.name;
        j["anchor"] = r.anchor;
        j["inputs_digest"] = r.inputs_digest;
        j["pass"] = r.pass;
        j["error"] = r.error;
        j["max_error"] = r.max_error;
        if (timings) j["runtime"] = r.runtime;
        j["detail"] = r.detail;
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<VerificationReport>& reports, bool timings) {
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    };
    std::ostringstream ss;
    ss << "name,anchor,inputs_digest,pass,error,max_error," << (timings ? "runtime," : "") << "detail\n";
    for (const auto& r : reports) {
        ss << r.name << ',' << r.anchor << ',' << r.inputs_digest << ',' << (r.pass ? "true" : "false") << ','
           << (r.error ? "true" : "false") << ',' << fmt(r.max_error) << ',';
        if (timings) ss << fmt(r.runtime) << ',';
        ss << quote(r.detail) << '\n';
    }
    return ss.str();
}

void emit_scaling_csv(const ScalingFit& fit, const std::string& path) {
    if (fit.T.empty() || fit.T.size() != fit.values.size()) throw DomainError("emit_scaling_csv: fit is not populated");
    std::ofstream f(path);
    if (!f) throw IoError("emit_scaling_csv: cannot write " + path);
    f << "T,value,log_value\n";
    for (std::size_t i = 0; i < fit.T.size(); ++i)
        f << fmt(fit.T[i]) << ',' << fmt(fit.values[i]) << ',' << fmt(std::log(fit.values[i])) << '\n';
    if (!f) throw IoError("emit_scaling_csv: write failed for " + path);
    std::ofstream j(path + ".json");
    if (!j) throw IoError("emit_scaling_csv: cannot write " + path + ".json");
    nlohmann::ordered_json side;
    side["measure"] = fit.measure;
    side["slope"] = fit.slope;
    side["intercept"] = fit.intercept;
    side["predicted"] = fit.predicted;
    side["residual"] = fit.residual;
    j << side.dump(2) << '\n';
    if (!j) throw IoError("emit_scaling_csv: write failed for " + path + ".json");
}

std::pair<std::vector<double>, std::vector<double>> read_scaling_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("read_scaling_csv: cannot open " + path);
    std::string line;
    std::size_t lineno = 0;
    std::vector<double> T, v;
    while (std::getline(f, line)) {
        ++lineno;
        if (lineno == 1) {
            if (trim(line) != "T,value,log_value") throw ParseError("read_scaling_csv: unexpected header", lineno);
            continue;
        }
        if (trim(line).empty()) continue;
        std::istringstream ls(line);
        std::string a, b, c;
        if (!std::getline(ls, a, ',') || !std::getline(ls, b, ',') || !std::getline(ls, c))
            throw ParseError("read_scaling_csv: expected three fields", lineno);
        T.push_back(to_double("T", trim(a)));
        v.push_back(to_double("value", trim(b)));
    }
    return {T, v};
}

}  // namespace kuznetsov
