#pragma once

#include "kuznetsov/combinatorics.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <vector>

namespace kuznetsov {

using cdouble = std::complex<double>;

// x·t(y) with x unit upper triangular and y_i > 0.
struct IwasawaPoint {
    Eigen::MatrixXd x;
    std::vector<double> y;
    int n() const { return static_cast<int>(x.rows()); }
    Eigen::MatrixXd matrix() const;
};

struct IwasawaDecomposition {
    IwasawaPoint point;
    Eigen::MatrixXd k;
    double c = 1.0;
    Eigen::VectorXd diagonal;  // full diagonal of the triangular factor, equal to c·t(y)
};

// t(y) = diag(y_1...y_{n-1}, ..., y_1, 1).
Eigen::MatrixXd toric_matrix(const std::vector<double>& y);
std::vector<double> toric_diagonal(const std::vector<double>& y);

// g = x·t(y)·k·c with k orthogonal and c > 0.
IwasawaDecomposition iwasawa_decompose(const Eigen::MatrixXd& g);

// ∏ y_i^{α̂_{n-i} + ρ̂_{n-i}} with ρ_i = (n+1)/2 - i.
cdouble power_function(const IwasawaPoint& p, const std::vector<cdouble>& alpha);
cdouble power_function_y(const std::vector<double>& y, const std::vector<cdouble>& alpha);

// Σ m_k x_{k,k+1} and e^{2πi·phase}; the twisted form uses v = diag(v_1,...,v_n), v_i = ±1.
double psi_phase(const Eigen::MatrixXd& x, const std::vector<long>& m);
cdouble psi_M(const Eigen::MatrixXd& x, const std::vector<long>& m);
double psi_phase_twisted(const Eigen::MatrixXd& x, const std::vector<long>& m, const std::vector<int>& v);

class WeylElement {
public:
    explicit WeylElement(Composition c);
    const Composition& composition() const { return comp_; }
    int n() const { return comp_.n(); }
    // w e_j = e_{perm[j]} (0-based).
    const std::vector<int>& perm() const { return perm_; }
    Eigen::MatrixXd matrix() const;
    // Positions (i<j) of Ū_w, i.e. where perm[i] > perm[j].
    std::vector<std::pair<int, int>> ubar_pattern() const;
    bool in_ubar(const Eigen::MatrixXd& u, double tol = 0.0) const;

private:
    Composition comp_;
    std::vector<int> perm_;
};

// Iwasawa y-coordinates of w·t(y)·w^{-1} by matrix conjugation and by closed form.
std::vector<double> weyl_conjugate_y(const WeylElement& w, const std::vector<double>& y);
std::vector<double> weyl_conjugate_y_closed(const WeylElement& w, const std::vector<double>& y);

// Exponents e with ‖w y w^{-1}‖^a = ∏ y_k^{e_k}; a is indexed a_1..a_{n-1}.
std::vector<double> conjugate_norm_exponents(const WeylElement& w, const std::vector<double>& a);

// ξ_i from the Iwasawa decomposition of w·u.
std::vector<double> xi_values(const WeylElement& w, const Eigen::MatrixXd& u);
// The three explicit polynomials for the long element of GL(4).
std::array<double, 3> xi_long4_polynomials(const Eigen::MatrixXd& u);

// δ(t) = ∏_{i<j} t_j/t_i on a positive diagonal t, and δ_w(t) over Ū_w.
double modular_delta(const std::vector<double>& t);
double modular_delta_w(const WeylElement& w, const std::vector<double>& t);
double modular_delta_y(const std::vector<double>& y);
// ‖y‖^a = ∏ y_j^{a_j}.
double norm_power(const std::vector<double>& y, const std::vector<double>& a);

}  // namespace kuznetsov
