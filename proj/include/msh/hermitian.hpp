#pragma once

#include "msh/spectrum.hpp"

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace msh {

using Complex = std::complex<double>;

/// Small dense Hermitian matrix, row-major. The (q,p) entry is always the
/// conjugate of (p,q) and the diagonal is real.
class HermitianMatrix {
public:
    explicit HermitianMatrix(int dim);

    /// Validates that `entries` (row-major, dim*dim) is Hermitian to a
    /// relative `tol` and stores the exact Hermitian part. Throws
    /// precondition_error otherwise.
    HermitianMatrix(int dim, std::vector<Complex> entries, double tol = 1e-12);

    static HermitianMatrix diagonal(std::span<const double> d);

    int dim() const noexcept { return dim_; }
    Complex operator()(int p, int q) const { return a_[index(p, q)]; }

    /// Sets (p,q) and mirrors the conjugate into (q,p).
    void set(int p, int q, Complex value);

    double trace() const;
    double frobenius_norm() const;
    double off_diagonal_norm() const;

    /// Upper-left `size` x `size` block.
    HermitianMatrix leading_block(int size) const;

private:
    std::size_t index(int p, int q) const { return static_cast<std::size_t>(p) * dim_ + static_cast<std::size_t>(q); }

    int dim_;
    std::vector<Complex> a_;
};

struct JacobiResult {
    Spectrum<double> spectrum;
    int sweeps = 0;
    double off_norm = 0.0;
};

/// Cyclic Jacobi eigensolver. Stops once the rotated off-diagonal
/// Frobenius norm is <= tol * ||H||_F. Throws convergence_error after
/// `max_sweeps` sweeps.
JacobiResult jacobi_eigen_detailed(const HermitianMatrix& h, double tol = 1e-14, int max_sweeps = 30);

/// Ascending eigenvalues of `h`.
Spectrum<double> jacobi_eigen(const HermitianMatrix& h, double tol = 1e-14);

/// A C^2 scalar field on C^n given through its complex Hessian
/// d^2 chi / dz_p d(conj z_q).
struct ChiField {
    std::string name;
    std::function<Complex(std::span<const Complex> z, int p, int q)> hessian;

    /// chi = 0.
    static ChiField zero();
    /// chi(z) = -(1 - |z|^2)^2, with Hessian 2(1-s) delta_pq - 2 conj(z_p) z_q.
    static ChiField bump();
};

/// rho(z) = chi(z) + sum_j a_j |z_j|^2.
struct PerturbedQuadratic {
    std::vector<double> a;
    ChiField chi;
};

/// Exact complex Hessian of `f` at z: diag(a) plus the Hessian of chi.
HermitianMatrix hessian_at(const PerturbedQuadratic& f, std::span<const Complex> z);

struct PerturbationRow {
    double a_n = 0.0;
    /// |lambda_j(full) - lambda_j(leading block)|, j < n.
    std::vector<double> eigen_errors;
    double max_eigen_error = 0.0;
    /// |lambda_n(full) - (a_n + chi_{n nbar}(z))|.
    double lambda_n_error = 0.0;
};

/// Sends the last coefficient a_n through `a_n_sequence` and measures how
/// far the spectrum of the full Hessian is from (spectrum of the leading
/// (n-1)-block, a_n + chi_{n nbar}). Requires a_1 < ... < a_{n-1} and a
/// strictly increasing sequence above a_{n-1}; f.a[n-1] is ignored.
std::vector<PerturbationRow> perturbation_experiment(const PerturbedQuadratic& f, std::span<const Complex> z,
                                                     std::span<const double> a_n_sequence);

/// Smallest C with error <= C / a_n over all rows (max of error * a_n),
/// using the larger of the two error columns.
double inverse_rate_constant(std::span<const PerturbationRow> rows);

}  // namespace msh
