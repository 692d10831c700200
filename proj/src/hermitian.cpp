#include "msh/hermitian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace msh {

HermitianMatrix::HermitianMatrix(int dim) : dim_(dim) {
    if (dim < 1) throw precondition_error("matrix dimension must be positive");
    a_.assign(static_cast<std::size_t>(dim) * dim, Complex(0.0, 0.0));
}

HermitianMatrix::HermitianMatrix(int dim, std::vector<Complex> entries, double tol) : HermitianMatrix(dim) {
    if (entries.size() != a_.size()) throw precondition_error("entry count does not match dimension");
    double norm = 0.0;
    for (const Complex& e : entries) norm += std::norm(e);
    norm = std::sqrt(norm);
    for (int p = 0; p < dim; ++p) {
        for (int q = p; q < dim; ++q) {
            const Complex upper = entries[index(p, q)];
            const Complex lower = entries[index(q, p)];
            if (std::abs(upper - std::conj(lower)) > tol * std::max(1.0, norm)) {
                std::ostringstream msg;
                msg << "matrix is not Hermitian at (" << p << "," << q << ")";
                throw precondition_error(msg.str());
            }
            set(p, q, 0.5 * (upper + std::conj(lower)));
        }
    }
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
    HermitianMatrix h(static_cast<int>(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) h.set(static_cast<int>(i), static_cast<int>(i), d[i]);
    return h;
}

void HermitianMatrix::set(int p, int q, Complex value) {
    if (p < 0 || q < 0 || p >= dim_ || q >= dim_) throw precondition_error("matrix index out of range");
    if (p == q) {
        a_[index(p, p)] = Complex(value.real(), 0.0);
        return;
    }
    a_[index(p, q)] = value;
    a_[index(q, p)] = std::conj(value);
}

double HermitianMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += a_[index(i, i)].real();
    return t;
}

double HermitianMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& e : a_) s += std::norm(e);
    return std::sqrt(s);
}

double HermitianMatrix::off_diagonal_norm() const {
    double s = 0.0;
    for (int p = 0; p < dim_; ++p) {
        for (int q = 0; q < dim_; ++q) {
            if (p != q) s += std::norm(a_[index(p, q)]);
        }
    }
    return std::sqrt(s);
}

HermitianMatrix HermitianMatrix::leading_block(int size) const {
    if (size < 1 || size > dim_) throw precondition_error("block size out of range");
    HermitianMatrix out(size);
    for (int p = 0; p < size; ++p) {
        for (int q = p; q < size; ++q) out.set(p, q, (*this)(p, q));
    }
    return out;
}

namespace {

double off_norm(const std::vector<Complex>& a, int n) {
    double s = 0.0;
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) {
            if (p != q) s += std::norm(a[static_cast<std::size_t>(p) * n + q]);
        }
    }
    return std::sqrt(s);
}

// Annihilates (p,q) by A <- U^H A U where U = diag(1, e^{-i phi}) on the
// (p,q) plane followed by a real Jacobi rotation.
void rotate(std::vector<Complex>& a, int n, int p, int q) {
    auto at = [&](int r, int c) -> Complex& { return a[static_cast<std::size_t>(r) * n + c]; };
    const Complex apq = at(p, q);
    const double mag = std::abs(apq);
    if (mag == 0.0) return;
    const Complex phase = apq / mag;  // e^{i phi}
    const double app = at(p, p).real();
    const double aqq = at(q, q).real();
    const double theta = (aqq - app) / (2.0 * mag);
    double t;
    if (std::abs(theta) > 1e150) {
        t = 0.5 / theta;
    } else {
        t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    }
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const Complex upp = c;
    const Complex upq = s;
    const Complex uqp = -s * std::conj(phase);
    const Complex uqq = c * std::conj(phase);

    for (int k = 0; k < n; ++k) {
        const Complex akp = at(k, p);
        const Complex akq = at(k, q);
        at(k, p) = akp * upp + akq * uqp;
        at(k, q) = akp * upq + akq * uqq;
    }
    for (int k = 0; k < n; ++k) {
        const Complex xpk = at(p, k);
        const Complex xqk = at(q, k);
        at(p, k) = std::conj(upp) * xpk + std::conj(uqp) * xqk;
        at(q, k) = std::conj(upq) * xpk + std::conj(uqq) * xqk;
    }
    at(p, q) = 0.0;
    at(q, p) = 0.0;
    at(p, p) = Complex(app - t * mag, 0.0);
    at(q, q) = Complex(aqq + t * mag, 0.0);
}

}  // namespace

JacobiResult jacobi_eigen_detailed(const HermitianMatrix& h, double tol, int max_sweeps) {
    if (!(tol > 0)) throw precondition_error("tolerance must be positive");
    const int n = h.dim();
    std::vector<Complex> a(static_cast<std::size_t>(n) * n);
    for (int p = 0; p < n; ++p) {
        for (int q = 0; q < n; ++q) a[static_cast<std::size_t>(p) * n + q] = h(p, q);
    }
    const double target = tol * h.frobenius_norm();
    int sweeps = 0;
    double off = off_norm(a, n);
    while (off > target) {
        if (sweeps == max_sweeps) {
            std::ostringstream msg;
            msg << "Jacobi did not converge in " << max_sweeps << " sweeps (off-diagonal norm " << off << ")";
            throw convergence_error(msg.str(), off);
        }
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) rotate(a, n, p, q);
        }
        ++sweeps;
        off = off_norm(a, n);
    }
    std::vector<double> eig(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a[static_cast<std::size_t>(i) * n + i].real();
    return JacobiResult{Spectrum<double>(std::move(eig)), sweeps, off};
}

Spectrum<double> jacobi_eigen(const HermitianMatrix& h, double tol) {
    return jacobi_eigen_detailed(h, tol).spectrum;
}

ChiField ChiField::zero() {
    return ChiField{"zero", [](std::span<const Complex>, int, int) { return Complex(0.0, 0.0); }};
}

ChiField ChiField::bump() {
    return ChiField{"-(1-|z|^2)^2", [](std::span<const Complex> z, int p, int q) {
                        double s = 0.0;
                        for (const Complex& zi : z) s += std::norm(zi);
                        Complex v = -2.0 * std::conj(z[static_cast<std::size_t>(p)]) * z[static_cast<std::size_t>(q)];
                        if (p == q) v += 2.0 * (1.0 - s);
                        return v;
                    }};
}

HermitianMatrix hessian_at(const PerturbedQuadratic& f, std::span<const Complex> z) {
    const int n = static_cast<int>(f.a.size());
    if (n < 1) throw precondition_error("quadratic needs at least one coefficient");
    if (z.size() != f.a.size()) throw precondition_error("point dimension does not match coefficients");
    HermitianMatrix h(n);
    for (int p = 0; p < n; ++p) {
        for (int q = p; q < n; ++q) {
            Complex v = f.chi.hessian ? f.chi.hessian(z, p, q) : Complex(0.0, 0.0);
            if (p == q) v += f.a[static_cast<std::size_t>(p)];
            h.set(p, q, v);
        }
    }
    return h;
}

std::vector<PerturbationRow> perturbation_experiment(const PerturbedQuadratic& f, std::span<const Complex> z,
                                                     std::span<const double> a_n_sequence) {
    const int n = static_cast<int>(f.a.size());
    if (n < 2) throw precondition_error("perturbation experiment needs n >= 2");
    for (int j = 0; j + 1 < n - 1; ++j) {
        if (!(f.a[static_cast<std::size_t>(j)] < f.a[static_cast<std::size_t>(j + 1)])) {
            throw precondition_error("coefficients a_1 < ... < a_{n-1} must increase");
        }
    }
    double previous = f.a[static_cast<std::size_t>(n - 2)];
    for (double an : a_n_sequence) {
        if (!(an > previous)) throw precondition_error("a_n sequence must increase strictly above a_{n-1}");
        previous = an;
    }

    PerturbedQuadratic g = f;
    const Spectrum<double> block = jacobi_eigen(hessian_at(g, z).leading_block(n - 1));
    const double chi_nn = f.chi.hessian ? f.chi.hessian(z, n - 1, n - 1).real() : 0.0;

    std::vector<PerturbationRow> rows;
    rows.reserve(a_n_sequence.size());
    for (double an : a_n_sequence) {
        g.a[static_cast<std::size_t>(n - 1)] = an;
        const Spectrum<double> full = jacobi_eigen(hessian_at(g, z));
        PerturbationRow row;
        row.a_n = an;
        for (int j = 0; j < n - 1; ++j) {
            const double err = std::abs(full[static_cast<std::size_t>(j)] - block[static_cast<std::size_t>(j)]);
            row.eigen_errors.push_back(err);
            row.max_eigen_error = std::max(row.max_eigen_error, err);
        }
        row.lambda_n_error = std::abs(full.back() - (an + chi_nn));
        rows.push_back(std::move(row));
    }
    return rows;
}

double inverse_rate_constant(std::span<const PerturbationRow> rows) {
    double c = 0.0;
    for (const auto& row : rows) c = std::max(c, std::max(row.max_eigen_error, row.lambda_n_error) * row.a_n);
    return c;
}

}  // namespace msh
