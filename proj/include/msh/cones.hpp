#pragma once

#include "msh/spectrum.hpp"
#include "msh/symfunc.hpp"

#include <string>
#include <vector>

namespace msh {

enum class ConeKind { open, closed };

/// Membership of a spectrum in Gamma_m.
///
/// `margin` is the smallest normalized coefficient min_{j<=m} S_j and
/// `binding_degree` the j attaining it. In exact mode `member` is exactly
/// `margin >= 0` (closed) or `margin > 0` (open); floating mode allows a
/// slack of tol * scale^j on each degree.
template <Scalar T>
struct ConeVerdict {
    bool member = false;
    T margin{};
    int binding_degree = 0;
    std::string binding;
};

/// Pointwise class membership of a Hessian spectrum for plane dimension k.
///
/// is_k_psh: every k-subset of eigenvalues has nonnegative sum.
/// is_A:     is_k_psh and sigma_{n-k+1} >= 0.
/// is_B:     spectrum lies in the closed cone Gamma_{n-k+1}.
struct Classification {
    bool is_k_psh = false;
    bool is_A = false;
    bool is_B = false;
    int k = 0;
    int n = 0;
};

/// Sum of the k smallest coordinates, i.e. the minimum over all k-subsets.
template <Scalar T>
T ksubset_min_sum(const Spectrum<T>& s, int k);

template <Scalar T>
ConeVerdict<T> gamma_membership(const Spectrum<T>& s, int m, ConeKind kind, double tol = kDefaultTolerance);

/// Classifies `s` for plane dimension k. Throws internal_error if the
/// inclusion B => A ever fails.
template <Scalar T>
Classification classify(const Spectrum<T>& s, int k, double tol = kDefaultTolerance);

/// Strictly negative coordinates (`alpha`) and nonnegative ones (`beta`),
/// each ascending, with p = |alpha|.
template <Scalar T>
struct NegativeSplit {
    std::vector<T> alpha;
    std::vector<T> beta;
    int p = 0;
};

template <Scalar T>
NegativeSplit<T> negative_split(const Spectrum<T>& s);

/// (k-p)(p+1) / ((n-k)(k-p-1)p): the worst-case ratio in the inductive
/// bound sigma_j(gamma) >= sigma_{j-1}(beta)(-sigma_1(alpha))[ratio - 1].
/// Admissible range 1 <= p <= k-2, k <= n-2.
Rational equivalence_ratio(int p, int k, int n);

struct SweepRow {
    int p = 0;
    int k = 0;
    int n = 0;
    Rational ratio;
    bool passes = false;
};

/// Every admissible (p, k, n) with n <= n_max, ordered by n, then k, then p.
std::vector<SweepRow> equivalence_sweep(int n_max);

/// For gamma of dimension n-1 in the closed cone Gamma_{n-k}, checks the
/// ordered chain sigma_j(gamma) >= sigma_{j-1}(gamma) for j = 1..n-k-1.
/// Throws precondition_error when gamma is outside the cone.
template <Scalar T>
bool sigma_chain_check(const Spectrum<T>& gamma, int k, double tol = kDefaultTolerance);

}  // namespace msh
