#pragma once

// Exact complex linear algebra for one- and two-qubit systems.
//
// Basis order for pairs is |00>, |01>, |10>, |11> with the first (left,
// first-sent) qubit as the most significant index. All tolerances are
// absolute.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qpair {

using cplx = std::complex<double>;

inline constexpr double kTolerance = 1e-9;
inline constexpr double kZeroProbability = 1e-12;

/// Raised when an internal consistency audit fails (normalization, unitarity
/// of a constructed gate, ...). The CLI maps this to a nonzero exit.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

template <std::size_t N>
concept QubitDim = (N == 2 || N == 4);

/// Normalized state vector, or the exact zero vector used as the sentinel for
/// an impossible measurement branch.
template <std::size_t N>
    requires QubitDim<N>
class State {
public:
    using Amplitudes = std::array<cplx, N>;

    /// The zero sentinel.
    State() = default;

    explicit State(const Amplitudes& amps) : amps_(amps) {
        double norm2 = 0.0;
        for (const auto& a : amps_) {
            if (!std::isfinite(a.real()) || !std::isfinite(a.imag()))
                throw std::invalid_argument("State: non-finite amplitude");
            norm2 += std::norm(a);
        }
        if (norm2 != 0.0 && std::abs(std::sqrt(norm2) - 1.0) > kTolerance)
            throw std::invalid_argument("State: amplitudes are neither normalized nor zero");
    }

    static State zero() { return State{}; }

    /// Computational basis state |index>.
    static State basis(std::size_t index) {
        if (index >= N) throw std::out_of_range("State::basis: index out of range");
        Amplitudes amps{};
        amps[index] = 1.0;
        return State{amps};
    }

    /// Scales an arbitrary nonzero vector to unit norm.
    static State normalized(Amplitudes amps) {
        double norm2 = 0.0;
        for (const auto& a : amps) norm2 += std::norm(a);
        if (!(norm2 > 0.0) || !std::isfinite(norm2))
            throw std::invalid_argument("State::normalized: zero or non-finite vector");
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& a : amps) a *= inv;
        return State{amps};
    }

    static constexpr std::size_t dim() { return N; }

    const cplx& operator[](std::size_t i) const { return amps_[i]; }
    const Amplitudes& amplitudes() const { return amps_; }

    bool is_zero() const {
        for (const auto& a : amps_)
            if (a != cplx{}) return false;
        return true;
    }

    double norm() const {
        double norm2 = 0.0;
        for (const auto& a : amps_) norm2 += std::norm(a);
        return std::sqrt(norm2);
    }

private:
    Amplitudes amps_{};
};

using Qubit = State<2>;
using Pair = State<4>;

/// <a|b>
template <std::size_t N>
cplx inner(const State<N>& a, const State<N>& b) {
    cplx acc{};
    for (std::size_t i = 0; i < N; ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

/// Dense row-major N x N complex matrix.
template <std::size_t N>
    requires QubitDim<N>
class Matrix {
public:
    using Entries = std::array<cplx, N * N>;

    Matrix() = default;
    explicit Matrix(const Entries& entries) : e_(entries) {}

    static Matrix identity() {
        Matrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    /// |a><b|
    static Matrix outer(const State<N>& a, const State<N>& b) {
        Matrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(r, c) = a[r] * std::conj(b[c]);
        return m;
    }

    static constexpr std::size_t dim() { return N; }

    cplx& operator()(std::size_t r, std::size_t c) { return e_[r * N + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return e_[r * N + c]; }
    const Entries& entries() const { return e_; }

    Matrix adjoint() const {
        Matrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t c = 0; c < N; ++c) m(r, c) = std::conj((*this)(c, r));
        return m;
    }

    cplx trace() const {
        cplx t{};
        for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix m;
        for (std::size_t r = 0; r < N; ++r)
            for (std::size_t k = 0; k < N; ++k) {
                const cplx ark = a(r, k);
                if (ark == cplx{}) continue;
                for (std::size_t c = 0; c < N; ++c) m(r, c) += ark * b(k, c);
            }
        return m;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) {
        for (std::size_t i = 0; i < N * N; ++i) a.e_[i] += b.e_[i];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b) {
        for (std::size_t i = 0; i < N * N; ++i) a.e_[i] -= b.e_[i];
        return a;
    }

    friend Matrix operator*(cplx s, Matrix a) {
        for (auto& x : a.e_) x *= s;
        return a;
    }

private:
    Entries e_{};
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;

/// max_ij |a_ij - b_ij|
template <std::size_t N>
double max_abs_diff(const Matrix<N>& a, const Matrix<N>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < N * N; ++i) d = std::max(d, std::abs(a.entries()[i] - b.entries()[i]));
    return d;
}

template <std::size_t N>
bool is_unitary(const Matrix<N>& u, double tol = kTolerance) {
    return max_abs_diff(u.adjoint() * u, Matrix<N>::identity()) <= tol;
}

template <std::size_t N>
bool is_hermitian(const Matrix<N>& m, double tol = kTolerance) {
    return max_abs_diff(m, m.adjoint()) <= tol;
}

/// Matrix-vector product without any unitarity requirement. Used for
/// projections, where the result is renormalized by the caller.
template <std::size_t N>
std::array<cplx, N> multiply(const Matrix<N>& m, const State<N>& s) {
    std::array<cplx, N> out{};
    for (std::size_t r = 0; r < N; ++r)
        for (std::size_t c = 0; c < N; ++c) out[r] += m(r, c) * s[c];
    return out;
}

/// u|s>. Throws std::invalid_argument if u is not unitary within 1e-9.
template <std::size_t N>
State<N> apply(const Matrix<N>& u, const State<N>& s) {
    if (!is_unitary(u)) throw std::invalid_argument("apply: matrix is not unitary");
    if (s.is_zero()) return s;
    return State<N>{multiply(u, s)};
}

// Tensor products, basis order |00>,|01>,|10>,|11>.
Pair kron(const Qubit& a, const Qubit& b);
Mat4 kron(const Mat2& a, const Mat2& b);

/// Orthogonal projector, validated on construction (P^2 = P, P† = P).
template <std::size_t N>
class Projector {
public:
    explicit Projector(const Matrix<N>& p) : p_(p) {
        if (!is_hermitian(p_) || max_abs_diff(p_ * p_, p_) > kTolerance)
            throw std::invalid_argument("Projector: matrix is not an orthogonal projector");
    }

    /// |v><v| for a normalized v.
    static Projector onto(const State<N>& v) {
        if (v.is_zero()) throw std::invalid_argument("Projector::onto: zero vector");
        return Projector{Matrix<N>::outer(v, v)};
    }

    const Matrix<N>& matrix() const { return p_; }

private:
    Matrix<N> p_;
};

/// <s|P|s>; 0 for the zero sentinel.
template <std::size_t N>
double measure_prob(const State<N>& s, const Projector<N>& proj) {
    if (s.is_zero()) return 0.0;
    const auto ps = multiply(proj.matrix(), s);
    double p = 0.0;
    for (std::size_t i = 0; i < N; ++i) p += (std::conj(s[i]) * ps[i]).real();
    return std::clamp(p, 0.0, 1.0);
}

template <std::size_t N>
double measure_prob(const State<N>& s, const Matrix<N>& proj) {
    return measure_prob(s, Projector<N>{proj});
}

/// P|s>/sqrt(p), or the zero sentinel when p <= 1e-12.
template <std::size_t N>
State<N> post_measure(const State<N>& s, const Projector<N>& proj) {
    if (s.is_zero()) return s;
    auto ps = multiply(proj.matrix(), s);
    double norm2 = 0.0;
    for (const auto& a : ps) norm2 += std::norm(a);
    if (norm2 <= kZeroProbability) return State<N>::zero();
    return State<N>::normalized(ps);
}

template <std::size_t N>
State<N> post_measure(const State<N>& s, const Matrix<N>& proj) {
    return post_measure(s, Projector<N>{proj});
}

/// Outcome probabilities <s|E_m|s> of a POVM. Elements must be positive
/// semidefinite and sum to the identity within 1e-9.
std::vector<double> povm_probs(const Qubit& s, std::span<const Mat2> elements);
std::vector<double> povm_probs(const Pair& s, std::span<const Mat4> elements);

/// Positive semidefinite, Hermitian, unit-trace 2x2 operator.
class DensityMatrix {
public:
    explicit DensityMatrix(const Mat2& rho);
    const Mat2& matrix() const { return rho_; }

private:
    Mat2 rho_;
};

enum class Subsystem { First, Second };

/// Reduced density operator of one qubit of a normalized pair.
DensityMatrix partial_trace(const Pair& s, Subsystem keep);

/// <psi|rho|psi>
double fidelity(const DensityMatrix& rho, const Qubit& psi);

/// Wootters concurrence |<psi| sigma_y^{(x)n} |psi*>| for n = 1, 2.
double concurrence_pure(const Qubit& s);
double concurrence_pure(const Pair& s);

/// Fidelities of the two outputs of the phase-covariant 1->2 cloner with
/// interaction angle eta, acting on (|0> + e^{i phi}|1>)/sqrt(2) ⊗ |0>.
struct CloneFidelities {
    double original;  // F_A, the qubit left in the source slot
    double copy;      // F_B
};
CloneFidelities phase_covariant_clone(double eta, double phi);

// Named single- and two-qubit gates.
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();
Mat2 hadamard();
Mat4 cnot();
Mat4 swap_gate();

/// The three-element POVM that unambiguously discriminates |0> from |+>.
/// Outcome 1 only occurs for |+>, outcome 2 only for |0>, outcome 3 is
/// inconclusive.
std::array<Mat2, 3> discrimination_povm();

}  // namespace qpair
