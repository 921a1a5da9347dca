#include "qpair/quantum.hpp"

#include <numbers>

namespace qpair {

namespace {

constexpr cplx kI{0.0, 1.0};

// Cholesky pivots of (m + tol*I) stay positive iff every eigenvalue of the
// Hermitian m is above -tol.
template <std::size_t N>
bool is_positive_semidefinite(const Matrix<N>& m, double tol) {
    if (!is_hermitian(m, tol)) return false;
    Matrix<N> a = m + tol * Matrix<N>::identity();
    std::array<double, N> diag{};
    Matrix<N> l;
    for (std::size_t j = 0; j < N; ++j) {
        cplx sum = a(j, j);
        for (std::size_t k = 0; k < j; ++k) sum -= l(j, k) * std::conj(l(j, k));
        if (sum.real() <= 0.0) return false;
        diag[j] = std::sqrt(sum.real());
        l(j, j) = diag[j];
        for (std::size_t i = j + 1; i < N; ++i) {
            cplx s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
            l(i, j) = s / diag[j];
        }
    }
    return true;
}

template <std::size_t N>
std::vector<double> povm_probs_impl(const State<N>& s, std::span<const Matrix<N>> elements) {
    if (elements.empty()) throw std::invalid_argument("povm_probs: no elements");
    Matrix<N> total;
    for (const auto& e : elements) {
        if (!is_positive_semidefinite(e, kTolerance))
            throw std::invalid_argument("povm_probs: element is not positive semidefinite");
        total = total + e;
    }
    if (max_abs_diff(total, Matrix<N>::identity()) > kTolerance)
        throw std::invalid_argument("povm_probs: elements do not sum to the identity");

    std::vector<double> probs;
    probs.reserve(elements.size());
    for (const auto& e : elements) {
        const auto es = multiply(e, s);
        double p = 0.0;
        for (std::size_t i = 0; i < N; ++i) p += (std::conj(s[i]) * es[i]).real();
        probs.push_back(std::clamp(p, 0.0, 1.0));
    }
    return probs;
}

}  // namespace

Pair kron(const Qubit& a, const Qubit& b) {
    return Pair{{a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]}};
}

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 m;
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) m(r, c) = a(r / 2, c / 2) * b(r % 2, c % 2);
    return m;
}

std::vector<double> povm_probs(const Qubit& s, std::span<const Mat2> elements) {
    return povm_probs_impl<2>(s, elements);
}

std::vector<double> povm_probs(const Pair& s, std::span<const Mat4> elements) {
    return povm_probs_impl<4>(s, elements);
}

DensityMatrix::DensityMatrix(const Mat2& rho) : rho_(rho) {
    if (!is_hermitian(rho_)) throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(rho_.trace() - 1.0) > kTolerance)
        throw std::invalid_argument("DensityMatrix: trace is not 1");
    const double a = rho_(0, 0).real();
    const double d = rho_(1, 1).real();
    const double radius = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(rho_(0, 1)));
    if (0.5 * (a + d) - radius < -kTolerance)
        throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

DensityMatrix partial_trace(const Pair& s, Subsystem keep) {
    // s = sum_{ij} s_{ij} |i>|j>, i first qubit.
    Mat2 rho;
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) {
            cplx acc{};
            for (std::size_t k = 0; k < 2; ++k) {
                if (keep == Subsystem::First)
                    acc += s[2 * r + k] * std::conj(s[2 * c + k]);
                else
                    acc += s[2 * k + r] * std::conj(s[2 * k + c]);
            }
            rho(r, c) = acc;
        }
    return DensityMatrix{rho};
}

double fidelity(const DensityMatrix& rho, const Qubit& psi) {
    const auto rp = multiply(rho.matrix(), psi);
    double f = 0.0;
    for (std::size_t i = 0; i < 2; ++i) f += (std::conj(psi[i]) * rp[i]).real();
    return std::clamp(f, 0.0, 1.0);
}

double concurrence_pure(const Qubit& s) {
    std::array<cplx, 2> conj_s{std::conj(s[0]), std::conj(s[1])};
    const Mat2 y = pauli_y();
    cplx acc{};
    for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) acc += std::conj(s[r]) * y(r, c) * conj_s[c];
    return std::abs(acc);
}

double concurrence_pure(const Pair& s) {
    const Mat4 yy = kron(pauli_y(), pauli_y());
    cplx acc{};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) acc += std::conj(s[r]) * yy(r, c) * std::conj(s[c]);
    return std::min(std::abs(acc), 1.0);
}

CloneFidelities phase_covariant_clone(double eta, double phi) {
    if (!(eta >= 0.0 && eta <= std::numbers::pi / 2 + kTolerance))
        throw std::invalid_argument("phase_covariant_clone: eta outside [0, pi/2]");
    const double c = std::cos(eta);
    const double s = std::sin(eta);
    // |00> -> |00>, |10> -> cos|10> + sin|01>, completed to a unitary on the
    // {|01>,|10>} block; |11> is untouched.
    Mat4 cloner;
    cloner(0, 0) = 1.0;
    cloner(2, 2) = c;
    cloner(1, 2) = s;
    cloner(1, 1) = c;
    cloner(2, 1) = -s;
    cloner(3, 3) = 1.0;

    const Qubit source = Qubit::normalized({1.0, std::exp(kI * phi)});
    const Pair out = apply(cloner, kron(source, Qubit::basis(0)));
    return {fidelity(partial_trace(out, Subsystem::First), source),
            fidelity(partial_trace(out, Subsystem::Second), source)};
}

Mat2 pauli_x() { return Mat2{{0.0, 1.0, 1.0, 0.0}}; }
Mat2 pauli_y() { return Mat2{{0.0, -kI, kI, 0.0}}; }
Mat2 pauli_z() { return Mat2{{1.0, 0.0, 0.0, -1.0}}; }

Mat2 hadamard() {
    const double h = std::numbers::sqrt2 / 2;
    return Mat2{{h, h, h, -h}};
}

Mat4 cnot() {
    Mat4 m;
    m(0, 0) = 1.0;
    m(1, 1) = 1.0;
    m(2, 3) = 1.0;
    m(3, 2) = 1.0;
    return m;
}

Mat4 swap_gate() {
    Mat4 m;
    m(0, 0) = 1.0;
    m(1, 2) = 1.0;
    m(2, 1) = 1.0;
    m(3, 3) = 1.0;
    return m;
}

std::array<Mat2, 3> discrimination_povm() {
    const double sqrt2 = std::numbers::sqrt2;
    const double w1 = sqrt2 / (1.0 + sqrt2);
    const double w2 = sqrt2 / (2.0 * (1.0 + sqrt2));
    const Mat2 e1{{0.0, 0.0, 0.0, w1}};
    // (|0> - |1>)(<0| - <1|)
    const Mat2 e2{{w2, -w2, -w2, w2}};
    const Mat2 e3 = Mat2::identity() - e1 - e2;
    return {e1, e2, e3};
}

}  // namespace qpair
