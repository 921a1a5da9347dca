#pragma once

// Discrete entropy, mutual information, and the closed-form eavesdropping
// and cloning curves. Logarithms are base 2 and 0 log 0 := 0.

#include <cstddef>
#include <span>
#include <vector>

namespace qpair {

/// Probability vector; entries in [0,1] summing to 1 within 1e-9.
class Distribution {
public:
    explicit Distribution(std::vector<double> probs);
    static Distribution uniform(std::size_t n);

    std::span<const double> probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }

private:
    std::vector<double> probs_;
};

/// Joint distribution p(x,y), rows indexed by x.
class JointTable {
public:
    JointTable(std::size_t rows, std::size_t cols, std::vector<double> row_major);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double operator()(std::size_t r, std::size_t c) const { return p_[r * cols_ + c]; }

    Distribution row_marginal() const;
    Distribution col_marginal() const;
    JointTable transpose() const;
    std::span<const double> entries() const { return p_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> p_;
};

/// -p log2 p with the 0 log 0 := 0 convention.
double plogp(double p);

double entropy(const Distribution& d);
double joint_entropy(const JointTable& j);
double binary_entropy(double p);
double mutual_information(const JointTable& j);

/// Maximal information from intercept-resend for QBER q in [0, 1/2].
double ir_bound(double q);

/// Maximal information from an incoherent attack on BB84, q in [0, 1/2].
double incoherent_bound(double q);

struct IncoherentPoint {
    double qber;
    double info;
};

/// The attack family behind incoherent_bound, parametrized by eta in [0, pi/2].
IncoherentPoint incoherent_curve(double eta);

/// Incoherent-attack bound for the six-state protocol, q in [0, 1/2).
double six_state_bound(double q);

/// Minimal number of disclosed bits to reconcile n bits with error rate p.
double shannon_reconciliation_bound(double n, double p);

/// Fidelity of the optimal universal symmetric N -> M cloner in dimension d.
double werner_fidelity(int n, int m, int d);

struct CloneFidelityPair {
    double a;
    double b;
};

/// Optimal universal asymmetric 1 -> 2 cloner in dimension d. (a, b) must
/// satisfy a^2 + b^2 + 2ab/d = 1 within 1e-9, which is a^2 + b^2 + ab = 1
/// for qubits.
CloneFidelityPair asymmetric_fidelities(double a, double b, int d);

}  // namespace qpair
