#pragma once

// Classical post-processing of the sifted key: a bit-flip channel, XOR
// compare-and-discard, Cascade, and XOR privacy amplification.

#include <cstddef>
#include <cstdint>
#include <vector>

namespace qpair {

class BitString {
public:
    BitString() = default;
    explicit BitString(std::vector<std::uint8_t> bits);
    static BitString random(std::size_t n, std::uint64_t seed);

    std::size_t size() const { return bits_.size(); }
    int operator[](std::size_t i) const { return bits_[i]; }
    void flip(std::size_t i) { bits_.at(i) ^= 1U; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }
    bool operator==(const BitString&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

std::size_t hamming_distance(const BitString& a, const BitString& b);

/// Which slots of a string Eve knows.
class KnowledgeMask {
public:
    explicit KnowledgeMask(std::vector<bool> known);
    std::size_t size() const { return known_.size(); }
    bool operator[](std::size_t i) const { return known_[i]; }
    double known_fraction() const;
    const std::vector<bool>& known() const { return known_; }

private:
    std::vector<bool> known_;
};

struct ReconciliationReport {
    std::size_t residual_errors = 0;
    std::size_t leaked_bits = 0;  // parity messages disclosed
    std::size_t passes = 0;
    std::size_t final_length = 0;
};

/// Flips each bit independently with probability p.
BitString flip_channel(const BitString& s, double p, std::uint64_t seed);

struct XorRound {
    std::size_t length = 0;  // after the round
    std::size_t errors = 0;
    std::size_t discarded_by_mismatch = 0;  // pairs
};

struct XorResult {
    BitString a;
    BitString b;
    ReconciliationReport report;
    std::vector<XorRound> rounds;
};

/// Each round pairs the slots at random; equal XORs keep the first slot,
/// unequal XORs drop both. An unpaired slot is dropped.
XorResult simple_xor_protocol(const BitString& a, const BitString& b, std::size_t rounds, std::uint64_t seed);

struct CascadeResult {
    BitString corrected;  // Bob's string after reconciliation
    ReconciliationReport report;
};

inline constexpr std::size_t kDefaultCascadePasses = 4;

/// First-pass block size ceil(0.73 / p_est), doubled in each later pass.
std::size_t cascade_block_size(double p_est);

/// Alice's string `a` is never changed. p_est must lie in (0, 0.25].
CascadeResult cascade(const BitString& a, const BitString& b, double p_est,
                      std::size_t passes = kDefaultCascadePasses, std::uint64_t seed = 42);

/// Independent Cascade runs on random strings of length n through a flip
/// channel with rate p; trial t is seeded from (seed, t).
std::vector<ReconciliationReport> cascade_trials(std::size_t n, double p, std::size_t passes, std::size_t trials,
                                                 std::uint64_t seed, unsigned threads = 1);

struct AmplifiedString {
    BitString bits;
    KnowledgeMask mask;
};

/// Collapses `pairs` random disjoint slot pairs into their XOR, kept at the
/// lower slot. The XOR is known iff both inputs were known.
AmplifiedString privacy_amplify(const BitString& a, const KnowledgeMask& mask, std::size_t pairs, std::uint64_t seed);

}  // namespace qpair
