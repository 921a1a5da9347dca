#include "qpair/reconciliation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

#include "qpair/parallel.hpp"

namespace qpair {

namespace {

std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t stream = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64{seq};
}

void require_same_length(const BitString& a, const BitString& b, const char* what) {
    if (a.size() != b.size()) throw std::invalid_argument(what);
}

std::vector<std::size_t> shuffled_indices(std::size_t n, std::mt19937_64& rng) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::shuffle(idx.begin(), idx.end(), rng);
    return idx;
}

// One Cascade pass: a permutation of the slots cut into blocks of size k.
struct PassLayout {
    std::vector<std::size_t> order;
    std::vector<std::size_t> block_of;  // slot -> block
    std::size_t k = 1;

    std::size_t blocks() const { return (order.size() + k - 1) / k; }
    std::size_t begin(std::size_t block) const { return block * k; }
    std::size_t end(std::size_t block) const { return std::min(order.size(), (block + 1) * k); }
};

class CascadeSession {
public:
    CascadeSession(const BitString& alice, BitString bob) : alice_(alice), bob_(std::move(bob)) {}

    void run_pass(PassLayout layout) {
        layouts_.push_back(std::move(layout));
        const std::size_t pass = layouts_.size() - 1;
        const PassLayout& l = layouts_.back();
        mismatch_.emplace_back(l.blocks(), false);
        for (std::size_t block = 0; block < l.blocks(); ++block) {
            ++leaked_;  // Alice announces the block parity
            if (parity_differs(l, l.begin(block), l.end(block))) set_mismatch(pass, block, true);
        }
        // Fix the smallest mismatched block first; each fix may reopen blocks
        // of earlier passes that contain the corrected slot.
        while (!pending_.empty()) {
            const auto [size, p, block] = *pending_.begin();
            const std::size_t slot = binary(layouts_[p], block);
            bob_.flip(slot);
            for (std::size_t q = 0; q < layouts_.size(); ++q) {
                const std::size_t b = layouts_[q].block_of[slot];
                set_mismatch(q, b, !mismatch_[q][b]);
            }
        }
    }

    const BitString& bob() const { return bob_; }
    std::size_t leaked() const { return leaked_; }

private:
    using Key = std::tuple<std::size_t, std::size_t, std::size_t>;  // (size, pass, block)

    bool parity_differs(const PassLayout& l, std::size_t lo, std::size_t hi) const {
        int diff = 0;
        for (std::size_t i = lo; i < hi; ++i) diff ^= alice_[l.order[i]] ^ bob_[l.order[i]];
        return diff != 0;
    }

    void set_mismatch(std::size_t pass, std::size_t block, bool value) {
        const PassLayout& l = layouts_[pass];
        const Key key{l.end(block) - l.begin(block), pass, block};
        mismatch_[pass][block] = value;
        if (value)
            pending_.insert(key);
        else
            pending_.erase(key);
    }

    // Bisects a block with odd error parity down to one slot, one disclosed
    // parity per halving.
    std::size_t binary(const PassLayout& l, std::size_t block) {
        std::size_t lo = l.begin(block);
        std::size_t hi = l.end(block);
        while (hi - lo > 1) {
            const std::size_t mid = lo + (hi - lo) / 2;
            ++leaked_;
            if (parity_differs(l, lo, mid))
                hi = mid;
            else
                lo = mid;
        }
        return l.order[lo];
    }

    const BitString& alice_;
    BitString bob_;
    std::vector<PassLayout> layouts_;
    std::vector<std::vector<bool>> mismatch_;
    std::set<Key> pending_;
    std::size_t leaked_ = 0;
};

}  // namespace

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_)
        if (b > 1) throw std::invalid_argument("BitString: entries must be 0 or 1");
}

BitString BitString::random(std::size_t n, std::uint64_t seed) {
    auto rng = rng_for(seed);
    std::bernoulli_distribution coin(0.5);
    std::vector<std::uint8_t> bits(n);
    for (auto& b : bits) b = coin(rng) ? 1 : 0;
    return BitString{std::move(bits)};
}

std::size_t hamming_distance(const BitString& a, const BitString& b) {
    require_same_length(a, b, "hamming_distance: length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i] ? 1 : 0;
    return d;
}

KnowledgeMask::KnowledgeMask(std::vector<bool> known) : known_(std::move(known)) {}

double KnowledgeMask::known_fraction() const {
    if (known_.empty()) return 0.0;
    return static_cast<double>(std::count(known_.begin(), known_.end(), true)) / static_cast<double>(known_.size());
}

BitString flip_channel(const BitString& s, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("flip_channel: p outside [0,1]");
    auto rng = rng_for(seed);
    std::bernoulli_distribution flip(p);
    std::vector<std::uint8_t> out = s.bits();
    for (auto& b : out)
        if (flip(rng)) b ^= 1U;
    return BitString{std::move(out)};
}

XorResult simple_xor_protocol(const BitString& a, const BitString& b, std::size_t rounds, std::uint64_t seed) {
    require_same_length(a, b, "simple_xor_protocol: length mismatch");
    auto rng = rng_for(seed);
    std::vector<std::uint8_t> av = a.bits();
    std::vector<std::uint8_t> bv = b.bits();
    XorResult result;
    std::size_t leaked = 0;

    for (std::size_t round = 0; round < rounds; ++round) {
        const std::vector<std::size_t> order = shuffled_indices(av.size(), rng);
        std::vector<bool> keep(av.size(), false);
        XorRound stat;
        for (std::size_t k = 0; k + 1 < order.size(); k += 2) {
            const std::size_t i = order[k];
            const std::size_t j = order[k + 1];
            ++leaked;  // Alice's XOR value
            if ((av[i] ^ av[j]) == (bv[i] ^ bv[j]))
                keep[i] = true;
            else
                ++stat.discarded_by_mismatch;
        }
        std::vector<std::uint8_t> next_a, next_b;
        for (std::size_t i = 0; i < av.size(); ++i) {
            if (!keep[i]) continue;
            next_a.push_back(av[i]);
            next_b.push_back(bv[i]);
        }
        av = std::move(next_a);
        bv = std::move(next_b);
        stat.length = av.size();
        for (std::size_t i = 0; i < av.size(); ++i) stat.errors += av[i] != bv[i] ? 1 : 0;
        result.rounds.push_back(stat);
    }

    result.a = BitString{std::move(av)};
    result.b = BitString{std::move(bv)};
    result.report = {hamming_distance(result.a, result.b), leaked, rounds, result.a.size()};
    return result;
}

std::size_t cascade_block_size(double p_est) {
    if (!(p_est > 0.0 && p_est <= 0.25)) throw std::invalid_argument("cascade: p_est outside (0, 0.25]");
    return static_cast<std::size_t>(std::ceil(0.73 / p_est));
}

CascadeResult cascade(const BitString& a, const BitString& b, double p_est, std::size_t passes, std::uint64_t seed) {
    require_same_length(a, b, "cascade: length mismatch");
    if (passes < 1) throw std::invalid_argument("cascade: passes must be >= 1");
    const std::size_t k1 = cascade_block_size(p_est);
    const std::size_t n = a.size();
    auto rng = rng_for(seed);

    CascadeSession session(a, b);
    std::size_t k = k1;
    for (std::size_t pass = 0; pass < passes; ++pass) {
        PassLayout layout;
        if (pass == 0) {
            layout.order.resize(n);
            std::iota(layout.order.begin(), layout.order.end(), std::size_t{0});
        } else {
            layout.order = shuffled_indices(n, rng);
        }
        layout.k = std::max<std::size_t>(1, std::min(k, std::max<std::size_t>(n, 1)));
        layout.block_of.resize(n);
        for (std::size_t pos = 0; pos < n; ++pos) layout.block_of[layout.order[pos]] = pos / layout.k;
        session.run_pass(std::move(layout));
        k *= 2;
    }

    CascadeResult result{session.bob(), {}};
    result.report = {hamming_distance(a, result.corrected), session.leaked(), passes, n};
    return result;
}

std::vector<ReconciliationReport> cascade_trials(std::size_t n, double p, std::size_t passes, std::size_t trials,
                                                 std::uint64_t seed, unsigned threads) {
    return parallel_map<ReconciliationReport>(trials, threads, [&](std::size_t t) {
        auto rng = rng_for(seed, t + 1);
        const std::uint64_t alice_seed = rng();
        const std::uint64_t channel_seed = rng();
        const std::uint64_t cascade_seed = rng();
        const BitString alice = BitString::random(n, alice_seed);
        const BitString bob = flip_channel(alice, p, channel_seed);
        return cascade(alice, bob, p, passes, cascade_seed).report;
    });
}

AmplifiedString privacy_amplify(const BitString& a, const KnowledgeMask& mask, std::size_t pairs, std::uint64_t seed) {
    if (mask.size() != a.size()) throw std::invalid_argument("privacy_amplify: mask length mismatch");
    if (2 * pairs > a.size()) throw std::invalid_argument("privacy_amplify: more pairs than length / 2");
    auto rng = rng_for(seed);
    const std::vector<std::size_t> order = shuffled_indices(a.size(), rng);

    std::vector<std::uint8_t> bits = a.bits();
    std::vector<bool> known = mask.known();
    std::vector<bool> removed(a.size(), false);
    for (std::size_t k = 0; k < pairs; ++k) {
        const std::size_t i = std::min(order[2 * k], order[2 * k + 1]);
        const std::size_t j = std::max(order[2 * k], order[2 * k + 1]);
        bits[i] = static_cast<std::uint8_t>(bits[i] ^ bits[j]);
        known[i] = known[i] && known[j];
        removed[j] = true;
    }
    std::vector<std::uint8_t> out_bits;
    std::vector<bool> out_known;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (removed[i]) continue;
        out_bits.push_back(bits[i]);
        out_known.push_back(known[i]);
    }
    return {BitString{std::move(out_bits)}, KnowledgeMask{std::move(out_known)}};
}

}  // namespace qpair
