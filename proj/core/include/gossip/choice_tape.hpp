#pragma once

#include <cstdint>
#include <utility>

namespace gossip {

// SplitMix64 finalizer. Used everywhere a 64-bit value has to be scrambled
// into an independent-looking one; also the basis of seed derivation in the
// experiment harness.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Shared-randomness source addressed by (node, round, purpose).
//
// Every random decision in a run is a pure function of the tape seed and its
// index, never of evaluation order. Two simulators driven by the same tape
// therefore see identical random choices at identical indices, which is what
// makes the classical and buffered models comparable round by round. It also
// makes traces reproducible and immune to parallel scheduling.
class ChoiceTape {
public:
    enum class Purpose : std::uint64_t {
        ContactChoice = 1,      // the one outgoing call of a node in a round
        DirectPick = 2,         // which fresh arrival is read when the buffer is empty
        AppendShuffle = 3,      // uniform-random tie-break among fresh arrivals
        LateDirectPick = 4,     // which same-round answer is read directly
        LateAppendShuffle = 5,  // uniform-random tie-break among answers
        GraphBuild = 6,         // graph generator randomness
        SourceSample = 7,       // experiment source sampling
    };

    // A deterministic stream of 64-bit values anchored at one tape index.
    class Stream {
    public:
        explicit Stream(std::uint64_t key) noexcept : state_(key) {}

        std::uint64_t next() noexcept {
            state_ += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = state_;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        }

        // Unbiased uniform draw from [0, bound) via masked rejection.
        std::uint64_t uniform(std::uint64_t bound) noexcept {
            if (bound <= 1) {
                return 0;
            }
            std::uint64_t mask = ~std::uint64_t{0};
            const std::uint64_t range = bound - 1;
            int shift = 0;
            while ((range & (mask >> 1)) == range && shift < 63) {
                mask >>= 1;
                ++shift;
            }
            while (true) {
                const std::uint64_t x = next() & mask;
                if (x < bound) {
                    return x;
                }
            }
        }

        // Fisher-Yates over [0, n); returns the permuted index array.
        template <typename Vec>
        void shuffle(Vec& items) noexcept {
            for (std::size_t i = items.size(); i > 1; --i) {
                const std::size_t j = static_cast<std::size_t>(uniform(i));
                using std::swap;
                swap(items[i - 1], items[j]);
            }
        }

    private:
        std::uint64_t state_;
    };

    explicit ChoiceTape(std::uint64_t seed) noexcept : seed_(seed) {}

    std::uint64_t seed() const noexcept { return seed_; }

    // Same (node, round, purpose) -> same stream, on every query and in every
    // simulator sharing this tape.
    Stream stream(std::uint64_t node, std::uint64_t round, Purpose purpose) const noexcept {
        std::uint64_t key = mix64(seed_);
        key = mix64(key ^ node);
        key = mix64(key ^ round);
        key = mix64(key ^ static_cast<std::uint64_t>(purpose));
        return Stream(key);
    }

    // One-shot uniform draw from [0, bound) at the given index.
    std::uint64_t uniform(std::uint64_t node, std::uint64_t round, Purpose purpose,
                          std::uint64_t bound) const noexcept {
        Stream s = stream(node, round, purpose);
        return s.uniform(bound);
    }

private:
    std::uint64_t seed_;
};

}  // namespace gossip
