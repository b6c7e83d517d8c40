#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "affineproj/errors.hpp"

namespace affineproj {

/// SplitMix64 mixing step.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Independent seed for subtask `index` of a run seeded with `seed`.
/// Every randomized operation derives per-sample seeds through this, so
/// results do not depend on how samples are split across workers.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x51ed2701ULL));
}

/// Inverse-CDF sampler for a fixed probability vector.
class SymbolSampler {
public:
    explicit SymbolSampler(const std::vector<double>& probs) {
        if (probs.empty()) throw ConfigError("SymbolSampler: empty probability vector");
        cum_.reserve(probs.size());
        double acc = 0.0;
        for (double p : probs) {
            if (!(p > 0.0)) throw ConfigError("SymbolSampler: probabilities must be positive");
            acc += p;
            cum_.push_back(acc);
        }
        cum_.back() = 1.0;  // guard the top of the CDF against rounding
    }

    int operator()(std::mt19937_64& rng) const {
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        return sample(u01(rng));
    }

    int sample(double u) const {
        std::size_t lo = 0;
        std::size_t hi = cum_.size() - 1;
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (u < cum_[mid]) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        return static_cast<int>(lo);
    }

    int size() const { return static_cast<int>(cum_.size()); }

private:
    std::vector<double> cum_;
};

/// One-symbol-lookahead stream over the alphabet {0, ..., k-1}.
class SymbolStream {
public:
    virtual ~SymbolStream() = default;

    int next() {
        if (lookahead_) {
            const int s = *lookahead_;
            lookahead_.reset();
            return s;
        }
        return generate();
    }

    int peek() {
        if (!lookahead_) lookahead_ = generate();
        return *lookahead_;
    }

protected:
    virtual int generate() = 0;

private:
    std::optional<int> lookahead_;
};

/// Infinite i.i.d. stream drawn from Bernoulli weights.
class BernoulliStream final : public SymbolStream {
public:
    BernoulliStream(const std::vector<double>& probs, std::uint64_t seed)
        : sampler_(probs), rng_(seed) {}

protected:
    int generate() override { return sampler_(rng_); }

private:
    SymbolSampler sampler_;
    std::mt19937_64 rng_;
};

/// Finite replayable stream, mostly for tests; throws when exhausted.
class FixedStream final : public SymbolStream {
public:
    explicit FixedStream(std::vector<int> symbols) : symbols_(std::move(symbols)) {}

protected:
    int generate() override {
        if (pos_ >= symbols_.size()) throw SequenceExhaustedError("symbol sequence exhausted");
        return symbols_[pos_++];
    }

private:
    std::vector<int> symbols_;
    std::size_t pos_ = 0;
};

}  // namespace affineproj
