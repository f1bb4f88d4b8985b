#pragma once

// Generic-point sampling with a fixed-seed generator. Rank and span checks
// evaluate at random rational points: numerators in [-12, 12], denominators
// in [1, 8]. Exponential basis atoms never get the value zero.

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "liext/expr.hpp"

namespace liext {

inline constexpr std::uint64_t kDefaultSeed = 20070602;
inline constexpr int kMaxSampleAttempts = 20;

class GenericPoint : public AtomValues {
public:
    explicit GenericPoint(std::uint64_t seed) : rng_(seed) {}

    std::optional<Rational> value(const std::string& key, AtomKind kind) override;

    const std::map<std::string, Rational>& assigned() const { return values_; }

private:
    Rational draw(bool nonzero);

    std::mt19937_64 rng_;
    std::map<std::string, Rational> values_;
};

/// Deterministic stream of generic points derived from one seed.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed = kDefaultSeed) : seed_(seed) {}

    GenericPoint next() { return GenericPoint(mix(seed_, counter_++)); }

    static std::uint64_t mix(std::uint64_t seed, std::uint64_t index);

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

/// Evaluate `f` on `needed` non-singular generic points, drawing fresh points
/// when f throws SingularPoint. Throws AllSamplesSingular after
/// kMaxSampleAttempts failures.
void for_generic_points(Sampler& sampler, int needed, const std::function<void(GenericPoint&)>& f);

}  // namespace liext
