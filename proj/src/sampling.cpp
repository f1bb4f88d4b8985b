#include "liext/sampling.hpp"

#include "liext/errors.hpp"

namespace liext {

Rational GenericPoint::draw(bool nonzero) {
    for (;;) {
        // Raw engine output is portable; distribution objects are not.
        long num = static_cast<long>(rng_() % 25) - 12;
        long den = static_cast<long>(rng_() % 8) + 1;
        if (nonzero && num == 0) continue;
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
}

std::optional<Rational> GenericPoint::value(const std::string& key, AtomKind kind) {
    // Full exp keys are never answered so evaluation goes through the basis
    // decomposition, keeping exp(p)exp(q) = exp(p+q) consistent.
    if (kind == AtomKind::Exp) return std::nullopt;
    auto it = values_.find(key);
    if (it != values_.end()) return it->second;
    Rational v = draw(kind == AtomKind::ExpBasis);
    values_.emplace(key, v);
    return v;
}

std::uint64_t Sampler::mix(std::uint64_t seed, std::uint64_t index) {
    // splitmix64 finaliser
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

void for_generic_points(Sampler& sampler, int needed, const std::function<void(GenericPoint&)>& f) {
    int done = 0, failures = 0;
    while (done < needed) {
        GenericPoint p = sampler.next();
        try {
            f(p);
            ++done;
        } catch (const SingularPoint&) {
            if (++failures >= kMaxSampleAttempts)
                throw AllSamplesSingular("every generic sample point was singular");
        }
    }
}

}  // namespace liext
