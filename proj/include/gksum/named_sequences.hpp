#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "gksum/errors.hpp"
#include "gksum/rational.hpp"

namespace gksum {

// Exact values of the named sequences, keyed by their defining recurrences:
//   power sums   P(m):  P_k = P_{k-1} + 1/k^m       (H, H^(m) and zeta partials)
//   derangements D:     D_k = k*D_{k-1} + (-1)^k,   D_0 = 1
// The memo tables behave as append-only caches and are safe for concurrent
// callers.
class NamedSequenceCache {
public:
    Rational harmonic(long k) { return power_sum(1, k); }

    Rational power_sum(long m, long k) {
        if (k < 0) throw DomainError("named sequence index must be >= 0");
        if (m < 1) throw DomainError("power-sum order must be >= 1");
        std::lock_guard<std::mutex> lock(mu_);
        auto& table = power_;
        auto& vals = table[m];
        if (vals.empty()) vals.push_back(Rational(0));  // empty sum at k = 0
        while (static_cast<long>(vals.size()) <= k) {
            const long i = static_cast<long>(vals.size());
            vals.push_back(vals.back() + rat_pow(Rational(1, i), m));
        }
        return vals[static_cast<std::size_t>(k)];
    }

    Rational derangement(long k) {
        if (k < 0) throw DomainError("derangement index must be >= 0");
        std::lock_guard<std::mutex> lock(mu_);
        if (der_.empty()) der_.push_back(Rational(1));
        while (static_cast<long>(der_.size()) <= k) {
            const long i = static_cast<long>(der_.size());
            Rational next = Rational(i) * der_.back();
            next += (i % 2 == 0) ? Rational(1) : Rational(-1);
            der_.push_back(next);
        }
        return der_[static_cast<std::size_t>(k)];
    }

    static NamedSequenceCache& global() {
        static NamedSequenceCache cache;
        return cache;
    }

private:
    std::mutex mu_;
    std::map<long, std::vector<Rational>> power_;
    std::vector<Rational> der_;
};

enum class NamedKind { Harmonic, GenHarmonic, Derangement, ZetaPartial };

inline Rational named_sequence_eval(NamedKind kind, long param, long k,
                                    NamedSequenceCache& cache = NamedSequenceCache::global()) {
    switch (kind) {
        case NamedKind::Harmonic:
            return cache.harmonic(k);
        case NamedKind::GenHarmonic:
        case NamedKind::ZetaPartial:
            return cache.power_sum(param, k);
        case NamedKind::Derangement:
            return cache.derangement(k);
    }
    throw DomainError("unknown named sequence");
}

} // namespace gksum
