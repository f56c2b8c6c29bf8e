#pragma once

#include <cstdint>
#include <cmath>
#include <stdexcept>

namespace hardrods {

/// SplitMix64 output function (Steele, Lea & Flood; Vigna's fixed-increment
/// variant). Bijective on 64-bit words.
inline constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/**
 * Counter-based random stream.
 *
 * Draw n of stream (seed, id) is mix64(key + n*phi) with
 * key = mix64(mix64(seed + phi) + mix64(id + 2*phi)), phi the 64-bit golden
 * ratio — i.e. a SplitMix64 sequence whose seed is derived from
 * (base_seed, stream_id) by two finalizer applications. This derivation is
 * normative: replica r of a run with base seed s always consumes the stream
 * (s, r), so results do not depend on thread scheduling. The full generator
 * state is the triple (base_seed, stream_id, counter); identical triples
 * yield identical draws on every host and build.
 *
 * A stream is single-owner: never draw from one stream on two threads.
 */
class RandomStream {
public:
    RandomStream(std::uint64_t base_seed, std::uint64_t stream_id) noexcept
        : base_seed_(base_seed),
          stream_id_(stream_id),
          key_(derive_key(base_seed, stream_id)) {}

    std::uint64_t next_u64() noexcept { return mix64(key_ + ++counter_ * kPhi); }

    /// Uniform draw strictly inside (0,1); 53-bit resolution, never 0 or 1.
    double uniform01() noexcept {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t base_seed() const noexcept { return base_seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    std::uint64_t counter() const noexcept { return counter_; }

    /// Restores the draw position (checkpoint resume).
    void seek(std::uint64_t counter) noexcept { counter_ = counter; }

private:
    static constexpr std::uint64_t kPhi = 0x9e3779b97f4a7c15ULL;

    static constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t id) noexcept {
        return mix64(mix64(seed + kPhi) + mix64(id + 2 * kPhi));
    }

    std::uint64_t base_seed_;
    std::uint64_t stream_id_;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/**
 * Inverse of the standard normal CDF (Wichura's AS 241, PPND16).
 * Accurate to about 1e-16 relative over (0,1); used so Gaussian draws cost
 * one uniform each and are bit-reproducible across platforms.
 */
inline double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("inverse_normal_cdf: p must lie in (0,1)");
    }
    const double q = p - 0.5;
    if (std::abs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -x : x;
}

}  // namespace hardrods
