#pragma once

#include <cmath>
#include <cstdint>

namespace rangeshape {

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Stateless counter hash: same (seed, id) always yields the same word.
// Used for edge weights and for deriving independent per-item streams,
// so parallel and serial evaluation orders agree bit for bit.
inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t id) {
    return mix64(mix64(seed) ^ mix64(id + 0x632be59bd9b4e019ULL));
}

inline double to_unit(std::uint64_t bits) {
    // 53-bit mantissa, value in [0,1)
    return double(bits >> 11) * 0x1.0p-53;
}

// Small splitmix64 sequential stream; cheap to construct per walk/per chain.
class StreamRng {
  public:
    explicit StreamRng(std::uint64_t seed) : state_(mix64(seed ^ 0x8e91c0d3a1f2b5e7ULL)) {}
    StreamRng(std::uint64_t seed, std::uint64_t stream) : StreamRng(counter_hash(seed, stream)) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in [0,1)
    double u01() { return to_unit(next()); }
    // uniform in (0,1], safe for log()
    double u01_pos() { return 1.0 - u01(); }

    double uniform(double a, double b) { return a + (b - a) * u01(); }

    double exponential(double rate) { return -std::log(u01_pos()) / rate; }

    // integer in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // multiply-shift; bias is negligible for the n used here
        return std::uint64_t((static_cast<unsigned __int128>(next()) * n) >> 64);
    }

    double normal() {
        double u = u01_pos(), v = u01_pos();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925287 * v);
    }

  private:
    std::uint64_t state_;
};

}  // namespace rangeshape
