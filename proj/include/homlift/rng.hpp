#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace homlift {

// Deterministic random source.  std::mt19937_64 output is fixed by the
// standard, but the std distributions are not, so bounded draws go through
// rejection sampling here.  Identical seeds give identical streams on every
// platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform value in [0, n).  n must be positive.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % n;
    }

    // Uniform double in [0, 1).
    double unit() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    bool coin() { return (eng_() & 1u) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

  private:
    std::mt19937_64 eng_;
};

} // namespace homlift
