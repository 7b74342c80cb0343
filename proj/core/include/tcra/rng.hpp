/*
   Copyright 2026 The tcra authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef TCRA_RNG_HPP
#define TCRA_RNG_HPP

#include <cstdint>
#include <random>

namespace tcra {

// splitmix64; used to derive independent stream seeds from a root seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Wrapper around mt19937_64 with hand-rolled sampling so that results are
// identical across standard library implementations. All randomized
// operations in the toolkit take an explicit caller-owned Rng.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased integer in [0, bound) by rejection.
    std::uint64_t next_below(std::uint64_t bound) {
        const std::uint64_t limit = bound * ((~std::uint64_t{0}) / bound);
        std::uint64_t x;
        do {
            x = engine_();
        } while (x >= limit);
        return x % bound;
    }

    // Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool next_bool() { return (engine_() >> 63) != 0; }

    bool next_bernoulli(double p) { return next_unit() < p; }

   private:
    std::mt19937_64 engine_;
};

// Deterministic per-stream seed derivation: mixes the root seed with up to
// three stream identifiers (e.g. (seed, n_a, frame_index)).
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    std::uint64_t s = root;
    std::uint64_t h = splitmix64(s);
    s ^= a + 0x9e3779b97f4a7c15ULL;
    h ^= splitmix64(s);
    s ^= b + 0xd1b54a32d192ed03ULL;
    h ^= splitmix64(s);
    s ^= c + 0x8ebc6af09c88c6e3ULL;
    h ^= splitmix64(s);
    return h;
}

}  // namespace tcra

#endif
