// Copyright 2026 The qseal authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace qseal {

/// splitmix64 step, used to derive independent stream seeds from one
/// session seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t session_seed, std::uint64_t tag) {
    std::uint64_t s = session_seed ^ (0x6a09e667f3bcc909ULL * (tag + 1));
    splitmix64(s);
    return splitmix64(s);
}

/// Seeded generator with canonical double generation so that draws are
/// bit-reproducible across standard library implementations.
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    /// Uniform double in [0, 1), 53 random bits.
    double u01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// Uniform index in [0, n).
    std::size_t pick(std::size_t n) {
        return static_cast<std::size_t>(u01() * static_cast<double>(n));
    }

    bool bernoulli(double p) { return u01() < p; }

    /// Standard normal via Box-Muller on canonical doubles.
    double gauss() {
        double u1 = u01();
        while (u1 <= 0.0) u1 = u01();
        const double u2 = u01();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

/// Per-role generator streams split from one session seed. Keeping the
/// roles on separate streams makes transcripts reproducible even when the
/// set of draws per shot varies (loss, strategy).
struct RoleStreams {
    Rng bob_prep;
    Rng alice;     // basis choice and measurement outcome
    Rng announce;  // bit-vs-result announcement choice
    Rng eve;
    Rng loss;

    explicit RoleStreams(std::uint64_t session_seed)
        : bob_prep(derive_seed(session_seed, 1)),
          alice(derive_seed(session_seed, 2)),
          announce(derive_seed(session_seed, 3)),
          eve(derive_seed(session_seed, 4)),
          loss(derive_seed(session_seed, 5)) {}
};

}  // namespace qseal
