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
#include <optional>
#include <utility>
#include <vector>

#include "qseal/common.hpp"
#include "qseal/qubit.hpp"
#include "qseal/rng.hpp"

namespace qseal {

// ---------------------------------------------------------------------------
// Session parameters and transcript row types.
// ---------------------------------------------------------------------------

struct SessionParams {
    double p_a = 0.5;       // probability of a bit-announcement per shot
    double c_m = 0.95;      // target confidence of at least one matched decode
    std::size_t n = 0;      // non-null shot count; 0 means derive from c_m
    std::uint64_t seed = 0;

    void validate() const {
        if (!(p_a > 0.0 && p_a < 1.0))
            throw DomainError("p_a must lie strictly inside (0,1)");
        if (!(c_m > 0.0 && c_m < 1.0))
            throw DomainError("C_m must lie strictly inside (0,1)");
    }
};

/// The four states Bob prepares, each with probability 1/4.
enum class PreparedState { Z0, Z1, Xplus, Xminus };

inline QubitState state_of(PreparedState p) {
    switch (p) {
        case PreparedState::Z0: return QubitState::z0();
        case PreparedState::Z1: return QubitState::z1();
        case PreparedState::Xplus: return QubitState::xplus();
        default: return QubitState::xminus();
    }
}

inline PauliAxis basis_of(PreparedState p) {
    return (p == PreparedState::Z0 || p == PreparedState::Z1) ? PauliAxis::Z
                                                              : PauliAxis::X;
}

/// The eigenvalue Bob would conjecture for a matched-basis measurement.
inline int eigenvalue_of(PreparedState p) {
    return (p == PreparedState::Z0 || p == PreparedState::Xplus) ? +1 : -1;
}

inline const char* to_string(PreparedState p) {
    switch (p) {
        case PreparedState::Z0: return "Z0";
        case PreparedState::Z1: return "Z1";
        case PreparedState::Xplus: return "X+";
        default: return "X-";
    }
}

enum class AnnouncementKind { Bit, Result, Null };

/// One of the eight announcements, or Null for a lost particle. `value` is
/// the classical bit c for Bit announcements and the outcome m (+1/-1) for
/// Result announcements.
struct Announcement {
    AnnouncementKind kind = AnnouncementKind::Null;
    PauliAxis basis = PauliAxis::Z;
    int value = 0;

    static Announcement bit(PauliAxis basis, int c) {
        return Announcement{AnnouncementKind::Bit, basis, c};
    }
    static Announcement result(PauliAxis basis, int m) {
        return Announcement{AnnouncementKind::Result, basis, m};
    }
    static Announcement null() { return Announcement{}; }

    friend bool operator==(const Announcement& a, const Announcement& b) {
        if (a.kind != b.kind) return false;
        if (a.kind == AnnouncementKind::Null) return true;
        return a.basis == b.basis && a.value == b.value;
    }
};

/// One transcript row. `prepared` is Bob-private; `m` is Alice-private for
/// bit announcements. Either may be absent in partial views (e.g. a proxy's
/// log before the end-of-session debrief).
struct ShotRecord {
    std::size_t index = 0;  // attempt index, counting lost shots
    std::optional<PreparedState> prepared;
    std::optional<PauliAxis> basis;
    std::optional<int> m;
    Announcement announcement;
};

struct MessageBit {
    int b = 0;  // prior probability 1/2 in all information computations
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Smallest integer strictly greater than log(1-C_m)/log(1-p_a/2), so that
/// the probability of at least one matched bit-announcement reaches C_m.
inline std::size_t required_shots(double c_m, double p_a) {
    if (!(c_m > 0.0 && c_m < 1.0) || !(p_a > 0.0 && p_a < 1.0))
        throw DomainError("required_shots needs C_m and p_a strictly inside (0,1)");
    const double ratio = std::log(1.0 - c_m) / std::log(1.0 - p_a / 2.0);
    return static_cast<std::size_t>(std::floor(ratio)) + 1;
}

/// c = (b + (1-m)/2) mod 2.
inline int encode_bit(int b, int m) { return (b + (1 - m) / 2) & 1; }

/// b = (c + (1-m)/2) mod 2; inverse of encode_bit for both m values.
inline int decode_bit(int c, int m) { return (c + (1 - m) / 2) & 1; }

inline std::pair<PreparedState, QubitState> bob_prepare(Rng& rng) {
    const auto label = static_cast<PreparedState>(rng.pick(4));
    return {label, state_of(label)};
}

/// Uniform basis choice, then the Born-rule outcome for that basis.
inline std::pair<PauliAxis, int> alice_measure(const QubitState& received,
                                               Rng& rng) {
    const PauliAxis basis = rng.bernoulli(0.5) ? PauliAxis::X : PauliAxis::Z;
    const double p_plus = 0.5 * (1.0 + expectation(basis, received));
    const int m = rng.u01() < p_plus ? +1 : -1;
    return {basis, m};
}

/// With probability p_a announce the encoded bit, otherwise the raw outcome.
inline Announcement alice_announce(int b, PauliAxis basis, int m, double p_a,
                                   Rng& rng) {
    if (rng.bernoulli(p_a)) return Announcement::bit(basis, encode_bit(b, m));
    return Announcement::result(basis, m);
}

/// True when Bob's preparation is an eigenstate of Alice's measurement.
inline bool matched(PreparedState prep, PauliAxis basis) {
    return basis_of(prep) == basis;
}

struct ReconstructResult {
    std::optional<int> bit;     // empty when undetermined (no votes or tie)
    std::size_t votes[2] = {0, 0};
    std::size_t conflicts = 0;  // minority votes, zero in a clean session
};

/// Decode every matched bit-announcement with the conjectured m and take the
/// majority. Ties and empty vote sets come back undetermined.
inline ReconstructResult bob_reconstruct(const std::vector<ShotRecord>& records) {
    ReconstructResult out;
    for (const auto& rec : records) {
        if (rec.announcement.kind != AnnouncementKind::Bit) continue;
        if (!rec.prepared || !matched(*rec.prepared, rec.announcement.basis))
            continue;
        const int conjectured_m = eigenvalue_of(*rec.prepared);
        const int b = decode_bit(rec.announcement.value, conjectured_m);
        ++out.votes[b];
    }
    if (out.votes[0] == out.votes[1]) return out;  // zero matched or tie
    out.bit = out.votes[1] > out.votes[0] ? 1 : 0;
    out.conflicts = std::min(out.votes[0], out.votes[1]);
    return out;
}

}  // namespace qseal
