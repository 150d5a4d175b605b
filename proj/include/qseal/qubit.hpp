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

#include "qseal/common.hpp"

namespace qseal {

/// Measurement axes used by the protocol: X is sigma_1, Z is sigma_3.
enum class PauliAxis { X, Z };

inline const char* to_string(PauliAxis a) { return a == PauliAxis::X ? "X" : "Z"; }

/// A qubit density matrix stored as its Bloch vector. The trace is 1 by
/// construction; positivity is |bloch| <= 1.
struct QubitState {
    Vec3 bloch;

    bool valid(double tol = 1e-12) const { return norm(bloch) <= 1.0 + tol; }

    CMat2 density() const { return density_from_bloch(bloch); }

    static QubitState from_density(const CMat2& rho) {
        return QubitState{bloch_from_density(rho)};
    }

    // The four protocol states and the uniform prior.
    static QubitState z0() { return QubitState{Vec3{{0, 0, 1}}}; }
    static QubitState z1() { return QubitState{Vec3{{0, 0, -1}}}; }
    static QubitState xplus() { return QubitState{Vec3{{1, 0, 0}}}; }
    static QubitState xminus() { return QubitState{Vec3{{-1, 0, 0}}}; }
    static QubitState maximally_mixed() { return QubitState{Vec3{{0, 0, 0}}}; }

    friend bool operator==(const QubitState& a, const QubitState& b) {
        return a.bloch == b.bloch;
    }
};

/// Tr(sigma_axis rho): the Bloch component along the measurement axis.
inline double expectation(PauliAxis axis, const QubitState& state) {
    return axis == PauliAxis::X ? state.bloch[0] : state.bloch[2];
}

}  // namespace qseal
