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

#include <cstddef>
#include <utility>
#include <vector>

#include "qseal/common.hpp"
#include "qseal/qubit.hpp"

namespace qseal {

inline constexpr double kCompletenessTol = 1e-10;

/// A quantum operation in Kraus form: rho -> sum_i E_i rho E_i^dag with
/// sum_i E_i^dag E_i = I.
struct KrausChannel {
    std::vector<CMat2> operators;

    double completeness_deviation() const {
        CMat2 sum;
        for (const auto& e : operators) sum = sum + e.adjoint() * e;
        return deviation_from_identity(sum);
    }

    void validate(double tol = kCompletenessTol) const {
        if (operators.empty())
            throw ChannelNotTracePreserving("channel has no Kraus operators");
        if (completeness_deviation() > tol)
            throw ChannelNotTracePreserving(
                "Kraus operators do not satisfy sum E^dag E = I");
    }

    static KrausChannel identity() { return KrausChannel{{CMat2::identity()}}; }
};

/// A generalized measurement: outcome i occurs with probability
/// Tr(F_i rho F_i^dag) and leaves the normalized update behind.
struct Povm {
    std::vector<CMat2> effects;

    double completeness_deviation() const {
        CMat2 sum;
        for (const auto& f : effects) sum = sum + f.adjoint() * f;
        return deviation_from_identity(sum);
    }

    void validate(double tol = kCompletenessTol) const {
        if (effects.empty()) throw ChannelNotTracePreserving("POVM has no effects");
        if (completeness_deviation() > tol)
            throw ChannelNotTracePreserving(
                "POVM effects do not satisfy sum F^dag F = I");
    }

    /// Projective measurement of sigma_axis; outcome 0 is the +1 eigenstate.
    static Povm projective(PauliAxis axis) {
        const Vec3 plus = axis == PauliAxis::X ? Vec3{{1, 0, 0}} : Vec3{{0, 0, 1}};
        return projective_along(plus);
    }

    /// Rank-1 projectors onto +/- unit vector u on the Bloch sphere.
    static Povm projective_along(const Vec3& u) {
        CMat2 p_plus = density_from_bloch(u);
        CMat2 p_minus = density_from_bloch(-1.0 * u);
        return Povm{{p_plus, p_minus}};
    }
};

inline QubitState apply_channel(const KrausChannel& ch, const QubitState& state) {
    ch.validate();
    const CMat2 rho = state.density();
    CMat2 out;
    for (const auto& e : ch.operators) out = out + e * rho * e.adjoint();
    return QubitState::from_density(out);
}

struct MeasureResult {
    std::size_t outcome;
    QubitState post;
    double prob;
};

inline std::vector<double> outcome_probabilities(const Povm& povm,
                                                 const QubitState& state) {
    const CMat2 rho = state.density();
    std::vector<double> probs;
    probs.reserve(povm.effects.size());
    for (const auto& f : povm.effects) {
        const CMat2 m = f * rho * f.adjoint();
        probs.push_back(std::real(m.trace()));
    }
    return probs;
}

/// Sample an outcome with the supplied uniform draw in [0, 1) and return the
/// normalized post-measurement state.
inline MeasureResult measure(const Povm& povm, const QubitState& state,
                             double draw) {
    povm.validate();
    const CMat2 rho = state.density();
    const auto probs = outcome_probabilities(povm, state);
    double acc = 0.0;
    std::size_t outcome = probs.size() - 1;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (draw < acc) {
            outcome = i;
            break;
        }
    }
    const CMat2& f = povm.effects[outcome];
    CMat2 post = f * rho * f.adjoint();
    const double p = probs[outcome];
    return MeasureResult{outcome, QubitState::from_density((cplx(1.0 / p)) * post),
                         p};
}

/// Force a specific outcome (used by tests and resend-consistency checks).
inline MeasureResult measure_forced(const Povm& povm, const QubitState& state,
                                    std::size_t outcome) {
    povm.validate();
    const auto probs = outcome_probabilities(povm, state);
    if (outcome >= probs.size() || probs[outcome] < 1e-15)
        throw ZeroProbabilityOutcome("forced outcome has vanishing probability");
    const CMat2& f = povm.effects[outcome];
    CMat2 post = f * state.density() * f.adjoint();
    return MeasureResult{outcome,
                         QubitState::from_density(cplx(1.0 / probs[outcome]) * post),
                         probs[outcome]};
}

// ---------------------------------------------------------------------------
// Effective evolutions: the per-shot map from the state entering the channel
// to the state reaching Alice, reduced to an affine Bloch map r -> M r + t.
// ---------------------------------------------------------------------------

enum class ProvenanceKind { Identity, Channel, MeasurementOutcome };

struct Provenance {
    ProvenanceKind kind = ProvenanceKind::Identity;
    int outcome = -1;  // meaningful for MeasurementOutcome only
};

struct EffectiveEvolution {
    Mat3 linear;
    Vec3 offset;
    Provenance provenance;

    Vec3 apply(const Vec3& r) const { return linear.apply(r) + offset; }
    QubitState apply(const QubitState& s) const { return QubitState{apply(s.bloch)}; }

    static EffectiveEvolution identity() {
        return EffectiveEvolution{Mat3::identity(), Vec3{},
                                  Provenance{ProvenanceKind::Identity, -1}};
    }

    /// Constant map to a fixed post state. This is the realized evolution of
    /// a measure-and-resend action with rank-1 effects: the post state does
    /// not depend on the input.
    static EffectiveEvolution constant(const QubitState& target, int outcome = -1) {
        return EffectiveEvolution{
            Mat3::zero(), target.bloch,
            Provenance{ProvenanceKind::MeasurementOutcome, outcome}};
    }
};

/// The fixed boundary sample used for the unit-ball contraction check: the 6
/// axis points, the 12 edge midpoints and the 8 cube corners, normalized.
inline const std::vector<Vec3>& ball_boundary_sample() {
    static const std::vector<Vec3> pts = [] {
        std::vector<Vec3> out;
        const double s2 = 1.0 / std::sqrt(2.0);
        const double s3 = 1.0 / std::sqrt(3.0);
        for (int axis = 0; axis < 3; ++axis)
            for (int sign : {-1, 1}) {
                Vec3 p;
                p[static_cast<std::size_t>(axis)] = sign;
                out.push_back(p);
            }
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                for (int sa : {-1, 1})
                    for (int sb : {-1, 1}) {
                        Vec3 p;
                        p[static_cast<std::size_t>(a)] = sa * s2;
                        p[static_cast<std::size_t>(b)] = sb * s2;
                        out.push_back(p);
                    }
        for (int sx : {-1, 1})
            for (int sy : {-1, 1})
                for (int sz : {-1, 1})
                    out.push_back(Vec3{{sx * s3, sy * s3, sz * s3}});
        return out;
    }();
    return pts;
}

/// Numerical check that the map sends the closed unit ball into itself,
/// evaluated on the fixed 26-point boundary sample.
inline bool is_ball_contracting(const EffectiveEvolution& evo, double tol = 1e-9) {
    for (const auto& p : ball_boundary_sample())
        if (norm(evo.apply(p)) > 1.0 + tol) return false;
    return true;
}

/// Canonical affine Bloch representation of a channel: t is the image of the
/// center, the columns of M are the images of the basis directions minus t.
inline EffectiveEvolution channel_to_affine(const KrausChannel& ch) {
    ch.validate();
    EffectiveEvolution evo;
    evo.provenance = Provenance{ProvenanceKind::Channel, -1};
    evo.offset = apply_channel(ch, QubitState::maximally_mixed()).bloch;
    for (std::size_t j = 0; j < 3; ++j) {
        Vec3 e;
        e[j] = 1.0;
        const Vec3 img = apply_channel(ch, QubitState{e}).bloch - evo.offset;
        for (std::size_t r = 0; r < 3; ++r) evo.linear(r, j) = img[r];
    }
    return evo;
}

/// Composition: (second after first)(r) = M2 (M1 r + t1) + t2.
inline EffectiveEvolution compose(const EffectiveEvolution& second,
                                  const EffectiveEvolution& first) {
    EffectiveEvolution out;
    out.linear = second.linear * first.linear;
    out.offset = second.linear.apply(first.offset) + second.offset;
    out.provenance = second.provenance;
    return out;
}

// Common channels.

/// Isotropic shrink r -> (1-lambda) r. lambda = 1 is the fully depolarizing
/// channel.
inline KrausChannel depolarizing_channel(double lambda) {
    if (lambda < 0.0 || lambda > 1.0)
        throw DomainError("depolarizing strength must lie in [0,1]");
    const double a = std::sqrt(1.0 - 0.75 * lambda);
    const double b = std::sqrt(0.25 * lambda);
    return KrausChannel{{cplx(a) * CMat2::identity(), cplx(b) * CMat2::pauli_x(),
                         cplx(b) * CMat2::pauli_y(), cplx(b) * CMat2::pauli_z()}};
}

inline KrausChannel bit_flip_channel(double p) {
    if (p < 0.0 || p > 1.0) throw DomainError("flip probability must lie in [0,1]");
    return KrausChannel{{cplx(std::sqrt(1.0 - p)) * CMat2::identity(),
                         cplx(std::sqrt(p)) * CMat2::pauli_x()}};
}

inline KrausChannel phase_flip_channel(double p) {
    if (p < 0.0 || p > 1.0) throw DomainError("flip probability must lie in [0,1]");
    return KrausChannel{{cplx(std::sqrt(1.0 - p)) * CMat2::identity(),
                         cplx(std::sqrt(p)) * CMat2::pauli_z()}};
}

/// Unitary rotation by angle about a Bloch axis (0 = x, 1 = y, 2 = z).
inline KrausChannel rotation_channel(int axis, double angle) {
    if (axis < 0 || axis > 2) throw DomainError("rotation axis must be 0, 1 or 2");
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    CMat2 sigma = axis == 0   ? CMat2::pauli_x()
                  : axis == 1 ? CMat2::pauli_y()
                              : CMat2::pauli_z();
    CMat2 u = cplx(c) * CMat2::identity() + cplx(0, -s) * sigma;
    return KrausChannel{{u}};
}

/// The Breidbart axis, halfway between Z and X on the Bloch sphere.
inline Vec3 breidbart_axis() {
    const double s = 1.0 / std::sqrt(2.0);
    return Vec3{{s, 0.0, s}};
}

}  // namespace qseal
