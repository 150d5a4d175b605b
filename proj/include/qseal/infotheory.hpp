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

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <vector>

#include "qseal/adversary.hpp"
#include "qseal/channel.hpp"
#include "qseal/common.hpp"
#include "qseal/protocol.hpp"
#include "qseal/qubit.hpp"
#include "qseal/rng.hpp"

namespace qseal {

// ---------------------------------------------------------------------------
// The eight-announcement probability model. Announcement order:
//   0: Bit(X, c=0)   1: Bit(X, c=1)   2: Bit(Z, c=0)   3: Bit(Z, c=1)
//   4: Res(X, m=+1)  5: Res(X, m=-1)  6: Res(Z, m=+1)  7: Res(Z, m=-1)
// ---------------------------------------------------------------------------

inline constexpr std::size_t kAnnouncementCount = 8;

inline std::size_t announcement_index(const Announcement& ann) {
    if (ann.kind == AnnouncementKind::Null)
        throw DomainError("null announcements have no probability row");
    const std::size_t basis = ann.basis == PauliAxis::X ? 0 : 1;
    if (ann.kind == AnnouncementKind::Bit)
        return 2 * basis + static_cast<std::size_t>(ann.value);
    return 4 + 2 * basis + (ann.value > 0 ? 0 : 1);
}

inline Announcement announcement_from_index(std::size_t i) {
    const PauliAxis basis = ((i / 2) % 2) == 0 ? PauliAxis::X : PauliAxis::Z;
    if (i < 4) return Announcement::bit(basis, static_cast<int>(i % 2));
    return Announcement::result(basis, (i % 2) == 0 ? +1 : -1);
}

/// Probability of a single announcement given the effective evolution, the
/// prior state of the shot, the message bit and p_a. Bit rows carry the
/// (1-2b) factor; result rows do not depend on b.
inline double announcement_prob(const Announcement& ann,
                                const EffectiveEvolution& evo,
                                const QubitState& prior, int b, double p_a) {
    const QubitState after = evo.apply(prior);
    const double r = expectation(ann.basis, after);
    if (ann.kind == AnnouncementKind::Bit) {
        const double sb = 1.0 - 2.0 * b;
        const double sc = 1.0 - 2.0 * ann.value;
        return 0.25 * p_a * (1.0 + sb * sc * r);
    }
    if (ann.kind == AnnouncementKind::Result)
        return 0.25 * (1.0 - p_a) * (1.0 + ann.value * r);
    throw DomainError("null announcements have no probability row");
}

/// All eight rows at once, in announcement-index order.
struct AnnouncementDistribution {
    std::array<double, kAnnouncementCount> probs{};

    AnnouncementDistribution(const EffectiveEvolution& evo, const QubitState& prior,
                             int b, double p_a) {
        for (std::size_t i = 0; i < kAnnouncementCount; ++i)
            probs[i] = announcement_prob(announcement_from_index(i), evo, prior, b,
                                         p_a);
    }

    double sum() const {
        double s = 0.0;
        for (double p : probs) s += p;
        return s;
    }
};

/// Product likelihood of an announcement string given b and the evolution
/// string, with one prior per shot.
inline double string_prob(const std::vector<Announcement>& announcements, int b,
                          const EvolutionString& s,
                          const std::vector<QubitState>& priors, double p_a) {
    if (announcements.size() != s.size() || priors.size() != s.size())
        throw LengthMismatch("announcements, evolutions and priors must align");
    double prod = 1.0;
    for (std::size_t i = 0; i < s.size(); ++i)
        prod *= announcement_prob(announcements[i], s.evolutions[i], priors[i], b,
                                  p_a);
    return prod;
}

// ---------------------------------------------------------------------------
// Mutual information between the message bit and announcement strings.
// Base-2 logarithms throughout; 0 log 0 := 0. Eve's per-shot prior is the
// maximally mixed state.
// ---------------------------------------------------------------------------

enum class MiMethod { ExactDirect, ExactFactored, MonteCarlo };

struct MutualInformationResult {
    double value = 0.0;  // bits
    MiMethod method = MiMethod::ExactDirect;
    std::size_t samples = 0;
    double stderr_value = 0.0;
};

struct InfoCaps {
    std::size_t direct_max_n = 8;    // 8^N enumeration
    std::size_t bit_mi_max_k = 10;   // 4^k enumeration
    std::size_t factored_max_n = 12;
};

namespace detail {

/// Per-shot (Tr(sigma_1 rho'), Tr(sigma_3 rho')) under the maximally mixed
/// prior, which is just the affine offset.
inline std::array<double, 2> eve_rvec(const EffectiveEvolution& evo) {
    const Vec3 t = evo.apply(Vec3{});
    return {t[0], t[2]};
}

/// I(B : X^(k)) for the normalized bit-announcement law with the given
/// per-shot r vectors: symbol (axis a, bit c) has probability
/// (1 + (1-2b)(1-2c) r_a)/4.
inline double bit_mi_rvecs(const std::vector<std::array<double, 2>>& rvecs,
                           std::size_t max_k) {
    const std::size_t k = rvecs.size();
    if (k == 0) return 0.0;
    if (k > max_k) throw ExplosionError("bit-announcement enumeration exceeds cap");

    std::vector<std::array<double, 4>> q0(k), q1(k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t sym = 0; sym < 4; ++sym) {
            const double r = sym < 2 ? rvecs[i][0] : rvecs[i][1];
            const double sc = (sym % 2 == 0) ? 1.0 : -1.0;
            q0[i][sym] = 0.25 * (1.0 + sc * r);
            q1[i][sym] = 0.25 * (1.0 - sc * r);
        }

    double info = 0.0;
    std::vector<std::size_t> digits(k, 0);
    while (true) {
        double p0 = 1.0, p1 = 1.0;
        for (std::size_t i = 0; i < k; ++i) {
            p0 *= q0[i][digits[i]];
            p1 *= q1[i][digits[i]];
        }
        info += 0.5 * xlog2x(p0) + 0.5 * xlog2x(p1) - xlog2x(0.5 * (p0 + p1));
        std::size_t pos = 0;
        while (pos < k && ++digits[pos] == 4) digits[pos++] = 0;
        if (pos == k) break;
    }
    return info;
}

using RvecKey = std::vector<std::pair<std::int64_t, std::int64_t>>;

/// Memo key: sorted per-shot |r| pairs. Flipping the sign of either r
/// component relabels that shot's symbols bijectively, and shot order is
/// irrelevant, so I depends only on this multiset.
inline RvecKey canonical_key(const std::vector<std::array<double, 2>>& rvecs) {
    RvecKey key;
    key.reserve(rvecs.size());
    for (const auto& r : rvecs)
        key.emplace_back(std::llround(std::abs(r[0]) * 1e12),
                         std::llround(std::abs(r[1]) * 1e12));
    std::sort(key.begin(), key.end());
    return key;
}

class BitMiCache {
  public:
    explicit BitMiCache(std::size_t max_k) : max_k_(max_k) {}

    double get(const std::vector<std::array<double, 2>>& rvecs) {
        const RvecKey key = canonical_key(rvecs);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        const double value = bit_mi_rvecs(rvecs, max_k_);
        memo_.emplace(key, value);
        return value;
    }

  private:
    std::size_t max_k_;
    std::map<RvecKey, double> memo_;
};

}  // namespace detail

/// I(B : X^(k)) for a bit-announcement evolution string; the per-shot law is
/// the Table of bit rows normalized by p_a.
inline double bit_string_mi(const EvolutionString& t, const InfoCaps& caps = {}) {
    std::vector<std::array<double, 2>> rvecs;
    rvecs.reserve(t.size());
    for (const auto& evo : t.evolutions) rvecs.push_back(detail::eve_rvec(evo));
    return detail::bit_mi_rvecs(rvecs, caps.bit_mi_max_k);
}

/// Exact mutual information by enumeration over all 8^N announcement
/// strings.
inline MutualInformationResult mutual_info_direct(const EvolutionString& s,
                                                  double p_a,
                                                  const InfoCaps& caps = {}) {
    const std::size_t n = s.size();
    if (n > caps.direct_max_n)
        throw ExplosionError("direct enumeration exceeds 8^N cap");

    const QubitState prior = QubitState::maximally_mixed();
    std::vector<std::array<double, 8>> p0(n), p1(n);
    for (std::size_t i = 0; i < n; ++i) {
        p0[i] = AnnouncementDistribution(s.evolutions[i], prior, 0, p_a).probs;
        p1[i] = AnnouncementDistribution(s.evolutions[i], prior, 1, p_a).probs;
    }

    double info = 0.0;
    if (n == 0) return {0.0, MiMethod::ExactDirect, 0, 0.0};
    std::vector<std::size_t> digits(n, 0);
    while (true) {
        double a0 = 1.0, a1 = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            a0 *= p0[i][digits[i]];
            a1 *= p1[i][digits[i]];
        }
        info += 0.5 * xlog2x(a0) + 0.5 * xlog2x(a1) - xlog2x(0.5 * (a0 + a1));
        std::size_t pos = 0;
        while (pos < n && ++digits[pos] == 8) digits[pos++] = 0;
        if (pos == n) break;
    }
    return {info, MiMethod::ExactDirect, 0, 0.0};
}

/// Exact mutual information through the factored form
///   I = sum_k p_a^k (1-p_a)^(N-k) sum_{T of size k} I_T(X^(k) : B),
/// summing over every way of choosing the bit-announcement shots from the
/// string.
inline MutualInformationResult mutual_info_factored(const EvolutionString& s,
                                                    double p_a,
                                                    const InfoCaps& caps = {}) {
    const std::size_t n = s.size();
    if (n > caps.factored_max_n)
        throw ExplosionError("factored enumeration exceeds subset budget");

    std::vector<std::array<double, 2>> rvecs;
    rvecs.reserve(n);
    for (const auto& evo : s.evolutions) rvecs.push_back(detail::eve_rvec(evo));

    detail::BitMiCache cache(caps.bit_mi_max_k);
    double info = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        const double coeff =
            std::pow(p_a, static_cast<double>(k)) *
            std::pow(1.0 - p_a, static_cast<double>(n - k));
        if (k == 0) continue;  // I over the empty string vanishes
        // Combination odometer over k-subsets of [0, n).
        std::vector<std::size_t> idx(k);
        for (std::size_t i = 0; i < k; ++i) idx[i] = i;
        bool done = false;
        while (!done) {
            std::vector<std::array<double, 2>> sel;
            sel.reserve(k);
            for (std::size_t i : idx) sel.push_back(rvecs[i]);
            info += coeff * cache.get(sel);
            std::ptrdiff_t i = static_cast<std::ptrdiff_t>(k) - 1;
            while (i >= 0 &&
                   idx[static_cast<std::size_t>(i)] ==
                       static_cast<std::size_t>(i) + n - k)
                --i;
            if (i < 0) {
                done = true;
            } else {
                ++idx[static_cast<std::size_t>(i)];
                for (std::size_t j = static_cast<std::size_t>(i) + 1; j < k; ++j)
                    idx[j] = idx[j - 1] + 1;
            }
        }
    }
    return {info, MiMethod::ExactFactored, 0, 0.0};
}

namespace detail {

inline double logsumexp2(double a, double b) {
    if (a == -std::numeric_limits<double>::infinity()) return b;
    if (b == -std::numeric_limits<double>::infinity()) return a;
    const double m = std::max(a, b);
    return m + std::log(std::exp(a - m) + std::exp(b - m));
}

}  // namespace detail

/// Monte Carlo estimate of the direct mutual information: the mean of the
/// per-sample log likelihood ratio log2 Pr(a|b,S) / Pr(a|S) under the joint
/// draw of (b, a). Unbiased, with the sample standard error reported.
inline MutualInformationResult mutual_info_mc(const EvolutionString& s, double p_a,
                                              std::size_t samples, Rng& rng) {
    if (samples < 1000)
        throw DomainError("Monte Carlo estimator needs at least 1000 samples");
    const std::size_t n = s.size();
    const QubitState prior = QubitState::maximally_mixed();
    std::vector<std::array<double, 8>> p0(n), p1(n);
    for (std::size_t i = 0; i < n; ++i) {
        p0[i] = AnnouncementDistribution(s.evolutions[i], prior, 0, p_a).probs;
        p1[i] = AnnouncementDistribution(s.evolutions[i], prior, 1, p_a).probs;
    }

    const double neg_inf = -std::numeric_limits<double>::infinity();
    double mean = 0.0, m2 = 0.0;
    for (std::size_t it = 0; it < samples; ++it) {
        const int b = rng.bernoulli(0.5) ? 1 : 0;
        double l0 = 0.0, l1 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& pb = b == 0 ? p0[i] : p1[i];
            const double u = rng.u01();
            double acc = 0.0;
            std::size_t a = 7;
            for (std::size_t sym = 0; sym < 8; ++sym) {
                acc += pb[sym];
                if (u < acc) {
                    a = sym;
                    break;
                }
            }
            l0 += p0[i][a] > 0.0 ? std::log(p0[i][a]) : neg_inf;
            l1 += p1[i][a] > 0.0 ? std::log(p1[i][a]) : neg_inf;
        }
        const double lb = b == 0 ? l0 : l1;
        const double lmix = detail::logsumexp2(l0 + std::log(0.5), l1 + std::log(0.5));
        const double z = (lb - lmix) / std::log(2.0);
        const double delta = z - mean;
        mean += delta / static_cast<double>(it + 1);
        m2 += delta * (z - mean);
    }
    const double var = m2 / static_cast<double>(samples - 1);
    return {mean, MiMethod::MonteCarlo, samples,
            std::sqrt(var / static_cast<double>(samples))};
}

/// Binomial point mass C(N,k) p^k (1-p)^(N-k).
inline double binomial_pk(std::size_t n, std::size_t k, double p_a) {
    if (k > n) throw DomainError("binomial_pk needs k <= N");
    if (p_a < 0.0 || p_a > 1.0) throw DomainError("binomial_pk needs p in [0,1]");
    double coeff = 1.0;
    for (std::size_t i = 1; i <= k; ++i)
        coeff *= static_cast<double>(n - k + i) / static_cast<double>(i);
    return coeff * std::pow(p_a, static_cast<double>(k)) *
           std::pow(1.0 - p_a, static_cast<double>(n - k));
}

}  // namespace qseal
