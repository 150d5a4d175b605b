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

#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "qseal/channel.hpp"
#include "qseal/common.hpp"
#include "qseal/protocol.hpp"
#include "qseal/qubit.hpp"
#include "qseal/rng.hpp"

namespace qseal {

// ---------------------------------------------------------------------------
// Per-shot eavesdropper actions. An action either leaves the particle alone,
// applies a quantum operation or measures it and resends a fresh state.
// ---------------------------------------------------------------------------

struct PassAction {};

struct ChannelAction {
    KrausChannel channel;
};

struct MeasureResendAction {
    Povm povm;
    std::vector<QubitState> resend;  // one entry per outcome

    void validate() const {
        povm.validate();
        if (povm.effects.size() > 8)
            throw DomainError("custom POVMs are capped at 8 outcomes");
        if (resend.size() != povm.effects.size())
            throw LengthMismatch("resend rule must cover every outcome");
    }
};

struct EveAction {
    std::variant<PassAction, ChannelAction, MeasureResendAction> body;

    static EveAction pass() { return EveAction{PassAction{}}; }
    static EveAction channel(KrausChannel ch) {
        return EveAction{ChannelAction{std::move(ch)}};
    }
    static EveAction measure_resend(Povm povm, std::vector<QubitState> resend) {
        return EveAction{MeasureResendAction{std::move(povm), std::move(resend)}};
    }
};

struct WeightedAction {
    double prob;
    EveAction action;
};

/// Measure along +/- u and resend the eigenstate of the observed outcome.
inline EveAction intercept_resend_along(const Vec3& u) {
    return EveAction::measure_resend(Povm::projective_along(u),
                                     {QubitState{u}, QubitState{-1.0 * u}});
}

// ---------------------------------------------------------------------------
// Strategies: a per-shot distribution over actions, deterministic given
// (seed, shot index). Immutable after construction.
// ---------------------------------------------------------------------------

class Strategy {
  public:
    virtual ~Strategy() = default;

    virtual const std::string& name() const = 0;

    /// The distribution over actions for the given shot. Probabilities sum
    /// to 1. Most shipped strategies are shot-independent.
    virtual std::vector<WeightedAction> action_distribution(
        std::size_t shot) const = 0;
};

using StrategyPtr = std::shared_ptr<const Strategy>;

namespace detail {

class FixedDistributionStrategy final : public Strategy {
  public:
    FixedDistributionStrategy(std::string name, std::vector<WeightedAction> dist)
        : name_(std::move(name)), dist_(std::move(dist)) {}

    const std::string& name() const override { return name_; }
    std::vector<WeightedAction> action_distribution(std::size_t) const override {
        return dist_;
    }

  private:
    std::string name_;
    std::vector<WeightedAction> dist_;
};

inline StrategyPtr make_fixed(std::string name, std::vector<WeightedAction> dist) {
    return std::make_shared<FixedDistributionStrategy>(std::move(name),
                                                       std::move(dist));
}

}  // namespace detail

inline StrategyPtr passive_strategy() {
    return detail::make_fixed("passive", {{1.0, EveAction::pass()}});
}

enum class BasisPolicy { FixedZ, FixedX, Random, Breidbart };

inline StrategyPtr intercept_resend_strategy(BasisPolicy policy) {
    const Vec3 z{{0, 0, 1}};
    const Vec3 x{{1, 0, 0}};
    switch (policy) {
        case BasisPolicy::FixedZ:
            return detail::make_fixed("intercept_resend basis=z",
                                      {{1.0, intercept_resend_along(z)}});
        case BasisPolicy::FixedX:
            return detail::make_fixed("intercept_resend basis=x",
                                      {{1.0, intercept_resend_along(x)}});
        case BasisPolicy::Random:
            return detail::make_fixed("intercept_resend basis=random",
                                      {{0.5, intercept_resend_along(z)},
                                       {0.5, intercept_resend_along(x)}});
        default:
            return detail::make_fixed(
                "intercept_resend basis=breidbart",
                {{1.0, intercept_resend_along(breidbart_axis())}});
    }
}

inline StrategyPtr depolarize_strategy(double lambda) {
    std::ostringstream name;
    name << "depolarize lambda=" << lambda;
    return detail::make_fixed(
        name.str(), {{1.0, EveAction::channel(depolarizing_channel(lambda))}});
}

inline StrategyPtr rotate_strategy(int axis, double angle) {
    std::ostringstream name;
    name << "rotate axis=" << "xyz"[axis] << " angle=" << angle;
    return detail::make_fixed(
        name.str(), {{1.0, EveAction::channel(rotation_channel(axis, angle))}});
}

inline StrategyPtr bit_flip_strategy(double p) {
    std::ostringstream name;
    name << "bit_flip p=" << p;
    return detail::make_fixed(name.str(),
                              {{1.0, EveAction::channel(bit_flip_channel(p))}});
}

inline StrategyPtr phase_flip_strategy(double p) {
    std::ostringstream name;
    name << "phase_flip p=" << p;
    return detail::make_fixed(name.str(),
                              {{1.0, EveAction::channel(phase_flip_channel(p))}});
}

/// Per-shot convex mixture of other strategies.
inline StrategyPtr mix_strategy(
    const std::vector<std::pair<double, StrategyPtr>>& parts) {
    if (parts.empty()) throw ConfigError("mix needs at least one component");
    double total = 0.0;
    for (const auto& [w, s] : parts) {
        if (w < 0.0) throw ConfigError("mix weights must be nonnegative");
        total += w;
    }
    if (total <= 0.0) throw ConfigError("mix weights must not all vanish");
    std::vector<WeightedAction> dist;
    std::ostringstream name;
    name << "mix";
    for (const auto& [w, s] : parts) {
        name << " w=" << w / total << " s=(" << s->name() << ")";
        for (const auto& wa : s->action_distribution(0))
            dist.push_back({w / total * wa.prob, wa.action});
    }
    return detail::make_fixed(name.str(), std::move(dist));
}

// ---------------------------------------------------------------------------
// Enactment and exact string distributions.
// ---------------------------------------------------------------------------

inline std::size_t sample_index(const std::vector<WeightedAction>& dist,
                                Rng& rng) {
    const double u = rng.u01();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < dist.size(); ++i) {
        acc += dist[i].prob;
        if (u < acc) return i;
    }
    return dist.size() - 1;
}

/// Realize one action on the live state: returns the post-action state and
/// the effective evolution that occurred.
inline std::pair<QubitState, EffectiveEvolution> enact(const Strategy& strategy,
                                                       std::size_t shot,
                                                       const QubitState& state,
                                                       Rng& rng) {
    const auto dist = strategy.action_distribution(shot);
    const auto& action = dist.size() == 1 ? dist[0].action
                                          : dist[sample_index(dist, rng)].action;
    if (std::holds_alternative<PassAction>(action.body))
        return {state, EffectiveEvolution::identity()};
    if (const auto* ch = std::get_if<ChannelAction>(&action.body))
        return {apply_channel(ch->channel, state), channel_to_affine(ch->channel)};
    const auto& mr = std::get<MeasureResendAction>(action.body);
    mr.validate();
    const MeasureResult res = measure(mr.povm, state, rng.u01());
    const QubitState resent = mr.resend[res.outcome];
    return {resent,
            EffectiveEvolution::constant(resent, static_cast<int>(res.outcome))};
}

/// An evolution string: the per-shot effective evolutions over a session,
/// with an optional probability weight for hypothesized strings.
struct EvolutionString {
    std::vector<EffectiveEvolution> evolutions;
    double weight = 1.0;

    std::size_t size() const { return evolutions.size(); }

    static EvolutionString identity(std::size_t n) {
        return EvolutionString{
            std::vector<EffectiveEvolution>(n, EffectiveEvolution::identity()), 1.0};
    }
    static EvolutionString uniform(const EffectiveEvolution& evo, std::size_t n) {
        return EvolutionString{std::vector<EffectiveEvolution>(n, evo), 1.0};
    }
};

/// Expand one action into its realizable evolutions with probabilities,
/// using `prior` for Born weights (Eve's viewpoint is the maximally mixed
/// state).
inline std::vector<std::pair<double, EffectiveEvolution>> action_realizations(
    const EveAction& action, const QubitState& prior) {
    if (std::holds_alternative<PassAction>(action.body))
        return {{1.0, EffectiveEvolution::identity()}};
    if (const auto* ch = std::get_if<ChannelAction>(&action.body))
        return {{1.0, channel_to_affine(ch->channel)}};
    const auto& mr = std::get<MeasureResendAction>(action.body);
    mr.validate();
    std::vector<std::pair<double, EffectiveEvolution>> out;
    const auto probs = outcome_probabilities(mr.povm, prior);
    for (std::size_t i = 0; i < probs.size(); ++i)
        out.emplace_back(probs[i], EffectiveEvolution::constant(
                                       mr.resend[i], static_cast<int>(i)));
    return out;
}

/// The exact distribution over length-n evolution strings for a strategy
/// with finitely many realizations per shot. Probabilities come from the
/// supplied priors (default: the maximally mixed state on every shot).
inline std::vector<EvolutionString> string_distribution(
    const Strategy& strategy, std::size_t n,
    const std::vector<QubitState>& priors = {}, std::size_t cap = 1000000) {
    if (!priors.empty() && priors.size() != n)
        throw LengthMismatch("need one prior per shot");
    std::vector<EvolutionString> acc{EvolutionString{{}, 1.0}};
    for (std::size_t shot = 0; shot < n; ++shot) {
        const QubitState prior =
            priors.empty() ? QubitState::maximally_mixed() : priors[shot];
        std::vector<std::pair<double, EffectiveEvolution>> options;
        for (const auto& wa : strategy.action_distribution(shot))
            for (auto& [p, evo] : action_realizations(wa.action, prior))
                if (wa.prob * p > 0.0) options.emplace_back(wa.prob * p, evo);
        if (acc.size() * options.size() > cap)
            throw ExplosionError("evolution string count exceeds cap");
        std::vector<EvolutionString> next;
        next.reserve(acc.size() * options.size());
        for (const auto& s : acc)
            for (const auto& [p, evo] : options) {
                EvolutionString grown = s;
                grown.evolutions.push_back(evo);
                grown.weight *= p;
                next.push_back(std::move(grown));
            }
        acc = std::move(next);
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Strategy configuration grammar: a name followed by key=value parameters,
// e.g. "intercept_resend basis=random" or "depolarize lambda=0.3". Mix
// components are parenthesized: "mix w=0.3 s=(depolarize lambda=1) w=0.7
// s=(passive)".
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> strategy_tokens(const std::string& spec) {
    std::vector<std::string> tokens;
    std::string cur;
    int depth = 0;
    for (char ch : spec) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (depth == 0 && (ch == ' ' || ch == '\t')) {
            if (!cur.empty()) tokens.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (depth != 0) throw ConfigError("unbalanced parentheses in strategy spec");
    if (!cur.empty()) tokens.push_back(cur);
    return tokens;
}

inline double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double out = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return out;
    } catch (const std::exception&) {
        throw ConfigError("strategy parameter `" + key + "` is not a number: " +
                          value);
    }
}

}  // namespace detail

inline StrategyPtr make_strategy(const std::string& spec) {
    const auto tokens = detail::strategy_tokens(spec);
    if (tokens.empty()) throw ConfigError("empty strategy spec");
    const std::string& name = tokens[0];

    auto get = [&](const std::string& key,
                   const char* fallback = nullptr) -> std::string {
        const std::string prefix = key + "=";
        for (std::size_t i = 1; i < tokens.size(); ++i)
            if (tokens[i].rfind(prefix, 0) == 0) return tokens[i].substr(prefix.size());
        if (fallback) return fallback;
        throw ConfigError("strategy `" + name + "` needs parameter `" + key + "`");
    };

    if (name == "passive") return passive_strategy();
    if (name == "intercept_resend") {
        const std::string basis = get("basis", "random");
        if (basis == "z") return intercept_resend_strategy(BasisPolicy::FixedZ);
        if (basis == "x") return intercept_resend_strategy(BasisPolicy::FixedX);
        if (basis == "random") return intercept_resend_strategy(BasisPolicy::Random);
        if (basis == "breidbart")
            return intercept_resend_strategy(BasisPolicy::Breidbart);
        throw ConfigError("unknown intercept basis policy: " + basis);
    }
    if (name == "depolarize")
        return depolarize_strategy(detail::parse_double("lambda", get("lambda")));
    if (name == "rotate") {
        const std::string axis = get("axis", "z");
        if (axis.size() != 1 || (axis[0] != 'x' && axis[0] != 'y' && axis[0] != 'z'))
            throw ConfigError("rotation axis must be x, y or z");
        return rotate_strategy(axis[0] - 'x',
                               detail::parse_double("angle", get("angle")));
    }
    if (name == "bit_flip")
        return bit_flip_strategy(detail::parse_double("p", get("p")));
    if (name == "phase_flip")
        return phase_flip_strategy(detail::parse_double("p", get("p")));
    if (name == "mix") {
        std::vector<std::pair<double, StrategyPtr>> parts;
        double weight = -1.0;
        for (std::size_t i = 1; i < tokens.size(); ++i) {
            if (tokens[i].rfind("w=", 0) == 0) {
                weight = detail::parse_double("w", tokens[i].substr(2));
            } else if (tokens[i].rfind("s=(", 0) == 0 && tokens[i].back() == ')') {
                if (weight < 0.0)
                    throw ConfigError("mix components must be given as w=... s=(...)");
                parts.emplace_back(
                    weight, make_strategy(tokens[i].substr(3, tokens[i].size() - 4)));
                weight = -1.0;
            } else {
                throw ConfigError("unexpected mix token: " + tokens[i]);
            }
        }
        return mix_strategy(parts);
    }
    throw ConfigError("unknown strategy: " + name);
}

}  // namespace qseal
