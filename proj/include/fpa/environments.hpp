// Copyright 2026 The fpa-regret Authors.
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

#ifndef FPA_ENVIRONMENTS_HPP_
#define FPA_ENVIRONMENTS_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fpa/auction.hpp"
#include "fpa/nested_path.hpp"
#include "fpa/piecewise.hpp"
#include "fpa/rng.hpp"

namespace fpa {

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

// Uniform density on the rectangle v x m, with mixture weight.
struct RectComponent {
  double weight = 1.0;
  Interval v;
  Interval m;
};

// i.i.d. pairs from a finite mixture of uniform rectangles.
struct RectMixture {
  std::vector<RectComponent> components;
};

// Hard base instance for semi-transparent feedback: V uniform on [7/8, 1],
// M with density 4/(v - 1/4) on [0, 1/4) and (v - m)^-2 on [1/4, v - 1/8].
struct SlabBase {};

// Base density plus the +-16/9 perturbation on four rectangles around w;
// the expected utility gains a tent of height eps/144 centred at w.
struct SlabPerturbed {
  double w = 0.5;
  double eps = 0.01;
};

enum class Tilt { kPlus, kMinus, kNone };

// Two squares Q+ = (0,1/4)^2 and Q- = (3/4,1) x (1/4,1/2) with weights
// (1 +- eps)/2 and (1 -+ eps)/2.
struct TwoSquare {
  double eps = 0.0;
  Tilt sign = Tilt::kNone;
};

// (1, b*) or (0, b* + eps) with probability 1/2 each, with b* drawn once,
// uniform on (1/3, 1/2 - eps). Unset eps means max(3^-2T / 12, 2^-40).
struct NeedleBandit {
  std::optional<double> eps;
};

// Oblivious adversary driven by a shrinking-interval path started at
// [1/2, 2/3]: (1, L_t) or (0, U_t) with probability 1/2 each.
struct ShrinkingAdversary {};

// Smooth adversarial environment: round t draws from
// phases[(t / block_length) % phases.size()].
struct SmoothSchedule {
  std::vector<RectMixture> phases;
  std::int64_t block_length = 1;
};

using EnvironmentKind = std::variant<RectMixture, SlabBase, SlabPerturbed, TwoSquare,
                                     NeedleBandit, ShrinkingAdversary, SmoothSchedule>;

struct EnvironmentSpec {
  EnvironmentKind kind;
  std::uint64_t seed = 0;
};

class NoClosedForm : public std::invalid_argument {
 public:
  explicit NoClosedForm(const std::string& what) : std::invalid_argument(what) {}
};

// Throws std::invalid_argument when parameters violate the variant's domain.
void validate(const EnvironmentKind& kind);

std::string environment_name(const EnvironmentKind& kind);

// NeedleBandit gap used for a given horizon when none is configured.
double default_needle_eps(std::int64_t horizon);

// -- Samplers -----------------------------------------------------------------

AuctionRound sample_rect_mixture(const RectMixture& mixture, Rng& rng);
AuctionRound sample_slab_base(Rng& rng);
AuctionRound sample_slab_perturbed(double w, double eps, Rng& rng);
AuctionRound sample_two_square(double eps, Tilt sign, Rng& rng);
// Advances the path by one step and emits the round for the new interval.
AuctionRound next_shrinking_adversary(const std::shared_ptr<NestedPath>& path, Rng& rng);

// Density of the perturbed semi-transparent instance (0 outside support).
double slab_density(double v, double m);
double slab_perturbed_density(double w, double eps, double v, double m);

// Stateful generator: one per replicate, single owner.
class Environment {
 public:
  // `horizon_hint` resolves horizon-dependent defaults (NeedleBandit eps).
  explicit Environment(EnvironmentSpec spec, std::int64_t horizon_hint = 0);

  AuctionRound next_round();

  const EnvironmentSpec& spec() const { return spec_; }
  std::int64_t rounds_emitted() const { return emitted_; }

  // NeedleBandit only.
  double needle_location() const { return needle_location_; }
  double needle_eps() const { return needle_eps_; }

  // ShrinkingAdversary only; null otherwise.
  std::shared_ptr<const NestedPath> path() const { return path_; }

 private:
  EnvironmentSpec spec_;
  Rng rng_;
  std::int64_t emitted_ = 0;
  double needle_location_ = 0.0;
  double needle_eps_ = 0.0;
  std::shared_ptr<NestedPath> path_;
};

// -- Closed forms ---------------------------------------------------------------

// True for the variants whose expected utility is available in closed form
// (RectMixture, SlabBase, SlabPerturbed, TwoSquare, SmoothSchedule).
bool has_closed_form(const EnvironmentKind& kind);

// b -> E[u(b)] for an i.i.d. variant. Throws NoClosedForm otherwise.
PiecewiseQuadratic expected_utility_curve(const EnvironmentKind& kind);

double expected_utility(const EnvironmentKind& kind, double b);

// Expected utility curve of round t (0-based); equals the i.i.d. curve for
// stationary variants.
PiecewiseQuadratic round_expected_utility(const EnvironmentKind& kind, std::int64_t t);

// b -> sum over rounds 0..horizon-1 of E_t[u(b)].
PiecewiseQuadratic cumulative_expected_utility(const EnvironmentKind& kind,
                                               std::int64_t horizon);

// sigma = 1 / sup density, or nullopt for atomic variants.
std::optional<double> smoothness_of(const EnvironmentKind& kind);

// P(M <= m) for variants with a closed-form competing-bid marginal.
double competing_bid_cdf(const EnvironmentKind& kind, double m);

}  // namespace fpa

#endif  // FPA_ENVIRONMENTS_HPP_
