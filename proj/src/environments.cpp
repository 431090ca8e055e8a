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

#include "fpa/environments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace fpa {

namespace {

constexpr double kSixFifthsLog = 0.18232155679395462;  // ln(6/5)
constexpr double kPerturbation = 16.0 / 9.0;
constexpr double kDomainSlack = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

void validate_interval(const Interval& i) {
  require(i.lo >= 0.0 && i.hi <= 1.0 && i.lo < i.hi,
          "RectMixture: intervals must be non-empty subsets of [0, 1]");
}

void validate_mixture(const RectMixture& mix) {
  require(!mix.components.empty(), "RectMixture: no components");
  double total = 0.0;
  for (const RectComponent& c : mix.components) {
    require(c.weight >= 0.0, "RectMixture: negative weight");
    validate_interval(c.v);
    validate_interval(c.m);
    total += c.weight;
  }
  require(std::abs(total - 1.0) <= 1e-9, "RectMixture: weights must sum to 1");
}

double tilt_sign(Tilt t) {
  switch (t) {
    case Tilt::kPlus:
      return 1.0;
    case Tilt::kMinus:
      return -1.0;
    case Tilt::kNone:
      return 0.0;
  }
  return 0.0;
}

const char* tilt_name(Tilt t) {
  switch (t) {
    case Tilt::kPlus:
      return "+";
    case Tilt::kMinus:
      return "-";
    case Tilt::kNone:
      return "0";
  }
  return "?";
}

// Probability of the square Q+.
double upper_square_mass(double eps, Tilt sign) {
  return 0.5 * (1.0 + tilt_sign(sign) * eps);
}

PiecewiseQuadratic slab_base_curve() {
  const double ln = kSixFifthsLog;
  return PiecewiseQuadratic({0.0, 0.25, 0.75, 0.875, 1.0},
                            {
                                {-4.0 * ln, 0.5 + ln, 0.0},  // b (1/2 + (1 - 4b) ln 6/5)
                                {0.0, 0.0, 0.125},           // plateau
                                {-4.0, 6.0, -17.0 / 8.0},    // -(4b^2 - 6b + 17/8)
                                {0.0, -1.0, 15.0 / 16.0},    // 15/16 - b
                            });
}

PiecewiseQuadratic two_square_curve(double eps, Tilt sign) {
  const double s = tilt_sign(sign) * eps;
  return PiecewiseQuadratic({0.0, 0.25, 0.5, 1.0},
                            {
                                // (1 + s) b/4 (1 - 8b)
                                {-2.0 * (1.0 + s), 0.25 * (1.0 + s), 0.0},
                                // -(16b^2 - 14b + 3)/8 + s (8b^2 - 11b + 2)/4
                                {-2.0 + 2.0 * s, 1.75 - 2.75 * s, -0.375 + 0.5 * s},
                                // (1 - 2b - 3s/4) / 2
                                {0.0, -1.0, 0.5 - 0.375 * s},
                            });
}

PiecewiseQuadratic rect_component_curve(const RectComponent& c) {
  const double ev = 0.5 * (c.v.lo + c.v.hi);
  const double m0 = c.m.lo;
  const double width = c.m.hi - c.m.lo;
  PiecewiseQuadratic curve;
  // (ev - b) (b - m0) / width on [m0, m1), ev - b above.
  curve.add_on(m0, c.m.hi, {-1.0 / width, (ev + m0) / width, -ev * m0 / width});
  curve.add_on(c.m.hi, 2.0, {0.0, -1.0, ev});
  curve *= c.weight;
  return curve;
}

PiecewiseQuadratic mixture_curve(const RectMixture& mix) {
  PiecewiseQuadratic curve;
  for (const RectComponent& c : mix.components) {
    curve += rect_component_curve(c);
  }
  return curve;
}

double mixture_sup_density(const RectMixture& mix) {
  std::vector<double> vs;
  std::vector<double> ms;
  for (const RectComponent& c : mix.components) {
    vs.insert(vs.end(), {c.v.lo, c.v.hi});
    ms.insert(ms.end(), {c.m.lo, c.m.hi});
  }
  std::sort(vs.begin(), vs.end());
  std::sort(ms.begin(), ms.end());
  double sup = 0.0;
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    if (!(vs[i + 1] > vs[i])) continue;
    const double vc = 0.5 * (vs[i] + vs[i + 1]);
    for (std::size_t j = 0; j + 1 < ms.size(); ++j) {
      if (!(ms[j + 1] > ms[j])) continue;
      const double mc = 0.5 * (ms[j] + ms[j + 1]);
      double density = 0.0;
      for (const RectComponent& c : mix.components) {
        if (vc > c.v.lo && vc < c.v.hi && mc > c.m.lo && mc < c.m.hi) {
          density += c.weight / ((c.v.hi - c.v.lo) * (c.m.hi - c.m.lo));
        }
      }
      sup = std::max(sup, density);
    }
  }
  return sup;
}

double mixture_cdf(const RectMixture& mix, double m) {
  double p = 0.0;
  for (const RectComponent& c : mix.components) {
    p += c.weight * std::clamp((m - c.m.lo) / (c.m.hi - c.m.lo), 0.0, 1.0);
  }
  return p;
}

double slab_cdf(double m) {
  if (m < 0.0) return 0.0;
  if (m < 0.25) return 4.0 * m * kSixFifthsLog;
  if (m <= 0.75) return std::log((1.0 - m) / (0.875 - m));
  if (m <= 0.875) return 8.0 * (m - 0.75) + std::log(8.0 * (1.0 - m));
  return 1.0;
}

}  // namespace

// -- Validation and naming ------------------------------------------------------

void validate(const EnvironmentKind& kind) {
  std::visit(
      Overloaded{
          [](const RectMixture& m) { validate_mixture(m); },
          [](const SlabBase&) {},
          [](const SlabPerturbed& p) {
            require(p.eps > 0.0, "SlabPerturbed: eps must be positive");
            require(
                p.w - p.eps >= 0.25 - kDomainSlack && p.w + p.eps <= 0.75 + kDomainSlack,
                "SlabPerturbed: need w - eps >= 1/4 and w + eps <= 3/4");
          },
          [](const TwoSquare& p) {
            require(p.eps >= 0.0 && p.eps < 0.5, "TwoSquare: eps must lie in [0, 1/2)");
          },
          [](const NeedleBandit& p) {
            if (p.eps) {
              require(*p.eps > 0.0 && *p.eps < 0.5 - 1.0 / 3.0,
                      "NeedleBandit: eps must lie in (0, 1/6)");
            }
          },
          [](const ShrinkingAdversary&) {},
          [](const SmoothSchedule& s) {
            require(!s.phases.empty(), "SmoothSchedule: no phases");
            require(s.block_length >= 1, "SmoothSchedule: block_length < 1");
            for (const RectMixture& m : s.phases) validate_mixture(m);
          },
      },
      kind);
}

std::string environment_name(const EnvironmentKind& kind) {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const RectMixture& m) {
                   out << "RectMixture(n=" << m.components.size() << ")";
                 },
                 [&](const SlabBase&) { out << "SlabBase"; },
                 [&](const SlabPerturbed& p) {
                   out << "SlabPerturbed(w=" << p.w << ",eps=" << p.eps << ")";
                 },
                 [&](const TwoSquare& p) {
                   out << "TwoSquare(eps=" << p.eps << ",sign=" << tilt_name(p.sign)
                       << ")";
                 },
                 [&](const NeedleBandit& p) {
                   out << "NeedleBandit";
                   if (p.eps) out << "(eps=" << *p.eps << ")";
                 },
                 [&](const ShrinkingAdversary&) { out << "ShrinkingAdversary"; },
                 [&](const SmoothSchedule& s) {
                   out << "SmoothSchedule(phases=" << s.phases.size()
                       << ",block=" << s.block_length << ")";
                 },
             },
             kind);
  return out.str();
}

double default_needle_eps(std::int64_t horizon) {
  const double nominal_eps =
      std::pow(3.0, -2.0 * static_cast<double>(std::max<std::int64_t>(horizon, 1))) /
      12.0;
  return std::max(nominal_eps, std::ldexp(1.0, -40));
}

// -- Samplers -----------------------------------------------------------------

AuctionRound sample_rect_mixture(const RectMixture& mixture, Rng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  const RectComponent* chosen = &mixture.components.back();
  for (const RectComponent& c : mixture.components) {
    acc += c.weight;
    if (u < acc) {
      chosen = &c;
      break;
    }
  }
  const double v = rng.uniform(chosen->v.lo, chosen->v.hi);
  const double m = rng.uniform(chosen->m.lo, chosen->m.hi);
  return {v, m};
}

AuctionRound sample_slab_base(Rng& rng) {
  const double v = 0.875 + 0.125 * rng.uniform();
  const double c = 1.0 / (v - 0.25);
  if (rng.uniform() < c / 8.0) {
    return {v, 0.25 * rng.uniform()};
  }
  // Inverse CDF of the density proportional to (v - m)^-2 on [1/4, v - 1/8].
  const double u = rng.uniform();
  const double m = v - 1.0 / (c + u * (8.0 - c));
  return {v, std::clamp(m, 0.25, v - 0.125)};
}

double slab_density(double v, double m) {
  if (v < 0.875 || v > 1.0 || m < 0.0) return 0.0;
  if (m < 0.25) return 4.0 / (v - 0.25);
  if (m <= v - 0.125) return 1.0 / ((v - m) * (v - m));
  return 0.0;
}

double slab_perturbed_density(double w, double eps, double v, double m) {
  double f = slab_density(v, m);
  if (f == 0.0) return 0.0;
  const bool below = m >= w - eps && m < w;
  const bool above = m >= w && m < w + eps;
  if (!below && !above) return f;
  const bool right = v >= 0.9375;
  // R1 (right, below) and R4 (left, above) gain; R2 and R3 lose.
  const bool gain = (right && below) || (!right && above);
  return f + (gain ? kPerturbation : -kPerturbation);
}

AuctionRound sample_slab_perturbed(double w, double eps, Rng& rng) {
  // f_{w,eps} <= 2 f on the support, so acceptance probability f_we / (2 f)
  // is valid and averages 1/2.
  for (;;) {
    const AuctionRound r = sample_slab_base(rng);
    const double f = slab_density(r.valuation, r.competing_bid);
    const double g = slab_perturbed_density(w, eps, r.valuation, r.competing_bid);
    if (rng.uniform() * 2.0 * f < g) return r;
  }
}

AuctionRound sample_two_square(double eps, Tilt sign, Rng& rng) {
  const double v = 0.25 * rng.uniform();
  const double m = 0.25 * rng.uniform();
  const double translate = 1.0 - upper_square_mass(eps, sign);
  if (rng.uniform() < translate) return {v + 0.75, m + 0.25};
  return {v, m};
}

AuctionRound next_shrinking_adversary(const std::shared_ptr<NestedPath>& path, Rng& rng) {
  path->advance(rng.bernoulli(0.5));
  const std::int64_t t = path->steps();
  if (rng.bernoulli(0.5)) {
    return {1.0, path->lower(t), NestedPoint{path, t, false}};
  }
  return {0.0, path->upper(t), NestedPoint{path, t, true}};
}

// -- Environment ----------------------------------------------------------------

Environment::Environment(EnvironmentSpec spec, std::int64_t horizon_hint)
    : spec_(std::move(spec)), rng_(spec_.seed) {
  validate(spec_.kind);
  if (const auto* needle = std::get_if<NeedleBandit>(&spec_.kind)) {
    needle_eps_ = needle->eps.value_or(default_needle_eps(horizon_hint));
    Rng seed_stream = rng_.split(0x6e656564);
    needle_location_ = seed_stream.uniform(1.0 / 3.0, 0.5 - needle_eps_);
  }
  if (std::holds_alternative<ShrinkingAdversary>(spec_.kind)) {
    path_ = std::make_shared<NestedPath>();
  }
}

AuctionRound Environment::next_round() {
  const std::int64_t t = emitted_++;
  return std::visit(
      Overloaded{
          [&](const RectMixture& m) { return sample_rect_mixture(m, rng_); },
          [&](const SlabBase&) { return sample_slab_base(rng_); },
          [&](const SlabPerturbed& p) { return sample_slab_perturbed(p.w, p.eps, rng_); },
          [&](const TwoSquare& p) { return sample_two_square(p.eps, p.sign, rng_); },
          [&](const NeedleBandit&) {
            if (rng_.bernoulli(0.5)) return AuctionRound(1.0, needle_location_);
            return AuctionRound(0.0, needle_location_ + needle_eps_);
          },
          [&](const ShrinkingAdversary&) {
            return next_shrinking_adversary(path_, rng_);
          },
          [&](const SmoothSchedule& s) {
            const std::size_t phase = static_cast<std::size_t>(
                (t / s.block_length) % static_cast<std::int64_t>(s.phases.size()));
            return sample_rect_mixture(s.phases[phase], rng_);
          },
      },
      spec_.kind);
}

// -- Closed forms ---------------------------------------------------------------

bool has_closed_form(const EnvironmentKind& kind) {
  return !std::holds_alternative<NeedleBandit>(kind) &&
         !std::holds_alternative<ShrinkingAdversary>(kind);
}

PiecewiseQuadratic expected_utility_curve(const EnvironmentKind& kind) {
  return std::visit(
      Overloaded{
          [](const RectMixture& m) { return mixture_curve(m); },
          [](const SlabBase&) { return slab_base_curve(); },
          [](const SlabPerturbed& p) {
            PiecewiseQuadratic curve = slab_base_curve();
            // (eps/144) * tent centred at w with radius eps.
            curve.add_on(p.w - p.eps, p.w, {0.0, 1.0 / 144.0, (p.eps - p.w) / 144.0});
            curve.add_on(p.w, p.w + p.eps, {0.0, -1.0 / 144.0, (p.eps + p.w) / 144.0});
            return curve;
          },
          [](const TwoSquare& p) { return two_square_curve(p.eps, p.sign); },
          [&](const auto&) -> PiecewiseQuadratic {
            throw NoClosedForm("no closed-form expected utility for " +
                               environment_name(kind));
          },
      },
      kind);
}

double expected_utility(const EnvironmentKind& kind, double b) {
  if (!(b >= 0.0 && b <= 1.0)) throw std::domain_error("bid outside [0, 1]");
  return expected_utility_curve(kind)(b);
}

PiecewiseQuadratic round_expected_utility(const EnvironmentKind& kind, std::int64_t t) {
  if (const auto* s = std::get_if<SmoothSchedule>(&kind)) {
    const std::size_t phase = static_cast<std::size_t>(
        (t / s->block_length) % static_cast<std::int64_t>(s->phases.size()));
    return mixture_curve(s->phases[phase]);
  }
  return expected_utility_curve(kind);
}

PiecewiseQuadratic cumulative_expected_utility(const EnvironmentKind& kind,
                                               std::int64_t horizon) {
  if (const auto* s = std::get_if<SmoothSchedule>(&kind)) {
    const auto n = static_cast<std::int64_t>(s->phases.size());
    std::vector<std::int64_t> counts(s->phases.size(), 0);
    for (std::int64_t start = 0, block = 0; start < horizon;
         start += s->block_length, ++block) {
      counts[static_cast<std::size_t>(block % n)] +=
          std::min(s->block_length, horizon - start);
    }
    PiecewiseQuadratic total;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      if (counts[k] > 0) {
        total += static_cast<double>(counts[k]) * mixture_curve(s->phases[k]);
      }
    }
    return total;
  }
  return static_cast<double>(horizon) * expected_utility_curve(kind);
}

std::optional<double> smoothness_of(const EnvironmentKind& kind) {
  return std::visit(
      Overloaded{
          [](const RectMixture& m) -> std::optional<double> {
            return 1.0 / mixture_sup_density(m);
          },
          // sup of (v - m)^-2 on the slab m <= v - 1/8 is 64.
          [](const SlabBase&) -> std::optional<double> { return 1.0 / 64.0; },
          [](const SlabPerturbed&) -> std::optional<double> {
            return 1.0 / (64.0 + kPerturbation);
          },
          [](const TwoSquare& p) -> std::optional<double> {
            const double tilt = p.sign == Tilt::kNone ? 0.0 : p.eps;
            return 1.0 / (8.0 * (1.0 + tilt));
          },
          [](const NeedleBandit&) -> std::optional<double> { return std::nullopt; },
          [](const ShrinkingAdversary&) -> std::optional<double> { return std::nullopt; },
          [](const SmoothSchedule& s) -> std::optional<double> {
            double sup = 0.0;
            for (const RectMixture& m : s.phases) {
              sup = std::max(sup, mixture_sup_density(m));
            }
            return 1.0 / sup;
          },
      },
      kind);
}

double competing_bid_cdf(const EnvironmentKind& kind, double m) {
  return std::visit(Overloaded{
                        [m](const RectMixture& mix) { return mixture_cdf(mix, m); },
                        // The perturbation integrates to zero over v for every m.
                        [m](const SlabBase&) { return slab_cdf(m); },
                        [m](const SlabPerturbed&) { return slab_cdf(m); },
                        [m](const TwoSquare& p) {
                          const double upper = upper_square_mass(p.eps, p.sign);
                          return upper * std::clamp(4.0 * m, 0.0, 1.0) +
                                 (1.0 - upper) * std::clamp(4.0 * (m - 0.25), 0.0, 1.0);
                        },
                        [&](const auto&) -> double {
                          throw NoClosedForm("no closed-form competing-bid law for " +
                                             environment_name(kind));
                        },
                    },
                    kind);
}

}  // namespace fpa
