// Copyright 2026 The helpful Authors
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

#include "helpful/synthetic.hpp"

#include <algorithm>
#include <cmath>

#include "helpful/rng.hpp"

namespace helpful {

namespace {

const char* const kNeutralWords[] = {
    "the",    "this",   "product", "item",    "cream",  "bottle", "scent", "skin",
    "hair",   "color",  "size",    "package", "price",  "works",  "used",  "using",
    "after",  "before", "weeks",   "days",    "bought", "again",  "daily", "really",
    "little", "much",   "very",    "quite",   "still",  "also",   "just",  "like",
};

const char* const kPositiveWords[] = {
    "great", "good", "love", "excellent", "amazing", "perfect",
    "happy", "nice", "soft", "smooth",    "best",    "wonderful",
};

const char* const kNegativeWords[] = {
    "bad",   "terrible", "awful",  "disappointed", "broken", "waste",
    "worst", "horrible", "cheap",  "useless",      "poor",   "sticky",
};

template <std::size_t N>
const char* pick(Rng& rng, const char* const (&bank)[N]) {
  return bank[rng.below(N)];
}

int draw_image_count(Rng& rng) {
  const double u = rng.uniform();
  if (u < 0.55) return 0;
  if (u < 0.78) return 1;
  if (u < 0.90) return 2;
  if (u < 0.96) return 3;
  return 4 + static_cast<int>(rng.below(3));
}

std::string padded_id(char prefix, std::int64_t value) {
  std::string digits = std::to_string(value);
  std::string out(1, prefix);
  out.append(9 - std::min<std::size_t>(9, digits.size()), '0');
  out += digits;
  return out;
}

}  // namespace

Dataset generate_synthetic(std::int64_t n, std::uint64_t seed, double helpful_signal) {
  if (n < 1) throw ConfigError("synthetic corpus needs n >= 1");
  if (!(helpful_signal >= 0.0 && helpful_signal <= 1.0)) {
    throw ConfigError("helpful_signal must lie in [0, 1]");
  }

  Rng rng(seed);
  const double s = helpful_signal;

  // Roughly 400 reviews per author keeps the in-corpus estimate of each
  // author's mean helpfulness tight relative to the planted quality.
  const std::int64_t n_users = std::max<std::int64_t>(1, n / 400);
  const std::int64_t n_products = std::max<std::int64_t>(1, n / 50);

  std::vector<double> user_quality(static_cast<std::size_t>(n_users));
  for (double& q : user_quality) q = rng.uniform();
  std::vector<double> product_bias(static_cast<std::size_t>(n_products));
  for (double& b : product_bias) b = rng.uniform(-0.7, 0.7);

  Dataset ds;
  ds.source = "synthetic(" + std::to_string(seed) + ")";
  ds.reviews.reserve(static_cast<std::size_t>(n));

  for (std::int64_t i = 0; i < n; ++i) {
    RawReview r;
    const std::int64_t u = static_cast<std::int64_t>(rng.below(n_users));
    const std::int64_t p = static_cast<std::int64_t>(rng.below(n_products));
    const double q = user_quality[static_cast<std::size_t>(u)];

    r.user_id = padded_id('U', u);
    r.asin = padded_id('B', p);
    r.parent_asin = padded_id('B', p - p % 3);  // small product families
    r.image_count = draw_image_count(rng);

    if (rng.uniform() < 0.12) {
      r.rating = 1.0;
    } else {
      const double raw = 3.8 + 1.2 * product_bias[static_cast<std::size_t>(p)] +
                         1.0 * (rng.uniform() - 0.5) + 0.5 * (q - 0.5);
      r.rating = std::clamp(std::round(raw), 1.0, 5.0);
    }

    r.timestamp = 1450000000000LL + static_cast<std::int64_t>(rng.uniform() * 2.5e11);
    r.verified_purchase = rng.uniform() < 0.8;

    const double flavor_rate = (r.rating >= 4.0 || r.rating <= 2.0) ? 0.3 : 0.0;
    const int title_words = 1 + static_cast<int>(rng.below(3));
    for (int w = 0; w < title_words; ++w) {
      if (w > 0) r.title += ' ';
      r.title += pick(rng, kNeutralWords);
    }
    const double len_u = rng.uniform();
    const int n_words = 2 + static_cast<int>(len_u * len_u * 60.0);
    for (int w = 0; w < n_words; ++w) {
      if (w > 0) r.text += ' ';
      const bool flavored = rng.uniform() < flavor_rate;
      if (flavored && r.rating >= 4.0) {
        r.text += pick(rng, kPositiveWords);
      } else if (flavored && r.rating <= 2.0) {
        r.text += pick(rng, kNegativeWords);
      } else {
        r.text += pick(rng, kNeutralWords);
      }
    }

    // Planted propensity: steep in author quality, milder in image count.
    const double image_lift = std::min(r.image_count, 4) / 4.0;
    const double planted = std::clamp(1.55 * q - 0.33 + 0.35 * image_lift, 0.0, 1.0);
    const double noise = rng.uniform();
    const bool helpful = s * planted + (1.0 - s) * noise >= 0.5;
    const double extra = q * 4.0 + rng.uniform() * 1.5;
    r.helpful_vote = helpful ? 1 + static_cast<std::int64_t>(extra) : 0;

    ds.reviews.push_back(std::move(r));
  }
  return ds;
}

}  // namespace helpful
