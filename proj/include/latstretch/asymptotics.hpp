/*
   Copyright 2026 The latstretch Authors

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

#pragma once

// Two-term lattice-count predictions, their error envelopes, and empirical
// checks of the two-term bounds for positive and nonnegative counts.

#include <span>
#include <utility>
#include <vector>

#include "latstretch/counting.hpp"
#include "latstretch/domain.hpp"
#include "latstretch/measure.hpp"

namespace latstretch {

struct Prediction {
    double leading = 0.0;
    double second = 0.0;
    /// a*^(1+(d-1)/w) t^((d-1)(1-1/w)) + a*^(2-2/(d+1)) t^(d-2+2/(d+1)), unit constant.
    double error_budget = 0.0;
    RegionKind region = RegionKind::full;
    /// False when t/a* < 1, outside the hypothesis of the asymptotic formulas.
    bool in_hypothesis = true;

    double value() const noexcept { return leading + second; }
};

Prediction predict(const Exponents& omegas, const StretchFactors& a, double t, RegionKind region);
Prediction predict(const MeasureTable& measures, const Exponents& omegas, const StretchFactors& a,
                   double t, RegionKind region);

/// Exact count minus (leading + second).
double remainder(const Exponents& omegas, const StretchFactors& a, double t, RegionKind region);

/// count(positive) <= 2^-d |D| t^d - c a* t^(d-1). Throws InvalidArgument when t/a* < 1.
bool check_two_term_upper(const Exponents& omegas, const StretchFactors& a, double t, double c);
/// count(nonnegative) >= 2^-d |D| t^d + c a* t^(d-1). Throws InvalidArgument when t/a* < 1.
bool check_two_term_lower(const Exponents& omegas, const StretchFactors& a, double t, double c);

struct BoundSample {
    StretchFactors a;
    double t = 0.0;
};

struct TwoTermConstants {
    double c_upper = 0.0;
    double c_lower = 0.0;
};

/// Minimum over samples of the normalized gaps
///   (2^-d |D| t^d - count(positive)) / (a* t^(d-1)) and
///   (count(nonnegative) - 2^-d |D| t^d) / (a* t^(d-1)).
/// Samples are evaluated in parallel; the min-reduction is order independent.
TwoTermConstants estimate_c(const Exponents& omegas, std::span<const BoundSample> samples);

/// Given positive s with prod s_j = 1 and sum s_j <= d + eps, returns
/// max_j |s_j - 1| <= C sqrt(eps). Throws InvalidArgument when the
/// hypotheses fail.
bool check_balanced_lemma(std::span<const double> s, double epsilon, double constant);

} // namespace latstretch
