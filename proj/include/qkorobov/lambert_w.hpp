// Copyright 2026 The qkorobov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Principal branch of the Lambert W function on [0, inf).

#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <limits>
#include <stdexcept>

namespace qkorobov {

/// w >= 0 with w e^w = x, by Halley iteration from ln(1 + x).
///
/// The update is written in terms of r = w - x e^{-w} (the residual divided
/// by e^w) so that large x does not overflow.
template <std::floating_point Real>
Real lambert_w(Real x) {
    if (std::isnan(x) || x < Real(0)) {
        throw std::domain_error("lambert_w: argument must be non-negative");
    }
    if (x == Real(0)) return Real(0);
    if (std::isinf(x)) return x;

    constexpr Real eps = std::numeric_limits<Real>::epsilon();
    Real w = std::log1p(x);
    for (int iter = 0; iter < 64; ++iter) {
        const Real r = w - x * std::exp(-w);
        const Real wp1 = w + Real(1);
        const Real step = r / (wp1 - (w + Real(2)) * r / (Real(2) * wp1));
        w -= step;
        if (std::abs(step) <= Real(2) * eps * std::max(Real(1), std::abs(w))) break;
    }
    return w;
}

} // namespace qkorobov
