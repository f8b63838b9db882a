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

// Interpolates a 2-D product function on a level-3 sparse grid and evaluates
// the interpolant both classically and by simulating its QSP/LCU circuit.

#include "qkorobov/qkorobov.hpp"

#include <cstdio>
#include <vector>

int main() {
    const auto fn = qkorobov::make_function("prod-sin", 2);
    const auto surplus = qkorobov::surplus_coefficients(fn.f, 3, fn.d);
    const std::vector<std::vector<double>> points{{0.3, 0.7}, {0.55, 0.2}, {0.9, 0.45}};
    for (const auto &x : points) {
        const double classical = qkorobov::evaluate_interpolant(surplus, x);
        const auto e = qkorobov::evaluate_via_circuit(surplus, x);
        std::printf("x=(%.2f, %.2f) f=%.6f classical=%.12f circuit=%.12f terms=%zu width=%zu depth=%zu\n",
                    x[0], x[1], fn.f(x), classical, e.value, e.term_count, e.report.width,
                    e.report.touch_depth);
    }
}
