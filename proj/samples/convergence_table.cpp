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

// Prints sup-norm interpolation errors of prod_j x_j(1-x_j) for d = 1, 2.

#include "qkorobov/qkorobov.hpp"

#include <cstdio>

int main() {
    for (int d : {1, 2}) {
        const auto study = qkorobov::convergence_study(qkorobov::make_function("prod-quad", d),
                                                       qkorobov::kInfinity, 1, d == 1 ? 10 : 6);
        std::printf("d=%d\n%4s %8s %14s\n", d, "n", "N", "error_inf");
        for (const auto &row : study.rows) {
            std::printf("%4d %8llu %14.6e\n", row.n, static_cast<unsigned long long>(row.N), row.error_inf);
        }
        if (study.slope) std::printf("slope %.4f\n\n", *study.slope);
    }
}
