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

// Umbrella header.

#pragma once

#include "qkorobov/analysis.hpp"
#include "qkorobov/corpus.hpp"
#include "qkorobov/io.hpp"
#include "qkorobov/lambert_w.hpp"
#include "qkorobov/lcu.hpp"
#include "qkorobov/qsp.hpp"
#include "qkorobov/quadrature.hpp"
#include "qkorobov/resources.hpp"
#include "qkorobov/simulator.hpp"
#include "qkorobov/sparsegrid.hpp"
