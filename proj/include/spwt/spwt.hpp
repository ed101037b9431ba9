// SPDX-License-Identifier: Apache-2.0
//
// spwt: secure precise wireless transmission and jamming simulation library
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

// Umbrella header.

#pragma once

#include "spwt/array.hpp"
#include "spwt/beamform.hpp"
#include "spwt/config.hpp"
#include "spwt/csv.hpp"
#include "spwt/linalg.hpp"
#include "spwt/manifest.hpp"
#include "spwt/metrics.hpp"
#include "spwt/montecarlo.hpp"
#include "spwt/rng.hpp"
