// Copyright 2026 The homsim Authors
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

#ifndef HOMSIM_HOMSIM_HPP_
#define HOMSIM_HOMSIM_HPP_

#include "homsim/beam_splitter_decomposition.hpp"
#include "homsim/block_kernel.hpp"
#include "homsim/devices.hpp"
#include "homsim/errors.hpp"
#include "homsim/frequency_grid.hpp"
#include "homsim/hom_analysis.hpp"
#include "homsim/scenario.hpp"
#include "homsim/serialization.hpp"
#include "homsim/time_domain.hpp"
#include "homsim/two_photon_state.hpp"
#include "homsim/wavepacket.hpp"

#endif  // HOMSIM_HOMSIM_HPP_
