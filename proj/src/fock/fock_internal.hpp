// Copyright 2026 The cvbattery Authors
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

#pragma once

#include <vector>

#include "cvb/fock.hpp"

namespace cvb::fock {

// Unitaries exponentiated on exactly m levels, without restriction.
CMatrix squeeze_unitary_full(int m, double delta, double theta);
CMatrix displace_unitary_full(int m, double amp, double phi);

// `wanted` (empty = all) selects invariant subspaces by index: total photon
// number for the beam splitter, k_a - k_b + n - 1 for the two-mode squeezer.
std::vector<PairBlock> beam_splitter_blocks(int n, double tau, const std::vector<char>& wanted);
// Blocks on the padded cutoff; `kept` marks the part inside cutoff n.
std::vector<PairBlock> two_mode_squeeze_blocks_full(int n, double delta, double theta,
                                                    const std::vector<char>& wanted);
std::vector<PairBlock> restrict_blocks(std::vector<PairBlock> blocks);

}  // namespace cvb::fock
