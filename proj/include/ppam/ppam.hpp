// Copyright 2026 The PPAM Authors
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

#ifndef PPAM_PPAM_HPP_
#define PPAM_PPAM_HPP_

#include "ppam/apriori.hpp"
#include "ppam/attack_sim.hpp"
#include "ppam/evaluation.hpp"
#include "ppam/fs_scheme.hpp"
#include "ppam/hs_scheme.hpp"
#include "ppam/market_basket.hpp"
#include "ppam/math.hpp"
#include "ppam/privacy_analysis.hpp"
#include "ppam/ps_scheme.hpp"
#include "ppam/random.hpp"

#endif  // PPAM_PPAM_HPP_
