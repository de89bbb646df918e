// SPDX-License-Identifier: Apache-2.0
//
// irsim - link-level simulator for IRS-aided downlinks under channel aging and phase noise
// Copyright (C) 2026 The irsim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef IRSIM_IRSIM_HPP
#define IRSIM_IRSIM_HPP

#include "numerics.hpp"
#include "impairments.hpp"
#include "channel_model.hpp"
#include "beamforming.hpp"
#include "scenario_config.hpp"
#include "results_io.hpp"
#include "experiment.hpp"
#include "verification.hpp"

#endif
