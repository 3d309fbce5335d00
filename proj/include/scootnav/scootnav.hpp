// Copyright 2026 The scootnav Authors
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

#ifndef SCOOTNAV_SCOOTNAV_HPP
#define SCOOTNAV_SCOOTNAV_HPP

#include "scootnav/config.hpp"
#include "scootnav/error.hpp"
#include "scootnav/geodesy.hpp"
#include "scootnav/io.hpp"
#include "scootnav/localization.hpp"
#include "scootnav/nmpc.hpp"
#include "scootnav/path.hpp"
#include "scootnav/qp.hpp"
#include "scootnav/refgen.hpp"
#include "scootnav/replay.hpp"
#include "scootnav/sim.hpp"
#include "scootnav/svg.hpp"
#include "scootnav/vehicle.hpp"

#endif  // SCOOTNAV_SCOOTNAV_HPP
