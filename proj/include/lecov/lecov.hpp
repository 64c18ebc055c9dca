// Copyright 2026 The LeCov Authors
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

// Everything except the command line layer.

#pragma once

#include "lecov/calibration.hpp"
#include "lecov/coverage.hpp"
#include "lecov/error.hpp"
#include "lecov/harness.hpp"
#include "lecov/mutator.hpp"
#include "lecov/prioritizer.hpp"
#include "lecov/protocol.hpp"
#include "lecov/refmodel.hpp"
#include "lecov/report.hpp"
#include "lecov/rng.hpp"
#include "lecov/runner.hpp"
#include "lecov/stats.hpp"
#include "lecov/trace.hpp"
#include "lecov/trace_io.hpp"
