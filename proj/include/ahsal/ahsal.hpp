// Copyright 2026 The ahsal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Everything except file I/O (ahsal/io.hpp, which needs OpenCV).

#pragma once

#include "ahsal/compactness.hpp"
#include "ahsal/config.hpp"
#include "ahsal/dataset.hpp"
#include "ahsal/evaluation.hpp"
#include "ahsal/foreground.hpp"
#include "ahsal/hypotheses.hpp"
#include "ahsal/imaging.hpp"
#include "ahsal/objectness.hpp"
#include "ahsal/pipeline.hpp"
#include "ahsal/proposals.hpp"
#include "ahsal/slic.hpp"
#include "ahsal/synth.hpp"

namespace ahsal {
inline constexpr const char* kVersion = "0.1.0";
}
