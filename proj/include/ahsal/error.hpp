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

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ahsal {

/// Raised for every contract violation in the library (bad dimensions,
/// empty inputs, malformed files). The message names the failing item.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-fatal diagnostics collected while processing one image.
using Warnings = std::vector<std::string>;

inline void warn(Warnings* sink, std::string message) {
    if(sink)
        sink->push_back(std::move(message));
}

} // namespace ahsal
