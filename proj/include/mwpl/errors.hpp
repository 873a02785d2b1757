// Copyright 2026 The mwpl Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace mwpl {

/// Raised for every problem caused by user-supplied data or arguments:
/// malformed files, invariant violations, degenerate geometry, bad flags.
/// The CLI maps it to exit code 2; anything else is an internal failure.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace mwpl
