// Copyright 2026 The povmforge Authors
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

#include "povmforge/parallel.hpp"

#include <cstdlib>
#include <string>

namespace povmforge {

unsigned default_workers() {
    const char *env = std::getenv("POVMFORGE_WORKERS");
    if (env == nullptr || *env == '\0') {
        return 1;
    }
    try {
        const long value = std::stol(env);
        if (value >= 1 && value <= 1024) {
            return static_cast<unsigned>(value);
        }
    } catch (const std::exception &) {
    }
    return 1;
}

}  // namespace povmforge
