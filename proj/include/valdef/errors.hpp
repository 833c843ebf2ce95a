/*
   Copyright 2026 the valdef authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef VALDEF_ERRORS_HPP
#define VALDEF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace valdef {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input text or configuration (CLI exit code 2).
struct config_error : error {
    using error::error;
};

struct parse_error : config_error {
    std::size_t position;
    parse_error(const std::string& msg, std::size_t pos)
        : config_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

// A certified answer could not be produced within the escalation budget
// ("precision exhausted", "cancellation depth exceeded").
struct precision_error : error {
    using error::error;
};

// A mathematical invariant the engine relies on failed (CLI exit code 3).
struct invariant_error : error {
    using error::error;
};

// Session-cache problems: missing or inconsistent cache (CLI exit code 4).
struct cache_error : error {
    using error::error;
};

}  // namespace valdef

#endif
