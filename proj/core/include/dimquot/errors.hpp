/* Copyright 2026 The dimquot Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */

#pragma once

#include <stdexcept>
#include <string>

namespace dimquot {

    /// Base class of every exception thrown by the library.
    class Error : public std::runtime_error {
    public:
        using std::runtime_error::runtime_error;
    };

    /// An argument violates an operation's precondition (shape mismatch, non-normal subgroup, ...).
    class PreconditionError : public Error {
    public:
        using Error::Error;
    };

    /// A hard size cap was exceeded (group order, degree, enumeration size).
    class ResourceLimitError : public Error {
    public:
        using Error::Error;
    };

    /// Malformed textual input (group specs, relator expressions, table files).
    class ParseError : public Error {
    public:
        using Error::Error;
    };

    /// An internal consistency check failed; indicates a bug, never bad input.
    class InvariantError : public Error {
    public:
        using Error::Error;
    };

}  // namespace dimquot
