/*******************************************************************************
 * Copyright 2026 The tmkit Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *******************************************************************************/

#ifndef TMKIT_ERROR_HPP
#define TMKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace tmkit {

/// Base of every exception thrown by the library. Callers that only need a
/// message can catch this; the derived types carry structured detail.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A model-building request referenced something that does not exist or
/// collided with an existing id.
class ModelError : public Error {
public:
    using Error::Error;
};

/// Raised by the dynamic layer: bad event regions, unbounded cycles,
/// exhausted scenarios.
class DynamicsError : public Error {
public:
    using Error::Error;
};

class LogicError : public Error {
public:
    using Error::Error;
};

/// Malformed input for one of the interchange formats (JSON documents,
/// flowchart charts, scenario and argument files).
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace tmkit

#endif // TMKIT_ERROR_HPP
