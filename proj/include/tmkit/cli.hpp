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

#ifndef TMKIT_CLI_HPP
#define TMKIT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tmkit::cli {

enum ExitStatus : int {
    success = 0,
    /// Validation errors, invalid argument, failed simulation or conformance.
    failure = 1,
    /// Usage, IO or parse failure.
    usage = 2,
};

/// `args` excludes the program name. Results go to `out`, diagnostics to
/// `err`. Color follows TMKIT_COLOR unless `color` is given.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err, bool color);

} // namespace tmkit::cli

#endif // TMKIT_CLI_HPP
