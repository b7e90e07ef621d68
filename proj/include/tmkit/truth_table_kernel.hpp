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

#ifndef TMKIT_TRUTH_TABLE_KERNEL_HPP
#define TMKIT_TRUTH_TABLE_KERNEL_HPP

#include <cstdint>
#include <vector>

namespace tmkit::logic::kernel {

// Row r assigns variable i the bit (r >> (n - 1 - i)) & 1, so variable 0 is
// the most significant and increasing r is lexicographic order with F < T.

struct CompiledLiteral {
    std::uint32_t var = 0;
    bool negative = false;
};

struct CompiledImplication {
    CompiledLiteral antecedent;
    CompiledLiteral consequent;
};

struct CompiledArgument {
    std::uint32_t variables = 0;
    std::vector<CompiledImplication> premises;
    CompiledImplication goal;

    std::uint64_t rows() const { return std::uint64_t {1} << variables; }
};

/// Row-at-a-time reference. Returns the first row where every premise holds
/// and the goal fails, or rows() when there is none.
std::uint64_t first_countermodel_serial(const CompiledArgument &arg);

/// Bit-sliced evaluation of 64 rows per word, words spread over OpenMP
/// threads. Returns exactly what the serial reference returns.
std::uint64_t first_countermodel_parallel(const CompiledArgument &arg);

} // namespace tmkit::logic::kernel

#endif // TMKIT_TRUTH_TABLE_KERNEL_HPP
