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

#include "tmkit/truth_table_kernel.hpp"

#include <atomic>
#include <bit>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace tmkit::logic::kernel {

namespace {

bool literal_value(const CompiledLiteral &lit, std::uint64_t row, std::uint32_t n) {
    bool bit = (row >> (n - 1 - lit.var)) & 1U;
    return bit != lit.negative;
}

bool holds(const CompiledImplication &imp, std::uint64_t row, std::uint32_t n) {
    return !literal_value(imp.antecedent, row, n) || literal_value(imp.consequent, row, n);
}

// Bit j of kLowPattern[p] is bit p of j, i.e. the value of a variable whose
// row bit position is p across the 64 rows of one word.
constexpr std::uint64_t kLowPattern[6] = {
        0xAAAAAAAAAAAAAAAAULL,
        0xCCCCCCCCCCCCCCCCULL,
        0xF0F0F0F0F0F0F0F0ULL,
        0xFF00FF00FF00FF00ULL,
        0xFFFF0000FFFF0000ULL,
        0xFFFFFFFF00000000ULL,
};

std::uint64_t literal_word(const CompiledLiteral &lit, std::uint64_t word, std::uint32_t n) {
    const std::uint32_t pos = n - 1 - lit.var;
    std::uint64_t mask;
    if (pos < 6)
        mask = kLowPattern[pos];
    else
        mask = ((word << 6) >> pos) & 1U ? ~std::uint64_t {0} : std::uint64_t {0};
    return lit.negative ? ~mask : mask;
}

std::uint64_t holds_word(const CompiledImplication &imp, std::uint64_t word, std::uint32_t n) {
    return ~literal_word(imp.antecedent, word, n) | literal_word(imp.consequent, word, n);
}

std::uint64_t counter_word(const CompiledArgument &arg, std::uint64_t word) {
    std::uint64_t mask = ~holds_word(arg.goal, word, arg.variables);
    for (const CompiledImplication &p : arg.premises) {
        if (!mask) break;
        mask &= holds_word(p, word, arg.variables);
    }
    if (arg.variables < 6) mask &= (std::uint64_t {1} << arg.rows()) - 1;
    return mask;
}

} // namespace

std::uint64_t first_countermodel_serial(const CompiledArgument &arg) {
    const std::uint64_t rows = arg.rows();
    const std::uint32_t n = arg.variables;
    for (std::uint64_t row = 0; row < rows; ++row) {
        if (holds(arg.goal, row, n)) continue;
        bool premises_hold = true;
        for (const CompiledImplication &p : arg.premises) {
            if (!holds(p, row, n)) {
                premises_hold = false;
                break;
            }
        }
        if (premises_hold) return row;
    }
    return rows;
}

std::uint64_t first_countermodel_parallel(const CompiledArgument &arg) {
    const std::uint64_t rows = arg.rows();
    const std::int64_t words = static_cast<std::int64_t>((rows + 63) / 64);
    std::atomic<std::uint64_t> best {rows};

#pragma omp parallel for schedule(dynamic, 256)
    for (std::int64_t w = 0; w < words; ++w) {
        const std::uint64_t base = static_cast<std::uint64_t>(w) * 64;
        if (base >= best.load(std::memory_order_relaxed)) continue;
        const std::uint64_t mask = counter_word(arg, static_cast<std::uint64_t>(w));
        if (!mask) continue;
        const std::uint64_t row = base + static_cast<std::uint64_t>(std::countr_zero(mask));
        std::uint64_t seen = best.load(std::memory_order_relaxed);
        while (row < seen && !best.compare_exchange_weak(seen, row, std::memory_order_relaxed)) {
        }
    }
    return best.load();
}

} // namespace tmkit::logic::kernel
