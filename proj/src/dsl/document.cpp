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

#include <algorithm>
#include <tuple>

#include "tmkit/document.hpp"

namespace tmkit {

bool structurally_equal(const Document &a, const Document &b) {
    if (!model::structurally_equal(a.model, b.model) || a.events != b.events) return false;
    if (a.chronology.has_value() != b.chronology.has_value()) return false;
    if (!a.chronology) return true;
    if (a.chronology->edges() != b.chronology->edges()) return false;
    auto bounds = [](const dynamics::ChronologyGraph &g) {
        std::vector<std::tuple<std::string, std::string, int>> out;
        for (const dynamics::LoopBound &lb : g.loop_bounds())
            out.emplace_back(lb.from, lb.to, lb.max_iterations);
        std::sort(out.begin(), out.end());
        return out;
    };
    return bounds(*a.chronology) == bounds(*b.chronology);
}

} // namespace tmkit
