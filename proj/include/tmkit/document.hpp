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

#ifndef TMKIT_DOCUMENT_HPP
#define TMKIT_DOCUMENT_HPP

#include <optional>
#include <vector>

#include "tmkit/dynamics.hpp"
#include "tmkit/model.hpp"

namespace tmkit {

/// Everything one `.tm` file (or its JSON twin) holds: the static region plus
/// the optional event catalog and chronology.
struct Document {
    model::StaticModel model;
    std::vector<dynamics::Event> events;
    /// Present when the source had a chronology section. Its events are the
    /// same as `events`.
    std::optional<dynamics::ChronologyGraph> chronology;
};

/// Static model compared with model::structurally_equal, events in order,
/// chronology edges in order and loop bounds as a set.
bool structurally_equal(const Document &a, const Document &b);

} // namespace tmkit

#endif // TMKIT_DOCUMENT_HPP
