/*
 * Copyright 2026 The rtmpi Authors
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
 */

#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rtmpi/equivalence.hpp"

namespace rtmpi::equiv::detail {

/// Several systems laid side by side; state i of system k is offset[k] + i.
struct Union {
    struct Edge {
        std::size_t label; ///< 0 is tau
        std::size_t target;
        std::size_t transition; ///< index in the owning system
    };
    std::vector<std::size_t> offset;
    std::vector<std::vector<Edge>> out;
    std::vector<lts::ActionLabel> labels;

    explicit Union(const std::vector<const lts::Lts*>& systems);
    std::size_t size() const { return out.size(); }
};

/// (label, target block); the divergence mark is (npos, 0).
using Signature = std::vector<std::pair<std::size_t, std::size_t>>;

struct Refinement {
    Partition partition;
    std::vector<Signature> signature; ///< with respect to the final partition
    std::vector<bool> divergent;
};

Refinement refine(const Union& u, Mode mode);

} // namespace rtmpi::equiv::detail
