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

#include <limits>

#include "refine.hpp"

namespace rtmpi::equiv {

DegreeReport branching_degree(const lts::Lts& l)
{
    if (l.has_frontier()) throw PreconditionError("branching degree needs a frontier-free system");
    detail::Union u({&l});
    auto r = detail::refine(u, Mode::dpbb);
    // with respect to the stable partition, a signature is exactly the set of
    // (action, target block) options reachable inside the state's own block
    DegreeReport rep;
    rep.degree.resize(l.num_states());
    for (std::size_t s = 0; s < l.num_states(); ++s) {
        std::size_t n = 0;
        for (const auto& item : r.signature[s])
            if (item.first != std::numeric_limits<std::size_t>::max()) ++n;
        rep.degree[s] = n;
        if (n > rep.supremum) {
            rep.supremum = n;
            rep.witness_state = s;
        }
    }
    return rep;
}

} // namespace rtmpi::equiv
