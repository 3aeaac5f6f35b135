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
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rtmpi/lts.hpp"

namespace rtmpi::equiv {

enum class Mode { bb, dpbb };

std::string to_string(Mode m);
/// Accepts "bb" and "dpbb"; throws PreconditionError otherwise.
Mode parse_mode(const std::string& text);

enum class Verdict { equivalent, inequivalent, indeterminate_frontier };

std::string to_string(Verdict v);

/// Disjoint cover of a state set, given as a block index per state.
struct Partition {
    std::vector<std::size_t> block_of;
    std::size_t num_blocks = 0;

    std::vector<std::vector<std::size_t>> blocks() const;
};

/// Pairs (state of the first system, state of the second system).
using Relation = std::vector<std::pair<std::size_t, std::size_t>>;

/// An obligation one side can meet and the other cannot.
struct Evidence {
    int side = 1;              ///< system (1 or 2) owning the unmatched behaviour
    std::size_t state = 0;     ///< state of that system
    bool divergence = false;   ///< unmatched divergence instead of a step
    std::optional<lts::ActionLabel> label;
    std::size_t target = 0;    ///< target of the unmatched step
    std::string describe() const;
};

struct EquivResult {
    Verdict verdict = Verdict::indeterminate_frontier;
    Relation witness;                 ///< set when equivalent
    std::optional<Evidence> evidence; ///< set when inequivalent
};

/**
 * True iff every pair of r satisfies the transfer clauses of branching
 * bisimulation and, with `divergence`, the two divergence clauses. An infinite
 * tau-sequence of related states is detected as a reachable tau-cycle in the
 * finite graph of the states related to the fixed partner.
 */
bool check_relation(const lts::Lts& l1, const lts::Lts& l2, const Relation& r, bool divergence);

/// Greatest-fixpoint oracle; refuses inputs with more than max_pairs pairs.
/// Returns the fixpoint as witness; it carries no evidence.
EquivResult oracle(const lts::Lts& l1, const lts::Lts& l2, bool divergence, std::size_t max_pairs = 4096);

/**
 * Signature partition refinement on the disjoint union. Frontier inputs are
 * rejected unless acknowledged, and then yield indeterminate_frontier.
 */
EquivResult branching_bisim(const lts::Lts& l1, const lts::Lts& l2, bool acknowledge_frontier = false);
EquivResult dp_branching_bisim(const lts::Lts& l1, const lts::Lts& l2, bool acknowledge_frontier = false);
EquivResult check(const lts::Lts& l1, const lts::Lts& l2, Mode mode, bool acknowledge_frontier = false);

/// Coarsest (divergence-preserving) branching bisimulation of one system.
Partition coarsest_partition(const lts::Lts& l, Mode mode);

/// States with an infinite tau-path that never leaves their block of p.
std::set<std::size_t> divergence_classes(const lts::Lts& l, const Partition& p);

struct DegreeReport {
    std::vector<std::size_t> degree; ///< per state
    std::size_t supremum = 0;
    std::size_t witness_state = 0;   ///< a state attaining the supremum
};

/**
 * Branching degree up to divergence-preserving branching bisimilarity:
 * the number of distinct (action, target block) pairs reachable through
 * tau-paths inside the state's own block, inert tau-steps excluded.
 */
DegreeReport branching_degree(const lts::Lts& l);

} // namespace rtmpi::equiv
