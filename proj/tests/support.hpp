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
#include <random>
#include <string>

#include "rtmpi/compiler.hpp"
#include "rtmpi/equivalence.hpp"
#include "rtmpi/lts.hpp"
#include "rtmpi/pi.hpp"
#include "rtmpi/rtm.hpp"

namespace rtmpi::testing {

std::string corpus(const std::string& name);
std::string corpus_text(const std::string& name);

lts::Lts explore_all(const lts::StepGenerator& g, std::size_t max_states = 20000);
/// Explores p with inputs over free_data.
lts::Lts pi_lts(const pi::TermPtr& p, std::set<std::string> free_data = {}, bool eager = false);

/// A system by hand: "0 a 1; 1 tau 0", labels in rendered form (states are numbered from 0, initial 0).
lts::Lts make_lts(std::size_t states, const std::string& edges);

/// Random system with every state reachable: ≤ max_states states and
/// ≤ max_trans transitions over tau and the first (labels - 1) of a, b, c.
lts::Lts random_lts(std::mt19937& rng, std::size_t max_states = 8, std::size_t max_trans = 12, std::size_t labels = 3);

/// Random finite-state term (no replication) over the names a, b, x.
pi::TermPtr random_term(std::mt19937& rng, int depth = 4);
/// A structurally congruent variant: alpha-renamed binders, permuted sums and
/// products, added 0 components and restrictions of unused names.
pi::TermPtr congruent_variant(std::mt19937& rng, const pi::TermPtr& p);
/// Inserts tau before one random prefix continuation.
pi::TermPtr insert_tau(std::mt19937& rng, const pi::TermPtr& p);

/// A tape seen from its control: reads and writes of data, and fresh names
/// sent on left/right. Labels become read_d, write_e, left and right.
lts::StepGenerator tape_interface(const rtm::Rtm& m, const pi::TermPtr& tape, bool eager = false);

/// Abstract tape with the same interface: reads of the cell under the head,
/// writes of any symbol, and head moves that create blank cells at the ends.
lts::StepGenerator reference_tape(const rtm::Rtm& m, const rtm::TapeInstance& tape);

bool equivalent(const lts::Lts& a, const lts::Lts& b, equiv::Mode mode);

} // namespace rtmpi::testing
