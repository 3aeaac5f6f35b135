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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rtmpi/lts.hpp"

namespace rtmpi::rtm {

/// Tape symbol for the blank cell. Never a member of Rtm::data.
inline const std::string blank = "_";
/// Action name for the silent step in rules.
inline const std::string tau = "tau";

enum class Move { left, right };

struct Rule {
    std::string state;
    std::string read;   ///< datum or blank
    std::string action; ///< action symbol or `tau`
    std::string write;  ///< datum or blank
    Move move;
    std::string target;

    friend bool operator==(const Rule&, const Rule&) = default;
};

struct Rtm {
    std::vector<std::string> states;
    std::vector<std::string> actions;
    std::vector<std::string> data;
    std::vector<Rule> rules;
    std::string initial;
};

/// Finite tape with the head inside it. Canonical tapes carry no blank
/// margins except the cell under the head.
struct TapeInstance {
    std::vector<std::string> cells{blank};
    std::size_t head = 0;

    friend bool operator==(const TapeInstance&, const TapeInstance&) = default;
};

struct Configuration {
    std::string state;
    TapeInstance tape;

    friend bool operator==(const Configuration&, const Configuration&) = default;
};

/// Parses the line-oriented machine format and validates it.
Rtm parse_rtm(std::string_view text);
/// Throws PreconditionError naming the first violated invariant.
void validate(const Rtm& m);
std::string render_rtm(const Rtm& m);

TapeInstance canonical_tape(TapeInstance tape);
Configuration initial_config(const Rtm& m);

/// `s:1,[_],0` — the bracketed cell is under the head.
std::string config_key(const Configuration& c);
Configuration parse_config_key(std::string_view key);

/// All one-step successors, sorted by (label, target key).
std::vector<std::pair<lts::ActionLabel, Configuration>> rtm_out(const Rtm& m, const Configuration& c);

lts::StepGenerator rtm_generator(const Rtm& m);
lts::StepGenerator rtm_generator(const Rtm& m, Configuration start);

} // namespace rtmpi::rtm
