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

#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "rtmpi/error.hpp"

namespace rtmpi::lts {

enum class ActionKind {
    tau,
    plain,        ///< RTM action symbol
    free_input,   ///< x?y
    free_output,  ///< x!y
    bound_output, ///< x!(z), z a placeholder for the extruded name
    nu_output,    ///< nu!x, the anonymised bound output
};

/**
 * Transition label shared by RTM and pi-calculus systems.
 *
 * Labels order and compare by their rendering, which is also the text used
 * in .aut files: `tau`, `a`, `x?y`, `x!y`, `x!(z)`, `nu!x`.
 */
class ActionLabel {
public:
    static ActionLabel tau();
    static ActionLabel plain(std::string symbol);
    static ActionLabel input(std::string channel, std::string datum);
    static ActionLabel output(std::string channel, std::string datum);
    static ActionLabel bound_output(std::string channel, std::string placeholder);
    static ActionLabel nu_output(std::string channel);

    /// Inverse of render(); throws ParseError on text no constructor produces.
    static ActionLabel parse(std::string_view text);

    ActionKind kind() const { return kind_; }
    bool is_tau() const { return kind_ == ActionKind::tau; }
    /// Symbol for plain labels, channel for the pi-calculus kinds.
    const std::string& channel() const { return channel_; }
    /// Received/sent name or bound placeholder; empty for tau, plain and nu.
    const std::string& datum() const { return datum_; }

    const std::string& render() const { return text_; }

    friend bool operator==(const ActionLabel& a, const ActionLabel& b) { return a.text_ == b.text_; }
    friend std::strong_ordering operator<=>(const ActionLabel& a, const ActionLabel& b)
    {
        return a.text_ <=> b.text_;
    }

private:
    ActionLabel(ActionKind kind, std::string channel, std::string datum);

    ActionKind kind_;
    std::string channel_;
    std::string datum_;
    std::string text_;
};

using LabelSet = std::set<ActionLabel>;

struct Transition {
    std::size_t source;
    ActionLabel label;
    std::size_t target;
};

/**
 * Finite explored transition system.
 *
 * States carry pairwise distinct canonical keys. Frontier states are the
 * ones where exploration stopped; they never have outgoing transitions.
 */
class Lts {
public:
    /// Appends a state; throws PreconditionError if the key already exists.
    std::size_t add_state(std::string key);
    /// Returns the existing index for `key` or appends a new state.
    std::size_t intern_state(const std::string& key);
    void add_transition(std::size_t source, ActionLabel label, std::size_t target);
    void set_initial(std::size_t state);
    void mark_frontier(std::size_t state);

    std::size_t num_states() const { return keys_.size(); }
    std::size_t num_transitions() const { return transitions_.size(); }
    std::size_t initial() const { return initial_; }
    const std::string& key(std::size_t state) const { return keys_.at(state); }
    const std::vector<std::string>& keys() const { return keys_; }
    std::optional<std::size_t> find(const std::string& key) const;

    const std::vector<Transition>& transitions() const { return transitions_; }
    /// Indices into transitions() of the edges leaving `state`.
    std::span<const std::size_t> outgoing(std::size_t state) const { return outgoing_.at(state); }

    bool is_frontier(std::size_t state) const { return frontier_.at(state); }
    bool has_frontier() const { return frontier_count_ != 0; }
    std::size_t frontier_size() const { return frontier_count_; }
    std::vector<std::size_t> frontier_states() const;

private:
    std::vector<std::string> keys_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<Transition> transitions_;
    std::vector<std::vector<std::size_t>> outgoing_;
    std::vector<bool> frontier_;
    std::size_t frontier_count_ = 0;
    std::size_t initial_ = 0;
};

struct Successor {
    ActionLabel label;
    std::string target;
};

/**
 * Successor function over canonical state keys. Must be deterministic:
 * the same key always yields the same successor multiset.
 */
struct StepGenerator {
    std::string initial;
    std::function<std::vector<Successor>(const std::string&)> successors;
};

/// Raised by explore() when the generator fails on a state.
class ExplorationError : public Error {
public:
    ExplorationError(const std::string& state_key, const std::string& cause)
        : Error("generator failed on state " + state_key + ": " + cause), state_key_(state_key)
    {
    }
    const std::string& state_key() const { return state_key_; }

private:
    std::string state_key_;
};

struct ExploreBounds {
    std::size_t max_states = 20000;
    std::size_t max_depth = 200;
};

/**
 * Breadth-first closure of `gen.initial`.
 *
 * A state at depth max_depth, or one whose expansion would push the state
 * count past max_states, is kept as a frontier state with no successors.
 * Successor lists are sorted by (rendered label, target key).
 */
Lts explore(const StepGenerator& gen, ExploreBounds bounds);

/**
 * Generator whose states are (key, number of visible steps taken so far).
 * States that have taken `max_visible` visible steps get no successors,
 * which truncates two systems at the same visible-trace depth.
 */
StepGenerator unfold_visible(StepGenerator inner, std::size_t max_visible);

/// Generator-level form of restrict(): same transitions, computed on the fly.
StepGenerator restrict_generator(StepGenerator inner, std::set<std::string> allowed_inputs);

/**
 * Restriction to a finite set of input names: free inputs of other names are
 * dropped, bound outputs become nu-outputs and unreachable states are pruned.
 * Requires a frontier-free system unless `acknowledge_frontier` is set.
 */
Lts restrict(const Lts& l, const std::set<std::string>& allowed_inputs, bool acknowledge_frontier = false);

LabelSet labels(const Lts& l);

/// Applies a label substitution; labels missing from the map are kept.
Lts relabel(const Lts& l, const std::map<ActionLabel, ActionLabel>& mapping);

/// Copy of `l` renumbered breadth-first from the initial state.
Lts canonical_order(const Lts& l);

/// Aldebaran text. Throws PreconditionError on frontier states unless acknowledged.
std::string write_aut(const Lts& l, bool acknowledge_frontier = false);
Lts read_aut(std::string_view text);

/// Graph isomorphism test used by round-trip checks (exact, backtracking).
bool isomorphic(const Lts& a, const Lts& b);

} // namespace rtmpi::lts
