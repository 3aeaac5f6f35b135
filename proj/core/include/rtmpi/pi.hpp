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

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rtmpi/lts.hpp"

namespace rtmpi::pi {

enum class Kind {
    nil,
    tau,      ///< tau.P
    out,      ///< x!y.P            channel, names = {y}
    in,       ///< x?(y).P          channel, names = {y} (binder)
    sum,      ///< P1 + ... + Pn    kids
    par,      ///< P1 | ... | Pn     kids
    res,      ///< (v z1,...,zn)P   names = binders
    bang,     ///< !P
    poly_out, ///< x!<y1,...,yn>.P  sugar
    poly_in,  ///< x?(z1,...,zn).P  sugar, names are binders
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
    Kind kind;
    std::string channel;
    std::vector<std::string> names;
    std::vector<TermPtr> kids;

    const TermPtr& body() const { return kids.front(); }
};

TermPtr nil();
TermPtr tau(TermPtr body);
TermPtr out(std::string channel, std::string datum, TermPtr body);
TermPtr in(std::string channel, std::string binder, TermPtr body);
TermPtr poly_out(std::string channel, std::vector<std::string> data, TermPtr body);
TermPtr poly_in(std::string channel, std::vector<std::string> binders, TermPtr body);
TermPtr sum(std::vector<TermPtr> summands);
TermPtr par(std::vector<TermPtr> components);
TermPtr res(std::vector<std::string> binders, TermPtr body);
TermPtr res(std::string binder, TermPtr body);
TermPtr bang(TermPtr body);

/// Generated names start with '_' and cannot be written in source text.
bool is_reserved_name(std::string_view name);

/// Surface syntax. `allow_reserved` admits '_'-prefixed names, which only
/// appear in rendered canonical terms.
TermPtr parse_pi(std::string_view text, bool allow_reserved = false);
/// Inverse of parse_pi up to redundant parentheses.
std::string render(const TermPtr& p);

std::set<std::string> free_names(const TermPtr& p);
std::set<std::string> bound_names(const TermPtr& p);

/// Replaces polyadic prefixes by their monadic encodings. A polyadic output
/// in a summand scopes its link name over the whole sum.
TermPtr expand_polyadic(const TermPtr& p);

/// Capture-avoiding p{replacement/target}.
TermPtr substitute(const TermPtr& p, const std::string& target, const std::string& replacement);

/// Structural-congruence canonical form: flat sorted Nil-free sums and
/// products, restrictions pushed to the smallest enclosing scope, binders
/// named `_b<k>` by depth. Expands polyadic sugar first.
TermPtr normalize(const TermPtr& p);
/// render(normalize(p)); the state key of p.
std::string canonical_key(const TermPtr& p);
bool alpha_eq(const TermPtr& p, const TermPtr& q);

struct NameUniverse {
    std::set<std::string> free_data;
    /// Collapse private handshakes: a communication on a restricted name
    /// shared by exactly one blocked sender and one blocked receiver is
    /// performed as soon as it is enabled. Such a step is inert and confluent,
    /// so the reduced LTS is divergence-preserving branching bisimilar to the
    /// full one; it removes the interleavings of polyadic link protocols.
    bool eager_links = false;
};

struct Step {
    lts::ActionLabel label;
    TermPtr target;
};

/**
 * One-step transitions of a normalized, sugar-free term. Inputs are
 * instantiated over free_data, the free names of p and one fresh name;
 * bound outputs use the first unused `_f<k>` as placeholder. Targets are
 * normalized and the result is sorted by (label, target key).
 */
std::vector<Step> pi_out(const TermPtr& p, const NameUniverse& u);

/// Normalizes p first; state keys are canonical renderings.
lts::StepGenerator pi_generator(const TermPtr& p, NameUniverse u);

} // namespace rtmpi::pi
