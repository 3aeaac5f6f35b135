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
#include <string>

#include "rtmpi/pi.hpp"

namespace rtmpi::pi::detail {

/// Deterministic supply of `<prefix><k>` names.
class FreshSupply {
public:
    /// Starts above every `<prefix><k>` occurring (free or bound) in p.
    FreshSupply(std::string prefix, const TermPtr& p);
    explicit FreshSupply(std::string prefix) : prefix_(std::move(prefix)) {}

    std::string take() { return prefix_ + std::to_string(next_++); }
    void reserve_above(const std::string& name);

private:
    std::string prefix_;
    std::size_t next_ = 0;
};

/// Prefix of names produced by binder freshening inside one operation.
inline const std::string temp_prefix = "_t";
/// Prefix of canonical binder names in normal forms.
inline const std::string canon_prefix = "_b";
/// Prefix of placeholders for received fresh names and extruded names.
inline const std::string placeholder_prefix = "_f";
/// Prefix of link names introduced by polyadic expansion.
inline const std::string link_prefix = "_w";

TermPtr subst(const TermPtr& p, const std::string& from, const std::string& to, FreshSupply& fresh);
/// Renames every binder of p to a distinct name from `fresh`.
TermPtr freshen(const TermPtr& p, FreshSupply& fresh);
void all_names(const TermPtr& p, std::set<std::string>& out);
bool occurs_free(const TermPtr& p, const std::string& name);

} // namespace rtmpi::pi::detail

namespace rtmpi::pi::detail {

/// normalize(p) together with its rendering, computed in one pass. With
/// eager_links, private handshakes are fired before rendering.
std::pair<TermPtr, std::string> canonical_form(const TermPtr& p, bool eager_links = false);

} // namespace rtmpi::pi::detail
