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

#include <cctype>
#include <utility>

#include "rtmpi/lts.hpp"

namespace rtmpi::lts {

namespace {

bool valid_name(std::string_view s)
{
    if (s.empty()) return false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '"' || c == '!' || c == '?' || c == '(' ||
            c == ')' || c == ',')
            return false;
    }
    return true;
}

void require_name(std::string_view s, const char* what)
{
    if (!valid_name(s)) throw PreconditionError(std::string("invalid ") + what + " in action label: '" + std::string(s) + "'");
}

} // namespace

ActionLabel::ActionLabel(ActionKind kind, std::string channel, std::string datum)
    : kind_(kind), channel_(std::move(channel)), datum_(std::move(datum))
{
    switch (kind_) {
    case ActionKind::tau: text_ = "tau"; break;
    case ActionKind::plain: text_ = channel_; break;
    case ActionKind::free_input: text_ = channel_ + "?" + datum_; break;
    case ActionKind::free_output: text_ = channel_ + "!" + datum_; break;
    case ActionKind::bound_output: text_ = channel_ + "!(" + datum_ + ")"; break;
    case ActionKind::nu_output: text_ = "nu!" + channel_; break;
    }
}

ActionLabel ActionLabel::tau() { return ActionLabel(ActionKind::tau, {}, {}); }

ActionLabel ActionLabel::plain(std::string symbol)
{
    require_name(symbol, "symbol");
    if (symbol == "tau" || symbol == "nu") throw PreconditionError("reserved action symbol '" + symbol + "'");
    return ActionLabel(ActionKind::plain, std::move(symbol), {});
}

ActionLabel ActionLabel::input(std::string channel, std::string datum)
{
    require_name(channel, "channel");
    require_name(datum, "datum");
    return ActionLabel(ActionKind::free_input, std::move(channel), std::move(datum));
}

ActionLabel ActionLabel::output(std::string channel, std::string datum)
{
    require_name(channel, "channel");
    require_name(datum, "datum");
    if (channel == "nu") throw PreconditionError("channel name 'nu' is reserved for nu-output labels");
    return ActionLabel(ActionKind::free_output, std::move(channel), std::move(datum));
}

ActionLabel ActionLabel::bound_output(std::string channel, std::string placeholder)
{
    require_name(channel, "channel");
    require_name(placeholder, "placeholder");
    return ActionLabel(ActionKind::bound_output, std::move(channel), std::move(placeholder));
}

ActionLabel ActionLabel::nu_output(std::string channel)
{
    require_name(channel, "channel");
    return ActionLabel(ActionKind::nu_output, std::move(channel), {});
}

ActionLabel ActionLabel::parse(std::string_view text)
{
    auto fail = [&] { return ParseError("unparseable action label '" + std::string(text) + "'"); };
    try {
        if (text == "tau") return tau();
        if (text.starts_with("nu!")) return nu_output(std::string(text.substr(3)));
        if (auto q = text.find('?'); q != std::string_view::npos)
            return input(std::string(text.substr(0, q)), std::string(text.substr(q + 1)));
        if (auto b = text.find('!'); b != std::string_view::npos) {
            auto rest = text.substr(b + 1);
            if (rest.size() >= 2 && rest.front() == '(' && rest.back() == ')')
                return bound_output(std::string(text.substr(0, b)), std::string(rest.substr(1, rest.size() - 2)));
            return output(std::string(text.substr(0, b)), std::string(rest));
        }
        return plain(std::string(text));
    } catch (const PreconditionError&) {
        throw fail();
    }
}

} // namespace rtmpi::lts
