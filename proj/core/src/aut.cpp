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

#include <charconv>
#include <sstream>

#include "rtmpi/lts.hpp"

namespace rtmpi::lts {

std::string write_aut(const Lts& l, bool acknowledge_frontier)
{
    if (l.has_frontier() && !acknowledge_frontier)
        throw PreconditionError("cannot write .aut: " + std::to_string(l.frontier_size()) +
                                " frontier state(s) would be exported as deadlocks");
    Lts c = canonical_order(l);
    std::string out = "des (" + std::to_string(c.initial()) + ", " + std::to_string(c.num_transitions()) + ", " +
                      std::to_string(c.num_states()) + ")\n";
    for (const auto& t : c.transitions()) {
        out += '(';
        out += std::to_string(t.source);
        out += ",\"";
        out += t.label.render();
        out += "\",";
        out += std::to_string(t.target);
        out += ")\n";
    }
    return out;
}

namespace {

class AutReader {
public:
    explicit AutReader(std::string_view text) : text_(text) {}

    Lts run()
    {
        skip_blank_lines();
        expect_word("des");
        expect('(');
        auto init = number();
        expect(',');
        auto ntrans = number();
        expect(',');
        auto nstates = number();
        expect(')');
        end_of_line();
        if (nstates == 0) fail("state count must be positive");
        if (init >= nstates) fail("initial state out of range");

        Lts l;
        for (std::size_t s = 0; s < nstates; ++s) l.add_state(std::to_string(s));
        l.set_initial(init);
        for (std::size_t i = 0; i < ntrans; ++i) {
            skip_blank_lines();
            if (pos_ >= text_.size()) fail("expected " + std::to_string(ntrans) + " transitions, found " + std::to_string(i));
            expect('(');
            auto src = number();
            expect(',');
            auto label = quoted();
            expect(',');
            auto dst = number();
            expect(')');
            end_of_line();
            if (src >= nstates || dst >= nstates) fail("transition endpoint out of range");
            ActionLabel parsed = ActionLabel::tau();
            try {
                parsed = ActionLabel::parse(label);
            } catch (const ParseError& e) {
                fail(std::string("bad label: ") + e.what());
            }
            l.add_transition(src, std::move(parsed), dst);
        }
        skip_blank_lines();
        if (pos_ < text_.size()) fail("trailing content after declared transitions");
        return l;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, col()); }

    std::size_t col() const { return pos_ - line_start_ + 1; }

    void skip_spaces()
    {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
    }

    void skip_blank_lines()
    {
        for (;;) {
            skip_spaces();
            if (pos_ < text_.size() && text_[pos_] == '\n') {
                ++pos_;
                ++line_;
                line_start_ = pos_;
                continue;
            }
            return;
        }
    }

    void end_of_line()
    {
        skip_spaces();
        if (pos_ >= text_.size()) return;
        if (text_[pos_] != '\n') fail("unexpected character at end of line");
        ++pos_;
        ++line_;
        line_start_ = pos_;
    }

    void expect(char c)
    {
        skip_spaces();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    void expect_word(std::string_view w)
    {
        skip_spaces();
        if (text_.substr(pos_, w.size()) != w) fail("expected '" + std::string(w) + "'");
        pos_ += w.size();
    }

    std::size_t number()
    {
        skip_spaces();
        std::size_t v = 0;
        auto [p, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (ec != std::errc() || p == text_.data() + pos_) fail("expected a number");
        pos_ = static_cast<std::size_t>(p - text_.data());
        return v;
    }

    std::string quoted()
    {
        skip_spaces();
        if (pos_ >= text_.size() || text_[pos_] != '"') fail("expected quoted label");
        auto close = text_.find('"', pos_ + 1);
        auto nl = text_.find('\n', pos_ + 1);
        if (close == std::string_view::npos || close > nl) fail("unterminated label");
        std::string out(text_.substr(pos_ + 1, close - pos_ - 1));
        pos_ = close + 1;
        return out;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t line_start_ = 0;
};

} // namespace

Lts read_aut(std::string_view text) { return AutReader(text).run(); }

} // namespace rtmpi::lts
