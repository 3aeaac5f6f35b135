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

#include "rtmpi/pi.hpp"

namespace rtmpi::pi {

namespace {

// Recursive descent over
//   proc   := sum ('|' sum)*
//   sum    := unary ('+' unary)*
//   unary  := '0' | prefix '.' unary | '(' 'v' names ')' unary | '!' unary | '(' proc ')'
//   prefix := tau | ['] x!y | ['] x!<ys> | x?(y) | x?(ys) | x?<ys>
class Parser {
public:
    Parser(std::string_view text, bool allow_reserved) : text_(text), allow_reserved_(allow_reserved) {}

    TermPtr run()
    {
        auto p = proc();
        skip();
        if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& what) const
    {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < text_.size(); ++i) {
            if (text_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(what, line, col);
    }

    void skip()
    {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    bool peek(char c)
    {
        skip();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c)
    {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    void expect(char c)
    {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    static bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }

    bool at_name()
    {
        skip();
        return pos_ < text_.size() && name_start(text_[pos_]);
    }

    std::string raw_name()
    {
        skip();
        if (pos_ >= text_.size() || !name_start(text_[pos_])) fail("expected a name");
        auto start = pos_;
        while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string name()
    {
        auto at = pos_;
        auto n = raw_name();
        if (n == "tau" || n == "nu") {
            pos_ = at;
            fail("'" + n + "' is reserved and cannot be used as a name");
        }
        if (is_reserved_name(n) && !allow_reserved_) {
            pos_ = at;
            fail("names starting with '_' are reserved for generated names");
        }
        return n;
    }

    std::vector<std::string> name_list(char close)
    {
        std::vector<std::string> out;
        if (accept(close)) return out;
        do out.push_back(name());
        while (accept(','));
        expect(close);
        return out;
    }

    TermPtr proc()
    {
        std::vector<TermPtr> parts{sum_level()};
        while (accept('|')) parts.push_back(sum_level());
        return parts.size() == 1 ? parts[0] : par(std::move(parts));
    }

    TermPtr sum_level()
    {
        auto at = pos_;
        std::vector<TermPtr> parts{unary()};
        while (accept('+')) parts.push_back(unary());
        if (parts.size() == 1) return parts[0];
        try {
            return sum(std::move(parts));
        } catch (const PreconditionError&) {
            pos_ = at;
            fail("summands of '+' must be prefixed terms");
        }
    }

    // Tries "(v x,y)"; restores the position if this is a plain parenthesis.
    std::optional<std::vector<std::string>> restriction_header()
    {
        auto at = pos_;
        if (!accept('(')) return std::nullopt;
        skip();
        if (pos_ < text_.size() && text_[pos_] == 'v' &&
            (pos_ + 1 >= text_.size() || !name_char(text_[pos_ + 1]))) {
            ++pos_;
            if (at_name()) {
                std::vector<std::string> names{name()};
                while (accept(',')) names.push_back(name());
                if (accept(')')) return names;
            }
        }
        pos_ = at;
        return std::nullopt;
    }

    TermPtr unary()
    {
        skip();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (c == '0' && (pos_ + 1 >= text_.size() || !name_char(text_[pos_ + 1]))) {
            ++pos_;
            return nil();
        }
        if (c == '!') {
            ++pos_;
            return bang(unary());
        }
        if (c == '(') {
            if (auto names = restriction_header()) return res(std::move(*names), unary());
            ++pos_;
            auto p = proc();
            expect(')');
            return p;
        }
        bool marked = accept('\'');
        auto at = pos_;
        auto first = raw_name();
        if (first == "tau" && !marked) {
            expect('.');
            return tau(unary());
        }
        pos_ = at;
        auto ch = name();
        if (accept('!')) {
            if (accept('<')) {
                auto ys = name_list('>');
                expect('.');
                return poly_out(ch, std::move(ys), unary());
            }
            auto y = name();
            expect('.');
            return out(ch, y, unary());
        }
        if (marked) fail("expected '!' after an output channel");
        if (accept('?')) {
            if (accept('<')) {
                auto zs = name_list('>');
                expect('.');
                return poly_in(ch, std::move(zs), unary());
            }
            expect('(');
            auto zs = name_list(')');
            expect('.');
            if (zs.size() == 1) return in(ch, zs[0], unary());
            return poly_in(ch, std::move(zs), unary());
        }
        fail("expected '!' or '?' after channel " + ch);
    }

    std::string_view text_;
    bool allow_reserved_;
    std::size_t pos_ = 0;
};

} // namespace

TermPtr parse_pi(std::string_view text, bool allow_reserved) { return Parser(text, allow_reserved).run(); }

} // namespace rtmpi::pi
