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

#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#ifndef RTMPI_CORPUS_DIR
#error "RTMPI_CORPUS_DIR must point at the corpus directory"
#endif

namespace rtmpi::testing {

std::string corpus(const std::string& name) { return std::string(RTMPI_CORPUS_DIR) + "/" + name; }

std::string corpus_text(const std::string& name)
{
    std::ifstream in(corpus(name));
    if (!in) throw std::runtime_error("missing corpus file " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

lts::Lts explore_all(const lts::StepGenerator& g, std::size_t max_states)
{
    return lts::explore(g, {max_states, 100000});
}

lts::Lts pi_lts(const pi::TermPtr& p, std::set<std::string> free_data, bool eager)
{
    return explore_all(pi::pi_generator(p, pi::NameUniverse{std::move(free_data), eager}));
}

lts::Lts make_lts(std::size_t states, const std::string& edges)
{
    lts::Lts l;
    for (std::size_t i = 0; i < states; ++i) l.add_state(std::to_string(i));
    l.set_initial(0);
    std::istringstream in(edges);
    for (std::string item; std::getline(in, item, ';');) {
        std::istringstream e(item);
        std::size_t s, t;
        std::string a;
        if (!(e >> s >> a >> t)) continue;
        l.add_transition(s, lts::ActionLabel::parse(a), t);
    }
    return l;
}

lts::Lts random_lts(std::mt19937& rng, std::size_t max_states, std::size_t max_trans, std::size_t labels)
{
    static const char* const names[] = {"tau", "a", "b", "c"};
    const auto n = 1 + rng() % max_states;
    const auto m = std::max(n - 1, rng() % (max_trans + 1));
    std::string edges;
    auto edge = [&](std::size_t s, std::size_t t) {
        edges += std::to_string(s) + " " + names[rng() % labels] + " " + std::to_string(t) + ";";
    };
    // a random spanning tree keeps every state reachable
    for (std::size_t t = 1; t < n; ++t) edge(rng() % t, t);
    for (std::size_t i = n - 1; i < m; ++i) edge(rng() % n, rng() % n);
    return make_lts(n, edges);
}

namespace {

using namespace pi;

const char* pick(std::mt19937& rng, std::initializer_list<const char*> xs) { return xs.begin()[rng() % xs.size()]; }

TermPtr prefixed(std::mt19937& rng, int depth);

TermPtr term(std::mt19937& rng, int depth)
{
    if (depth <= 0) return rng() % 2 ? nil() : prefixed(rng, 0);
    switch (rng() % 8) {
    case 0: return nil();
    case 1:
    case 2:
    case 3: return prefixed(rng, depth);
    case 4:
    case 5: return par({term(rng, depth - 1), term(rng, depth - 1)});
    case 6: return sum({prefixed(rng, depth - 1), prefixed(rng, depth - 1)});
    default: return res(pick(rng, {"a", "x", "y"}), term(rng, depth - 1));
    }
}

TermPtr prefixed(std::mt19937& rng, int depth)
{
    auto body = depth > 0 ? term(rng, depth - 1) : nil();
    switch (rng() % 3) {
    case 0: return tau(body);
    case 1: return out(pick(rng, {"a", "b", "x"}), pick(rng, {"a", "b", "x", "y"}), body);
    default: return in(pick(rng, {"a", "b", "x"}), pick(rng, {"y", "z", "a"}), body);
    }
}

class Variant {
public:
    explicit Variant(std::mt19937& rng) : rng_(rng) {}

    TermPtr operator()(const TermPtr& p)
    {
        switch (p->kind) {
        case Kind::nil: return p;
        case Kind::tau: return tau((*this)(p->body()));
        case Kind::out: return out(p->channel, p->names[0], (*this)(p->body()));
        case Kind::in: {
            auto fresh = next();
            return in(p->channel, fresh, (*this)(substitute(p->body(), p->names[0], fresh)));
        }
        case Kind::sum:
        case Kind::par: {
            std::vector<TermPtr> kids;
            for (const auto& k : p->kids) kids.push_back((*this)(k));
            std::shuffle(kids.begin(), kids.end(), rng_);
            if (p->kind == Kind::sum) return sum(std::move(kids));
            if (rng_() % 2) kids.push_back(nil());
            return par(std::move(kids));
        }
        case Kind::res: {
            std::vector<std::string> binders;
            auto body = p->body();
            for (const auto& n : p->names) {
                binders.push_back(next());
                body = substitute(body, n, binders.back());
            }
            if (rng_() % 3 == 0) binders.push_back(next()); // unused restriction
            std::shuffle(binders.begin(), binders.end(), rng_);
            return res(std::move(binders), (*this)(body));
        }
        case Kind::bang: return bang((*this)(p->body()));
        case Kind::poly_out: return poly_out(p->channel, p->names, (*this)(p->body()));
        case Kind::poly_in: {
            std::vector<std::string> binders;
            auto body = p->body();
            for (const auto& n : p->names) {
                binders.push_back(next());
                body = substitute(body, n, binders.back());
            }
            return poly_in(p->channel, std::move(binders), (*this)(body));
        }
        }
        return p;
    }

private:
    std::string next() { return "q" + std::to_string(counter_++); }

    std::mt19937& rng_;
    std::size_t counter_ = 0;
};

std::size_t count_prefixes(const TermPtr& p)
{
    std::size_t n = (p->kind == Kind::tau || p->kind == Kind::out || p->kind == Kind::in) ? 1 : 0;
    for (const auto& k : p->kids) n += count_prefixes(k);
    return n;
}

TermPtr with_tau(const TermPtr& p, std::size_t& index)
{
    const bool prefix = p->kind == Kind::tau || p->kind == Kind::out || p->kind == Kind::in;
    if (prefix && index-- == 0) {
        auto body = tau(p->body());
        if (p->kind == Kind::tau) return tau(body);
        if (p->kind == Kind::out) return out(p->channel, p->names[0], body);
        return in(p->channel, p->names[0], body);
    }
    if (p->kids.empty()) return p;
    std::vector<TermPtr> kids;
    for (const auto& k : p->kids) kids.push_back(with_tau(k, index));
    switch (p->kind) {
    case Kind::tau: return tau(kids[0]);
    case Kind::out: return out(p->channel, p->names[0], kids[0]);
    case Kind::in: return in(p->channel, p->names[0], kids[0]);
    case Kind::sum: return sum(std::move(kids));
    case Kind::par: return par(std::move(kids));
    case Kind::res: return res(p->names, kids[0]);
    case Kind::bang: return bang(kids[0]);
    default: return p;
    }
}

} // namespace

pi::TermPtr random_term(std::mt19937& rng, int depth) { return term(rng, depth); }

pi::TermPtr congruent_variant(std::mt19937& rng, const pi::TermPtr& p) { return Variant(rng)(p); }

pi::TermPtr insert_tau(std::mt19937& rng, const pi::TermPtr& p)
{
    const auto n = count_prefixes(p);
    if (n == 0) return pi::tau(p);
    std::size_t index = rng() % n;
    return with_tau(p, index);
}

lts::StepGenerator tape_interface(const rtm::Rtm& m, const pi::TermPtr& tape, bool eager)
{
    auto names = compiler::NameMap::of(m);
    std::set<std::string> data;
    std::map<std::string, std::string> symbol; // dt_x -> x
    for (const auto& [d, n] : names.data) {
        data.insert(n);
        symbol[n] = d;
    }
    auto inner = pi::pi_generator(tape, pi::NameUniverse{data, eager});
    // successors depend only on the universe and the state, so explorations
    // of related tapes share them
    using Memo = std::map<std::string, std::vector<lts::Successor>>;
    static std::map<std::pair<std::set<std::string>, bool>, Memo> memos;
    auto& memo = memos[{data, eager}];
    lts::StepGenerator g;
    g.initial = inner.initial;
    g.successors = [inner, symbol, &memo](const std::string& key) {
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        std::vector<lts::Successor> out;
        for (auto& s : inner.successors(key)) {
            const auto& a = s.label;
            std::optional<lts::ActionLabel> b;
            auto sym = symbol.find(a.datum());
            if (a.is_tau()) b = a;
            else if (a.kind() == lts::ActionKind::free_output && a.channel() == "read" && sym != symbol.end())
                b = lts::ActionLabel::plain("read_" + sym->second);
            else if (a.kind() == lts::ActionKind::free_input && a.channel() == "write" && sym != symbol.end())
                b = lts::ActionLabel::plain("write_" + sym->second);
            else if (a.kind() == lts::ActionKind::free_input && (a.channel() == "left" || a.channel() == "right") &&
                     pi::is_reserved_name(a.datum()))
                b = lts::ActionLabel::plain(a.channel());
            if (b) out.push_back(lts::Successor{*b, std::move(s.target)});
        }
        std::sort(out.begin(), out.end(), [](const lts::Successor& x, const lts::Successor& y) {
            return std::tie(x.label, x.target) < std::tie(y.label, y.target);
        });
        return memo.emplace(key, std::move(out)).first->second;
    };
    return g;
}

lts::StepGenerator reference_tape(const rtm::Rtm& m, const rtm::TapeInstance& tape)
{
    std::vector<std::string> symbols{rtm::blank};
    symbols.insert(symbols.end(), m.data.begin(), m.data.end());
    lts::StepGenerator g;
    g.initial = rtm::config_key({"T", rtm::canonical_tape(tape)});
    g.successors = [symbols](const std::string& key) {
        const auto t = rtm::parse_config_key(key).tape;
        std::vector<lts::Successor> out;
        auto add = [&](std::string label, rtm::TapeInstance next) {
            out.push_back({lts::ActionLabel::plain(std::move(label)), rtm::config_key({"T", rtm::canonical_tape(next)})});
        };
        add("read_" + t.cells[t.head], t);
        for (const auto& e : symbols) {
            auto next = t;
            next.cells[next.head] = e;
            add("write_" + e, next);
        }
        auto left = t;
        if (left.head == 0) left.cells.insert(left.cells.begin(), rtm::blank);
        else --left.head;
        add("left", left);
        auto right = t;
        if (++right.head == right.cells.size()) right.cells.push_back(rtm::blank);
        add("right", right);
        return out;
    };
    return g;
}

bool equivalent(const lts::Lts& a, const lts::Lts& b, equiv::Mode mode)
{
    return equiv::check(a, b, mode).verdict == equiv::Verdict::equivalent;
}

} // namespace rtmpi::testing
