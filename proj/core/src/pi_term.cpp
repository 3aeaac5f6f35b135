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

#include <algorithm>
#include <charconv>
#include <unordered_map>

#include "pi_internal.hpp"

namespace rtmpi::pi {

namespace {

void check_name(const std::string& n)
{
    if (n.empty()) throw PreconditionError("empty name in term");
}

TermPtr make(Kind k, std::string channel, std::vector<std::string> names, std::vector<TermPtr> kids)
{
    for (const auto& kid : kids)
        if (!kid) throw PreconditionError("null subterm");
    return std::make_shared<const Term>(Term{k, std::move(channel), std::move(names), std::move(kids)});
}

bool is_prefixed(Kind k)
{
    return k == Kind::tau || k == Kind::out || k == Kind::in || k == Kind::poly_out || k == Kind::poly_in;
}

} // namespace

TermPtr nil()
{
    static const TermPtr zero = make(Kind::nil, {}, {}, {});
    return zero;
}

TermPtr tau(TermPtr body) { return make(Kind::tau, {}, {}, {std::move(body)}); }

TermPtr out(std::string channel, std::string datum, TermPtr body)
{
    check_name(channel);
    check_name(datum);
    return make(Kind::out, std::move(channel), {std::move(datum)}, {std::move(body)});
}

TermPtr in(std::string channel, std::string binder, TermPtr body)
{
    check_name(channel);
    check_name(binder);
    return make(Kind::in, std::move(channel), {std::move(binder)}, {std::move(body)});
}

TermPtr poly_out(std::string channel, std::vector<std::string> data, TermPtr body)
{
    check_name(channel);
    for (const auto& d : data) check_name(d);
    return make(Kind::poly_out, std::move(channel), std::move(data), {std::move(body)});
}

TermPtr poly_in(std::string channel, std::vector<std::string> binders, TermPtr body)
{
    check_name(channel);
    for (const auto& b : binders) check_name(b);
    return make(Kind::poly_in, std::move(channel), std::move(binders), {std::move(body)});
}

TermPtr sum(std::vector<TermPtr> summands)
{
    for (const auto& s : summands)
        if (s && s->kind != Kind::nil && s->kind != Kind::sum && !is_prefixed(s->kind))
            throw PreconditionError("summands must be prefixed terms");
    return make(Kind::sum, {}, {}, std::move(summands));
}

TermPtr par(std::vector<TermPtr> components) { return make(Kind::par, {}, {}, std::move(components)); }

TermPtr res(std::vector<std::string> binders, TermPtr body)
{
    if (binders.empty()) return body;
    for (const auto& b : binders) check_name(b);
    return make(Kind::res, {}, std::move(binders), {std::move(body)});
}

TermPtr res(std::string binder, TermPtr body) { return res(std::vector<std::string>{std::move(binder)}, std::move(body)); }

TermPtr bang(TermPtr body) { return make(Kind::bang, {}, {}, {std::move(body)}); }

bool is_reserved_name(std::string_view name) { return !name.empty() && name.front() == '_'; }

// ---------------------------------------------------------------- rendering

namespace {

void render_proc(const Term& p, std::string& out);

void join(const std::vector<std::string>& names, std::string& out)
{
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (i) out += ',';
        out += names[i];
    }
}

void render_unary(const Term& p, std::string& out)
{
    switch (p.kind) {
    case Kind::nil: out += '0'; return;
    case Kind::tau: out += "tau."; break;
    case Kind::out: out += p.channel + "!" + p.names[0] + "."; break;
    case Kind::in: out += p.channel + "?(" + p.names[0] + ")."; break;
    case Kind::poly_out:
        out += p.channel + "!<";
        join(p.names, out);
        out += ">.";
        break;
    case Kind::poly_in:
        if (p.names.size() == 1) {
            out += p.channel + "?<" + p.names[0] + ">.";
        } else {
            out += p.channel + "?(";
            join(p.names, out);
            out += ").";
        }
        break;
    case Kind::res:
        out += "(v ";
        join(p.names, out);
        out += ")";
        break;
    case Kind::bang: out += '!'; break;
    case Kind::sum:
    case Kind::par:
        out += '(';
        render_proc(p, out);
        out += ')';
        return;
    }
    render_unary(*p.body(), out);
}

void render_sum(const Term& p, std::string& out)
{
    if (p.kind != Kind::sum || p.kids.empty()) {
        if (p.kind == Kind::sum) out += '0';
        else render_unary(p, out);
        return;
    }
    for (std::size_t i = 0; i < p.kids.size(); ++i) {
        if (i) out += " + ";
        render_unary(*p.kids[i], out);
    }
}

void render_proc(const Term& p, std::string& out)
{
    if (p.kind != Kind::par || p.kids.empty()) {
        if (p.kind == Kind::par) out += '0';
        else render_sum(p, out);
        return;
    }
    for (std::size_t i = 0; i < p.kids.size(); ++i) {
        if (i) out += " | ";
        render_sum(*p.kids[i], out);
    }
}

} // namespace

std::string render(const TermPtr& p)
{
    std::string out;
    render_proc(*p, out);
    return out;
}

// -------------------------------------------------------------------- names

namespace {

void collect_free(const Term& p, std::set<std::string>& out)
{
    switch (p.kind) {
    case Kind::nil: return;
    case Kind::out:
    case Kind::poly_out:
        out.insert(p.channel);
        out.insert(p.names.begin(), p.names.end());
        collect_free(*p.body(), out);
        return;
    case Kind::in:
    case Kind::poly_in:
    case Kind::res: {
        std::set<std::string> inner;
        collect_free(*p.body(), inner);
        for (const auto& b : p.names) inner.erase(b);
        out.insert(inner.begin(), inner.end());
        if (p.kind != Kind::res) out.insert(p.channel);
        return;
    }
    default:
        for (const auto& k : p.kids) collect_free(*k, out);
    }
}

void collect_bound(const Term& p, std::set<std::string>& out)
{
    if (p.kind == Kind::in || p.kind == Kind::poly_in || p.kind == Kind::res) out.insert(p.names.begin(), p.names.end());
    for (const auto& k : p.kids) collect_bound(*k, out);
}

} // namespace

std::set<std::string> free_names(const TermPtr& p)
{
    std::set<std::string> out;
    collect_free(*p, out);
    return out;
}

std::set<std::string> bound_names(const TermPtr& p)
{
    std::set<std::string> out;
    collect_bound(*p, out);
    return out;
}

namespace detail {

void all_names(const TermPtr& p, std::set<std::string>& out)
{
    if (!p->channel.empty()) out.insert(p->channel);
    out.insert(p->names.begin(), p->names.end());
    for (const auto& k : p->kids) all_names(k, out);
}

bool occurs_free(const TermPtr& p, const std::string& name)
{
    switch (p->kind) {
    case Kind::nil: return false;
    case Kind::out:
    case Kind::poly_out:
        if (p->channel == name) return true;
        if (std::find(p->names.begin(), p->names.end(), name) != p->names.end()) return true;
        return occurs_free(p->body(), name);
    case Kind::in:
    case Kind::poly_in:
    case Kind::res:
        if (p->kind != Kind::res && p->channel == name) return true;
        if (std::find(p->names.begin(), p->names.end(), name) != p->names.end()) return false;
        return occurs_free(p->body(), name);
    default:
        return std::any_of(p->kids.begin(), p->kids.end(), [&](const TermPtr& k) { return occurs_free(k, name); });
    }
}

FreshSupply::FreshSupply(std::string prefix, const TermPtr& p) : prefix_(std::move(prefix))
{
    std::set<std::string> names;
    all_names(p, names);
    for (const auto& n : names) reserve_above(n);
}

void FreshSupply::reserve_above(const std::string& name)
{
    if (name.size() <= prefix_.size() || name.compare(0, prefix_.size(), prefix_) != 0) return;
    std::size_t k = 0;
    auto first = name.data() + prefix_.size();
    auto last = name.data() + name.size();
    auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec == std::errc() && ptr == last) next_ = std::max(next_, k + 1);
}

TermPtr subst(const TermPtr& p, const std::string& from, const std::string& to, FreshSupply& fresh)
{
    if (from == to) return p;
    auto rn = [&](const std::string& n) { return n == from ? to : n; };
    switch (p->kind) {
    case Kind::nil: return p;
    case Kind::tau: {
        auto b = subst(p->body(), from, to, fresh);
        return b == p->body() ? p : tau(b);
    }
    case Kind::out:
    case Kind::poly_out: {
        auto b = subst(p->body(), from, to, fresh);
        std::vector<std::string> names;
        for (const auto& n : p->names) names.push_back(rn(n));
        if (b == p->body() && names == p->names && p->channel != from) return p;
        return make(p->kind, rn(p->channel), std::move(names), {b});
    }
    case Kind::in:
    case Kind::poly_in:
    case Kind::res: {
        const bool shadowed = std::find(p->names.begin(), p->names.end(), from) != p->names.end();
        std::vector<std::string> names = p->names;
        TermPtr b = p->body();
        if (!shadowed) {
            if (std::find(names.begin(), names.end(), to) != names.end() && occurs_free(b, from)) {
                for (auto& n : names) {
                    if (n != to) continue;
                    n = fresh.take();
                    b = subst(b, to, n, fresh);
                }
            }
            b = subst(b, from, to, fresh);
        }
        std::string ch = p->kind == Kind::res ? std::string() : rn(p->channel);
        if (b == p->body() && names == p->names && ch == p->channel) return p;
        return make(p->kind, std::move(ch), std::move(names), {b});
    }
    case Kind::sum:
    case Kind::par:
    case Kind::bang: {
        std::vector<TermPtr> kids;
        bool changed = false;
        for (const auto& k : p->kids) {
            kids.push_back(subst(k, from, to, fresh));
            changed |= kids.back() != k;
        }
        return changed ? make(p->kind, {}, {}, std::move(kids)) : p;
    }
    }
    return p;
}

namespace {

TermPtr freshen_in(const TermPtr& p, FreshSupply& fresh, std::unordered_map<std::string, std::string>& env)
{
    auto rn = [&](const std::string& n) {
        auto it = env.find(n);
        return it == env.end() ? n : it->second;
    };
    switch (p->kind) {
    case Kind::nil: return p;
    case Kind::out:
    case Kind::poly_out: {
        std::vector<std::string> names;
        for (const auto& n : p->names) names.push_back(rn(n));
        return make(p->kind, rn(p->channel), std::move(names), {freshen_in(p->body(), fresh, env)});
    }
    case Kind::in:
    case Kind::poly_in:
    case Kind::res: {
        std::string ch = p->kind == Kind::res ? std::string() : rn(p->channel);
        std::vector<std::pair<std::string, std::optional<std::string>>> saved;
        std::vector<std::string> names;
        for (const auto& n : p->names) {
            auto it = env.find(n);
            saved.emplace_back(n, it == env.end() ? std::nullopt : std::optional<std::string>(it->second));
            names.push_back(fresh.take());
            env[n] = names.back();
        }
        auto b = freshen_in(p->body(), fresh, env);
        for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
            if (it->second) env[it->first] = *it->second;
            else env.erase(it->first);
        }
        return make(p->kind, std::move(ch), std::move(names), {b});
    }
    default: {
        std::vector<TermPtr> kids;
        for (const auto& k : p->kids) kids.push_back(freshen_in(k, fresh, env));
        return make(p->kind, {}, {}, std::move(kids));
    }
    }
}

} // namespace

TermPtr freshen(const TermPtr& p, FreshSupply& fresh)
{
    std::unordered_map<std::string, std::string> env;
    return freshen_in(p, fresh, env);
}

} // namespace detail

TermPtr substitute(const TermPtr& p, const std::string& target, const std::string& replacement)
{
    detail::FreshSupply fresh(detail::temp_prefix, p);
    fresh.reserve_above(target);
    fresh.reserve_above(replacement);
    return detail::subst(p, target, replacement, fresh);
}

// ------------------------------------------------------------------- sugar

namespace {

std::string link_name(const std::set<std::string>& avoid, std::size_t& next)
{
    for (;; ++next) {
        auto w = detail::link_prefix + std::to_string(next);
        if (!avoid.contains(w)) return w;
    }
}

TermPtr expand(const TermPtr& p, std::vector<std::string>* hoisted, std::set<std::string>& avoid);

// Expands a polyadic output. If `hoisted` is given the link restriction is
// returned there instead of wrapping the prefix (used inside sums).
TermPtr expand_out(const TermPtr& p, std::vector<std::string>* hoisted, std::set<std::string>& avoid)
{
    auto body = expand(p->body(), nullptr, avoid);
    auto taboo = free_names(body);
    taboo.insert(p->channel);
    taboo.insert(p->names.begin(), p->names.end());
    taboo.insert(avoid.begin(), avoid.end());
    std::size_t next = 0;
    auto w = link_name(taboo, next);
    TermPtr chain = body;
    for (auto it = p->names.rbegin(); it != p->names.rend(); ++it) chain = out(w, *it, chain);
    chain = out(p->channel, w, chain);
    if (hoisted) {
        hoisted->push_back(w);
        avoid.insert(w);
        return chain;
    }
    return res(w, chain);
}

TermPtr expand_in(const TermPtr& p, std::set<std::string>& avoid)
{
    auto body = expand(p->body(), nullptr, avoid);
    auto taboo = free_names(body);
    taboo.insert(p->channel);
    taboo.insert(p->names.begin(), p->names.end());
    std::size_t next = 0;
    auto w = link_name(taboo, next);
    TermPtr chain = body;
    for (auto it = p->names.rbegin(); it != p->names.rend(); ++it) chain = in(w, *it, chain);
    return in(p->channel, w, chain);
}

TermPtr expand(const TermPtr& p, std::vector<std::string>* hoisted, std::set<std::string>& avoid)
{
    switch (p->kind) {
    case Kind::nil: return p;
    case Kind::poly_out: return expand_out(p, hoisted, avoid);
    case Kind::poly_in: return expand_in(p, avoid);
    case Kind::sum: {
        // links of polyadic summands scope over the whole sum and must not
        // collide with anything free in a sibling
        std::set<std::string> sum_avoid = free_names(p);
        std::vector<std::string> links;
        std::vector<TermPtr> kids;
        for (const auto& k : p->kids) kids.push_back(expand(k, &links, sum_avoid));
        auto s = sum(std::move(kids));
        if (hoisted) {
            hoisted->insert(hoisted->end(), links.begin(), links.end());
            avoid.insert(links.begin(), links.end());
            return s;
        }
        return res(std::move(links), s);
    }
    case Kind::tau: return tau(expand(p->body(), nullptr, avoid));
    case Kind::out: return out(p->channel, p->names[0], expand(p->body(), nullptr, avoid));
    case Kind::in: return in(p->channel, p->names[0], expand(p->body(), nullptr, avoid));
    case Kind::res: return res(p->names, expand(p->body(), nullptr, avoid));
    case Kind::bang: return bang(expand(p->body(), nullptr, avoid));
    case Kind::par: {
        std::vector<TermPtr> kids;
        for (const auto& k : p->kids) kids.push_back(expand(k, nullptr, avoid));
        return par(std::move(kids));
    }
    }
    return p;
}

bool has_sugar(const Term& p)
{
    if (p.kind == Kind::poly_in || p.kind == Kind::poly_out) return true;
    return std::any_of(p.kids.begin(), p.kids.end(), [](const TermPtr& k) { return has_sugar(*k); });
}

} // namespace

TermPtr expand_polyadic(const TermPtr& p)
{
    if (!has_sugar(*p)) return p;
    std::set<std::string> avoid;
    return expand(p, nullptr, avoid);
}

} // namespace rtmpi::pi
