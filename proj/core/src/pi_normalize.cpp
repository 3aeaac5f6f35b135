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
#include <numeric>
#include <unordered_map>

#include "pi_internal.hpp"

namespace rtmpi::pi {

namespace {

// Normal form: a process is a multiset of molecules; a molecule is a guarded
// term (prefix, sum of prefixes, replication) or a group of guarded terms
// under one restriction whose names link all of them together.
struct Mol;
using Nf = std::vector<Mol>;

struct Mol {
    enum class K { prefix, sum, bang, group } k;
    Kind prefix = Kind::nil; ///< tau, out or in
    std::string ch;
    std::string arg;                ///< datum (out) or binder (in)
    std::vector<Mol> kids;          ///< continuation, summands, bang body or group components
    std::vector<std::string> names; ///< group binders
    std::set<std::string> fn;
};

std::set<std::string> fn_of(const Nf& ms)
{
    std::set<std::string> out;
    for (const auto& m : ms) out.insert(m.fn.begin(), m.fn.end());
    return out;
}

bool touches(const Mol& m, const std::set<std::string>& names)
{
    return std::any_of(names.begin(), names.end(), [&](const std::string& n) { return m.fn.contains(n); });
}

Nf restrict_nf(Nf ms, const std::set<std::string>& binders)
{
    Nf out, comps;
    std::set<std::string> names = binders;
    for (auto& m : ms) {
        if (!touches(m, binders)) {
            out.push_back(std::move(m));
        } else if (m.k == Mol::K::group) {
            names.insert(m.names.begin(), m.names.end());
            for (auto& c : m.kids) comps.push_back(std::move(c));
        } else {
            comps.push_back(std::move(m));
        }
    }
    if (comps.empty()) return out;

    // connected components of "shares a restricted name"
    std::vector<std::size_t> up(comps.size());
    std::iota(up.begin(), up.end(), 0);
    auto find = [&](std::size_t x) {
        while (up[x] != x) x = up[x] = up[up[x]];
        return x;
    };
    std::unordered_map<std::string, std::size_t> owner;
    for (std::size_t i = 0; i < comps.size(); ++i)
        for (const auto& n : comps[i].fn) {
            if (!names.contains(n)) continue;
            auto [it, fresh] = owner.emplace(n, i);
            if (!fresh) up[find(i)] = find(it->second);
        }

    std::vector<std::vector<std::size_t>> classes(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) classes[find(i)].push_back(i);
    for (const auto& cls : classes) {
        if (cls.empty()) continue;
        Mol g;
        g.k = Mol::K::group;
        std::set<std::string> used;
        for (auto i : cls) {
            for (const auto& n : comps[i].fn)
                if (names.contains(n)) used.insert(n);
                else g.fn.insert(n);
            g.kids.push_back(std::move(comps[i]));
        }
        if (used.empty()) {
            for (auto& c : g.kids) out.push_back(std::move(c));
            continue;
        }
        g.names.assign(used.begin(), used.end());
        out.push_back(std::move(g));
    }
    return out;
}

// Converts a term to normal form, giving every binder a private identity
// (a control character cannot occur in any real name), so that scopes merged
// by restrict_nf never confuse two binders that shared a name.
class Converter {
public:
    Nf run(const TermPtr& p)
    {
        Nf out;
        convert(p, out);
        return out;
    }

private:
    std::string rn(const std::string& n) const
    {
        auto it = env_.find(n);
        return it == env_.end() || it->second.empty() ? n : it->second.back();
    }

    std::string bind(const std::string& n)
    {
        auto id = "\x03" + std::to_string(next_++);
        env_[n].push_back(id);
        return id;
    }

    void unbind(const std::string& n) { env_[n].pop_back(); }

    void convert(const TermPtr& p, Nf& out)
    {
        switch (p->kind) {
        case Kind::nil: return;
        case Kind::tau:
        case Kind::out:
        case Kind::in: {
            Mol m;
            m.k = Mol::K::prefix;
            m.prefix = p->kind;
            if (p->kind != Kind::tau) m.ch = rn(p->channel);
            if (p->kind == Kind::in) {
                m.arg = bind(p->names[0]);
                convert(p->body(), m.kids);
                unbind(p->names[0]);
            } else {
                if (p->kind == Kind::out) m.arg = rn(p->names[0]);
                convert(p->body(), m.kids);
            }
            m.fn = fn_of(m.kids);
            if (p->kind == Kind::in) m.fn.erase(m.arg);
            else if (p->kind == Kind::out) m.fn.insert(m.arg);
            if (p->kind != Kind::tau) m.fn.insert(m.ch);
            out.push_back(std::move(m));
            return;
        }
        case Kind::sum: {
            Nf parts, summands;
            for (const auto& k : p->kids) convert(k, parts);
            for (auto& m : parts) {
                if (m.k == Mol::K::prefix) summands.push_back(std::move(m));
                else if (m.k == Mol::K::sum)
                    for (auto& s : m.kids) summands.push_back(std::move(s));
                else throw PreconditionError("sum has a summand that is not prefixed: " + render(p));
            }
            if (summands.size() == 1) out.push_back(std::move(summands[0]));
            if (summands.size() <= 1) return;
            Mol m;
            m.k = Mol::K::sum;
            m.fn = fn_of(summands);
            m.kids = std::move(summands);
            out.push_back(std::move(m));
            return;
        }
        case Kind::par:
            for (const auto& k : p->kids) convert(k, out);
            return;
        case Kind::bang: {
            Mol m;
            m.k = Mol::K::bang;
            convert(p->body(), m.kids);
            m.fn = fn_of(m.kids);
            out.push_back(std::move(m));
            return;
        }
        case Kind::res: {
            std::set<std::string> ids;
            for (const auto& n : p->names) ids.insert(bind(n));
            Nf body;
            convert(p->body(), body);
            for (const auto& n : p->names) unbind(n);
            for (auto& m : restrict_nf(std::move(body), ids)) out.push_back(std::move(m));
            return;
        }
        case Kind::poly_out:
        case Kind::poly_in: break;
        }
        throw PreconditionError("polyadic sugar must be expanded before normalization");
    }

    std::unordered_map<std::string, std::vector<std::string>> env_;
    std::size_t next_ = 0;
};

// Renames a binder identity; identities are unique, so no capture is possible.
void rename_in(Nf& ms, const std::string& from, const std::string& to);

void rename_in(Mol& m, const std::string& from, const std::string& to)
{
    if (!m.fn.contains(from)) return;
    if (m.ch == from) m.ch = to;
    if (m.prefix == Kind::out && m.arg == from) m.arg = to;
    rename_in(m.kids, from, to);
    m.fn.erase(from);
    m.fn.insert(to);
}

void rename_in(Nf& ms, const std::string& from, const std::string& to)
{
    for (auto& m : ms) rename_in(m, from, to);
}

// Fires one communication on a restricted name known to exactly one blocked
// sender and one blocked receiver. Such a step is the only move of either
// party and commutes with every other transition.
bool fire_private_handshake(Nf& top)
{
    for (std::size_t i = 0; i < top.size(); ++i) {
        auto& g = top[i];
        if (g.k != Mol::K::group) continue;
        for (const auto& w : g.names) {
            std::size_t snd = g.kids.size(), rcv = g.kids.size(), users = 0;
            for (std::size_t j = 0; j < g.kids.size() && users <= 2; ++j) {
                const auto& c = g.kids[j];
                if (!c.fn.contains(w)) continue;
                ++users;
                if (c.k == Mol::K::prefix && c.ch == w) {
                    if (c.prefix == Kind::out) snd = j;
                    else if (c.prefix == Kind::in) rcv = j;
                }
            }
            if (users != 2 || snd == g.kids.size() || rcv == g.kids.size()) continue;

            Nf comps;
            std::set<std::string> names(g.names.begin(), g.names.end());
            auto& s = g.kids[snd];
            auto& r = g.kids[rcv];
            rename_in(r.kids, r.arg, s.arg);
            for (auto& m : s.kids) comps.push_back(std::move(m));
            for (auto& m : r.kids) comps.push_back(std::move(m));
            for (std::size_t j = 0; j < g.kids.size(); ++j)
                if (j != snd && j != rcv) comps.push_back(std::move(g.kids[j]));
            top.erase(top.begin() + static_cast<std::ptrdiff_t>(i));
            for (auto& m : restrict_nf(std::move(comps), names)) top.push_back(std::move(m));
            return true;
        }
    }
    return false;
}

// ------------------------------------------------------- canonical rendering

using Env = std::unordered_map<std::string, std::string>;

struct Canon {
    TermPtr term; ///< null when only the text was requested
    std::string text;
    bool is_sum = false;

    std::string unary() const { return is_sum ? "(" + text + ")" : text; }
};

std::string canon_name(std::size_t level) { return detail::canon_prefix + std::to_string(level); }

class Canonizer {
public:
    Canon nf(const Nf& ms, std::size_t level, bool build)
    {
        std::vector<Canon> parts;
        parts.reserve(ms.size());
        for (const auto& m : ms) parts.push_back(mol(m, level, build));
        return assemble(std::move(parts), build);
    }

    Env env;

private:
    const std::string& rn(const std::string& n) const
    {
        auto it = env.find(n);
        return it == env.end() ? n : it->second;
    }

    static Canon assemble(std::vector<Canon> parts, bool build)
    {
        if (parts.empty()) return Canon{build ? nil() : nullptr, "0"};
        if (parts.size() == 1) return std::move(parts[0]);
        std::sort(parts.begin(), parts.end(), [](const Canon& a, const Canon& b) { return a.text < b.text; });
        Canon c;
        std::vector<TermPtr> kids;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) c.text += " | ";
            c.text += parts[i].text;
            if (build) kids.push_back(std::move(parts[i].term));
        }
        c.text = "(" + c.text + ")"; // a product is only ever rendered in unary position or at top level
        if (build) c.term = par(std::move(kids));
        return c;
    }

    Canon mol(const Mol& m, std::size_t level, bool build)
    {
        switch (m.k) {
        case Mol::K::prefix: return prefix(m, level, build);
        case Mol::K::sum: {
            std::vector<Canon> parts;
            for (const auto& s : m.kids) parts.push_back(prefix(s, level, build));
            std::sort(parts.begin(), parts.end(), [](const Canon& a, const Canon& b) { return a.text < b.text; });
            Canon c;
            c.is_sum = true;
            std::vector<TermPtr> kids;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (i) c.text += " + ";
                c.text += parts[i].text;
                if (build) kids.push_back(std::move(parts[i].term));
            }
            if (build) c.term = sum(std::move(kids));
            return c;
        }
        case Mol::K::bang: {
            auto body = nf(m.kids, level, build);
            return Canon{build ? bang(body.term) : nullptr, "!" + body.unary()};
        }
        case Mol::K::group: return group(m, level, build);
        }
        return {};
    }

    Canon prefix(const Mol& m, std::size_t level, bool build)
    {
        Canon c;
        if (m.prefix == Kind::in) {
            auto b = canon_name(level);
            env[m.arg] = b;
            auto cont = nf(m.kids, level + 1, build);
            env.erase(m.arg);
            c.text = rn(m.ch) + "?(" + b + ")." + cont.unary();
            if (build) c.term = in(rn(m.ch), b, cont.term);
            return c;
        }
        auto cont = nf(m.kids, level, build);
        if (m.prefix == Kind::tau) {
            c.text = "tau." + cont.unary();
            if (build) c.term = tau(cont.term);
        } else {
            c.text = rn(m.ch) + "!" + rn(m.arg) + "." + cont.unary();
            if (build) c.term = out(rn(m.ch), rn(m.arg), cont.term);
        }
        return c;
    }

    // Group binders are named in the order they first occur in the smallest
    // (by partial rendering) component that still mentions an unnamed one.
    Canon group(const Mol& g, std::size_t level, bool build)
    {
        const std::size_t k = g.names.size();
        const std::size_t inner = level + k;
        std::set<std::string> pending(g.names.begin(), g.names.end());
        std::vector<std::string> partial(g.kids.size());
        std::vector<bool> dirty(g.kids.size(), true);
        std::size_t assigned = 0;

        for (const auto& n : g.names) env[n] = "*";
        while (!pending.empty()) {
            for (std::size_t i = 0; i < g.kids.size(); ++i)
                if (dirty[i]) {
                    partial[i] = mol(g.kids[i], inner, false).text;
                    dirty[i] = false;
                }
            std::size_t pick = g.kids.size();
            for (std::size_t i = 0; i < g.kids.size(); ++i) {
                if (!touches(g.kids[i], pending)) continue;
                if (pick == g.kids.size() || partial[i] < partial[pick]) pick = i;
            }
            // occurrence order of the pending names inside the chosen component
            // (markers are numbered globally: nested groups mark their own names too)
            std::unordered_map<std::size_t, std::string> marked;
            for (const auto& n : pending) {
                marked.emplace(serial_, n);
                env[n] = "\x01" + std::to_string(serial_++) + "\x02";
            }
            auto text = mol(g.kids[pick], inner, false).text;
            for (const auto& n : pending) env[n] = "*";
            std::set<std::string> now;
            for (std::size_t at = text.find('\x01'); at != std::string::npos; at = text.find('\x01', at + 1)) {
                auto it = marked.find(std::stoul(text.substr(at + 1, text.find('\x02', at) - at - 1)));
                if (it == marked.end()) continue;
                const auto& n = it->second;
                if (!pending.contains(n)) continue;
                env[n] = canon_name(level + assigned++);
                pending.erase(n);
                now.insert(n);
            }
            for (std::size_t i = 0; i < g.kids.size(); ++i)
                if (touches(g.kids[i], now)) dirty[i] = true;
        }

        std::vector<std::string> binders;
        for (std::size_t j = 0; j < k; ++j) binders.push_back(canon_name(level + j));
        std::vector<Canon> parts;
        for (const auto& c : g.kids) parts.push_back(mol(c, inner, build));
        for (const auto& n : g.names) env.erase(n);

        auto body = assemble(std::move(parts), build);
        Canon c;
        c.text = "(v ";
        for (std::size_t j = 0; j < k; ++j) {
            if (j) c.text += ',';
            c.text += binders[j];
        }
        c.text += ")" + body.unary();
        if (build) c.term = res(std::move(binders), body.term);
        return c;
    }

    std::size_t serial_ = 0;
};

Canon canonicalize(const TermPtr& p, bool build, bool eager_links = false)
{
    auto expanded = expand_polyadic(p);
    auto nf = Converter().run(expanded);
    if (eager_links)
        while (fire_private_handshake(nf)) {
        }
    Canonizer cz;
    auto c = cz.nf(nf, 0, build);
    // top-level products are printed without the enclosing parentheses
    if (nf.size() > 1) c.text = c.text.substr(1, c.text.size() - 2);
    return c;
}

} // namespace

TermPtr normalize(const TermPtr& p) { return canonicalize(p, true).term; }

std::pair<TermPtr, std::string> detail::canonical_form(const TermPtr& p, bool eager_links)
{
    auto c = canonicalize(p, true, eager_links);
    return {std::move(c.term), std::move(c.text)};
}

std::string canonical_key(const TermPtr& p) { return canonicalize(p, false).text; }

bool alpha_eq(const TermPtr& p, const TermPtr& q) { return canonical_key(p) == canonical_key(q); }

} // namespace rtmpi::pi
