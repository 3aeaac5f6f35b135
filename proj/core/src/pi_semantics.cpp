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
#include <unordered_map>

#include "pi_internal.hpp"

namespace rtmpi::pi {

namespace {

// Late-style transitions: an input keeps its binder and is instantiated by
// the caller; a bound output carries the extruded name, always fresh.
struct Tr {
    enum class K { tau, out, bout, in } k;
    std::string x; ///< channel
    std::string y; ///< datum, extruded name or input binder
    TermPtr t;
};

bool sends(const Tr& a) { return a.k == Tr::K::out || a.k == Tr::K::bout; }

class Deriver {
public:
    explicit Deriver(detail::FreshSupply& fresh) : fresh_(fresh) {}

    std::vector<Tr> derive(const TermPtr& p)
    {
        switch (p->kind) {
        case Kind::nil: return {};
        case Kind::tau: return {Tr{Tr::K::tau, {}, {}, p->body()}};
        case Kind::out: return {Tr{Tr::K::out, p->channel, p->names[0], p->body()}};
        case Kind::in: return {Tr{Tr::K::in, p->channel, p->names[0], p->body()}};
        case Kind::sum: {
            std::vector<Tr> out;
            for (const auto& k : p->kids)
                for (auto& t : derive(k)) out.push_back(std::move(t));
            return out;
        }
        case Kind::par: return derive_par(p);
        case Kind::res: return derive_res(p);
        case Kind::bang: return derive_bang(p);
        case Kind::poly_out:
        case Kind::poly_in: break;
        }
        throw PreconditionError("polyadic sugar must be expanded before deriving transitions");
    }

private:
    // Synchronises a sender with a receiver; `wrap` places both continuations
    // into their context.
    template <class Wrap>
    void communicate(const Tr& snd, const Tr& rcv, Wrap wrap, std::vector<Tr>& out)
    {
        auto received = detail::subst(rcv.t, rcv.y, snd.y, fresh_);
        auto body = wrap(snd.t, received);
        if (snd.k == Tr::K::bout) body = res(snd.y, body);
        out.push_back(Tr{Tr::K::tau, {}, {}, body});
    }

    std::vector<Tr> derive_par(const TermPtr& p)
    {
        const auto& kids = p->kids;
        std::vector<std::vector<Tr>> each;
        for (const auto& k : kids) each.push_back(derive(k));

        auto replaced = [&](std::initializer_list<std::pair<std::size_t, TermPtr>> subs) {
            std::vector<TermPtr> ks = kids;
            for (const auto& [i, t] : subs) ks[i] = t;
            return par(std::move(ks));
        };

        std::vector<Tr> out;
        for (std::size_t i = 0; i < kids.size(); ++i)
            for (const auto& t : each[i]) out.push_back(Tr{t.k, t.x, t.y, replaced({{i, t.t}})});
        for (std::size_t i = 0; i < kids.size(); ++i)
            for (const auto& snd : each[i]) {
                if (!sends(snd)) continue;
                for (std::size_t j = 0; j < kids.size(); ++j) {
                    if (j == i) continue;
                    for (const auto& rcv : each[j]) {
                        if (rcv.k != Tr::K::in || rcv.x != snd.x) continue;
                        communicate(
                            snd, rcv, [&](const TermPtr& a, const TermPtr& b) { return replaced({{i, a}, {j, b}}); },
                            out);
                    }
                }
            }
        return out;
    }

    std::vector<Tr> derive_res(const TermPtr& p)
    {
        const auto& names = p->names;
        auto bound = [&](const std::string& n) { return std::find(names.begin(), names.end(), n) != names.end(); };
        std::vector<Tr> out;
        for (auto& t : derive(p->body())) {
            if (t.k != Tr::K::tau && bound(t.x)) continue;
            if (t.k == Tr::K::out && bound(t.y)) {
                // scope extrusion: the name leaves under a globally fresh identity
                auto z = fresh_.take();
                std::vector<std::string> rest;
                for (const auto& n : names)
                    if (n != t.y) rest.push_back(n);
                out.push_back(Tr{Tr::K::bout, t.x, z, res(std::move(rest), detail::subst(t.t, t.y, z, fresh_))});
                continue;
            }
            out.push_back(Tr{t.k, t.x, t.y, res(names, t.t)});
        }
        return out;
    }

    std::vector<Tr> derive_bang(const TermPtr& p)
    {
        auto steps = derive(p->body());
        std::vector<Tr> out;
        for (const auto& t : steps) out.push_back(Tr{t.k, t.x, t.y, par({t.t, p})});
        // two copies of the replicated process talking to each other
        for (const auto& snd : steps) {
            if (!sends(snd)) continue;
            for (const auto& rcv : steps) {
                if (rcv.k != Tr::K::in || rcv.x != snd.x) continue;
                communicate(
                    snd, rcv, [&](const TermPtr& a, const TermPtr& b) { return par({a, b}); }, out);
                out.back().t = par({out.back().t, p});
            }
        }
        return out;
    }

    detail::FreshSupply& fresh_;
};

std::string first_placeholder(const std::set<std::string>& taken)
{
    for (std::size_t k = 0;; ++k) {
        auto n = detail::placeholder_prefix + std::to_string(k);
        if (!taken.contains(n)) return n;
    }
}

struct KeyedStep {
    lts::ActionLabel label;
    TermPtr target;
    std::string key;
};

std::vector<KeyedStep> keyed_out(const TermPtr& p, const NameUniverse& u)
{
    // p is canonical: binders are named by depth, so an input binder is never
    // free in a sibling and no `_t` name occurs bound. Only free names need
    // to be avoided by the supply.
    const auto fn = free_names(p);
    detail::FreshSupply fresh(detail::temp_prefix);
    for (const auto& n : fn) fresh.reserve_above(n);
    auto trs = Deriver(fresh).derive(p);

    const auto ph = first_placeholder(fn);
    std::set<std::string> receivable = u.free_data;
    receivable.insert(fn.begin(), fn.end());
    receivable.insert(ph);

    std::vector<KeyedStep> out;
    auto emit = [&](lts::ActionLabel label, const TermPtr& t) {
        auto [term, key] = detail::canonical_form(t, u.eager_links);
        out.push_back(KeyedStep{std::move(label), std::move(term), std::move(key)});
    };
    for (const auto& t : trs) {
        switch (t.k) {
        case Tr::K::tau: emit(lts::ActionLabel::tau(), t.t); break;
        case Tr::K::out: emit(lts::ActionLabel::output(t.x, t.y), t.t); break;
        case Tr::K::bout: emit(lts::ActionLabel::bound_output(t.x, ph), detail::subst(t.t, t.y, ph, fresh)); break;
        case Tr::K::in:
            for (const auto& v : receivable) emit(lts::ActionLabel::input(t.x, v), detail::subst(t.t, t.y, v, fresh));
            break;
        }
    }
    std::sort(out.begin(), out.end(), [](const KeyedStep& a, const KeyedStep& b) {
        if (a.label != b.label) return a.label < b.label;
        return a.key < b.key;
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const KeyedStep& a, const KeyedStep& b) { return a.label == b.label && a.key == b.key; }),
              out.end());
    return out;
}

} // namespace

std::vector<Step> pi_out(const TermPtr& p, const NameUniverse& u)
{
    std::vector<Step> out;
    for (auto& s : keyed_out(detail::canonical_form(p, u.eager_links).first, u)) out.push_back(Step{std::move(s.label), std::move(s.target)});
    return out;
}

lts::StepGenerator pi_generator(const TermPtr& p, NameUniverse u)
{
    using Cache = std::unordered_map<std::string, TermPtr>;
    auto cache = std::make_shared<Cache>();
    auto [start, key] = detail::canonical_form(p, u.eager_links);
    cache->emplace(key, start);

    lts::StepGenerator g;
    g.initial = key;
    g.successors = [cache, u = std::move(u)](const std::string& k) {
        TermPtr term;
        if (auto it = cache->find(k); it != cache->end()) term = it->second;
        else term = parse_pi(k, true);
        std::vector<lts::Successor> out;
        for (auto& s : keyed_out(term, u)) {
            cache->emplace(s.key, s.target);
            out.push_back(lts::Successor{std::move(s.label), std::move(s.key)});
        }
        return out;
    };
    return g;
}

} // namespace rtmpi::pi
