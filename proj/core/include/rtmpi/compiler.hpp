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

#include <map>
#include <string>

#include "rtmpi/pi.hpp"
#include "rtmpi/rtm.hpp"

namespace rtmpi::compiler {

/// Injective renaming of machine symbols into pi names. The images carry
/// prefixes (`st_`, `dt_`, `act_`) that no infrastructure channel uses.
struct NameMap {
    std::map<std::string, std::string> states;
    std::map<std::string, std::string> data; ///< includes the blank
    std::map<std::string, std::string> actions;

    static NameMap of(const rtm::Rtm& m);
    /// Labels of the restricted compiled system back to machine labels:
    /// `nu!act_a` becomes `a`.
    std::map<lts::ActionLabel, lts::ActionLabel> action_relabelling() const;
};

struct CompilationOutput {
    pi::TermPtr term;       ///< surface form, polyadic sugar intact
    pi::TermPtr normalized; ///< normalize(term)
    NameMap names;
    /// C, B, H, S, Cells, Tape, Control, M
    std::map<std::string, pi::TermPtr> templates;
};

/// c?(t,l,r,u,d).C(t,l,r,u,d)
pi::TermPtr cell_template();
/// C(t,l,r,u,d): the two-summand body of a cell.
pi::TermPtr cell_body(const std::string& t, const std::string& l, const std::string& r, const std::string& u,
                      const std::string& d);
/// b_l?(t,r).(v u,l)B_l + b_r?(t,l).(v u,r)B_r
pi::TermPtr generator_template();
pi::TermPtr left_generator(const std::string& t, const std::string& l, const std::string& r, const std::string& u);
pi::TermPtr right_generator(const std::string& t, const std::string& l, const std::string& r, const std::string& u);
/// h?(t,l,r,u,d).H(t,l,r,u,d)
pi::TermPtr head_template();
/// H(t,l,r,u,d): read, write, left and right branches.
pi::TermPtr head_body(const std::string& t, const std::string& l, const std::string& r, const std::string& u,
                      const std::string& d);

/// S: one st_s?() branch per state, then one dt_d?() branch per tape symbol.
pi::TermPtr control_template(const rtm::Rtm& m);
/// S_{s,d}: one summand per rule leaving s on d; 0 when there is none.
pi::TermPtr control_step(const rtm::Rtm& m, const std::string& state, const std::string& datum);
/// (v st...)(S_{s,d} | !S)
pi::TermPtr control_term(const rtm::Rtm& m, const std::string& state, const std::string& datum);

/// Cells for the whole tape: generators at both ends, replicators, cells.
pi::TermPtr cells_term(const rtm::Rtm& m, const rtm::TapeInstance& tape);
/// Tape^i for an arbitrary tape instance; data names stay free.
pi::TermPtr tape_snapshot(const rtm::Rtm& m, const rtm::TapeInstance& tape);
/// M_{s,tape}: control and tape, with read/write/left/right and data names restricted.
pi::TermPtr configuration_term(const rtm::Rtm& m, const rtm::Configuration& c);

CompilationOutput compile(const rtm::Rtm& m);

} // namespace rtmpi::compiler
