// Copyright 2026 The locc-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "locc/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace locc {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

const Json &field(const Json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        throw StructuralError(std::string("json: missing field '") + key + "'");
    }
    return j.at(key);
}

template <typename T>
T get(const Json &j, const char *key) {
    try {
        return field(j, key).get<T>();
    } catch (const nlohmann::json::exception &ex) {
        throw StructuralError(std::string("json: field '") + key + "': " + ex.what());
    }
}

Json strings(const std::vector<std::string> &v) {
    Json out = Json::array();
    for (const auto &s : v) {
        out.push_back(s);
    }
    return out;
}

ResourceKind resource_kind(const std::string &name) {
    if (name == "EPR") {
        return ResourceKind::kEpr;
    }
    if (name == "GHZ3") {
        return ResourceKind::kGhz3;
    }
    if (name == "F4") {
        return ResourceKind::kF4;
    }
    throw StructuralError("json: unknown resource kind '" + name + "'");
}

const char *resource_kind_name(ResourceKind k) {
    switch (k) {
        case ResourceKind::kEpr:
            return "EPR";
        case ResourceKind::kGhz3:
            return "GHZ3";
        default:
            return "F4";
    }
}

Json node_to_json(const NodePtr &node) {
    if (!node) {
        return nullptr;
    }
    Json j;
    std::visit(overloaded{
                   [&](const AttachStep &s) {
                       j["kind"] = "attach";
                       Json holders = Json::array();
                       for (const auto &h : s.resource.holders) {
                           holders.push_back(Json{{"party", h.party}, {"wire", h.wire}});
                       }
                       j["resource"] = Json{{"kind", resource_kind_name(s.resource.kind)},
                                            {"dim", s.resource.dim},
                                            {"holders", holders}};
                       j["next"] = node_to_json(s.next);
                   },
                   [&](const MeasureStep &s) {
                       j["kind"] = "measure";
                       j["party"] = s.measurement.party;
                       j["wires"] = strings(s.measurement.wires);
                       Json outcomes = Json::array();
                       for (std::size_t k = 0; k < s.measurement.outcomes.size(); k++) {
                           const auto &o = s.measurement.outcomes[k];
                           Json terms = Json::array();
                           for (const auto &t : o.projector.terms) {
                               terms.push_back(t);
                           }
                           outcomes.push_back(Json{{"label", o.label},
                                                   {"terms", terms},
                                                   {"child", node_to_json(k < s.children.size() ? s.children[k]
                                                                                                  : NodePtr{})}});
                       }
                       j["outcomes"] = outcomes;
                   },
                   [&](const CnotStep &s) {
                       j["kind"] = "cnot";
                       j["control"] = s.control;
                       j["target"] = s.target;
                       j["next"] = node_to_json(s.next);
                   },
                   [&](const TeleportStep &s) {
                       j["kind"] = "teleport";
                       j["source"] = s.source;
                       j["destination"] = s.destination;
                       j["dim"] = s.dim;
                       j["next"] = node_to_json(s.next);
                   },
                   [&](const FinishStep &s) {
                       j["kind"] = "finish";
                       j["verdict"] = std::visit(
                           overloaded{
                               [](const Identified &v) { return Json{{"type", "identified"}, {"label", v.label}}; },
                               [](const TerminalPair &v) {
                                   return Json{{"type", "terminal-pair"},
                                               {"labels", Json::array({v.labels[0], v.labels[1]})},
                                               {"justification", v.justification}};
                               },
                               [](const TerminalSubset &v) {
                                   return Json{{"type", "terminal-subset"},
                                               {"families", strings(v.families)},
                                               {"finisher", v.finisher}};
                               },
                           },
                           s.verdict);
                   },
               },
               node->step);
    if (!node->annotation.empty()) {
        j["annotation"] = node->annotation;
    }
    return j;
}

NodePtr node_from_json(const Json &j) {
    if (j.is_null()) {
        return nullptr;
    }
    std::string kind = get<std::string>(j, "kind");
    std::string annotation = j.contains("annotation") ? get<std::string>(j, "annotation") : std::string();
    if (kind == "attach") {
        const Json &r = field(j, "resource");
        Resource res;
        res.kind = resource_kind(get<std::string>(r, "kind"));
        res.dim = get<int>(r, "dim");
        for (const auto &h : field(r, "holders")) {
            res.holders.push_back({get<std::string>(h, "party"), get<std::string>(h, "wire")});
        }
        return attach(std::move(res), node_from_json(field(j, "next")), annotation);
    }
    if (kind == "measure") {
        Measurement m;
        m.party = get<std::string>(j, "party");
        m.wires = get<std::vector<std::string>>(j, "wires");
        std::vector<NodePtr> children;
        for (const auto &o : field(j, "outcomes")) {
            MeasurementOutcome out;
            out.label = get<std::string>(o, "label");
            out.projector.wires = m.wires;
            out.projector.terms = get<std::vector<ElementaryTerm>>(o, "terms");
            m.outcomes.push_back(std::move(out));
            children.push_back(node_from_json(field(o, "child")));
        }
        return measure(std::move(m), std::move(children), annotation);
    }
    if (kind == "cnot") {
        return cnot(get<std::string>(j, "control"), get<std::string>(j, "target"), node_from_json(field(j, "next")),
                    annotation);
    }
    if (kind == "teleport") {
        return teleport(get<std::string>(j, "source"), get<std::string>(j, "destination"), get<int>(j, "dim"),
                        node_from_json(field(j, "next")), annotation);
    }
    if (kind == "finish") {
        const Json &v = field(j, "verdict");
        std::string type = get<std::string>(v, "type");
        if (type == "identified") {
            return finish(Identified{get<std::string>(v, "label")}, annotation);
        }
        if (type == "terminal-pair") {
            auto labels = get<std::vector<std::string>>(v, "labels");
            if (labels.size() != 2) {
                throw StructuralError("json: terminal-pair needs exactly two labels");
            }
            TerminalPair pair{{labels[0], labels[1]}};
            if (v.contains("justification")) {
                pair.justification = get<std::string>(v, "justification");
            }
            return finish(pair, annotation);
        }
        if (type == "terminal-subset") {
            TerminalSubset s{get<std::vector<std::string>>(v, "families")};
            if (v.contains("finisher")) {
                s.finisher = get<std::string>(v, "finisher");
            }
            return finish(s, annotation);
        }
        throw StructuralError("json: unknown verdict type '" + type + "'");
    }
    throw StructuralError("json: unknown node kind '" + kind + "'");
}

}  // namespace

double round12(double x) {
    if (!std::isfinite(x) || x == 0.0) {
        return x == 0.0 ? 0.0 : x;
    }
    return std::stod(format12(x));
}

std::string format12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x == 0.0 ? 0.0 : x);
    return buf;
}

Json layout_to_json(const SystemLayout &layout) {
    Json parties = Json::array();
    for (const auto &p : layout.parties()) {
        Json wires = Json::array();
        for (const auto &w : p.wires) {
            wires.push_back(Json{{"name", w.name}, {"dim", w.dim}, {"ancilla", w.ancilla}});
        }
        parties.push_back(Json{{"name", p.name}, {"wires", wires}});
    }
    return Json{{"parties", parties}};
}

SystemLayout layout_from_json(const Json &j) {
    std::vector<PartyDecl> parties;
    for (const auto &p : field(j, "parties")) {
        PartyDecl decl{get<std::string>(p, "name"), {}};
        for (const auto &w : field(p, "wires")) {
            decl.wires.push_back({get<std::string>(w, "name"), get<int>(w, "dim"), get<bool>(w, "ancilla")});
        }
        parties.push_back(std::move(decl));
    }
    return SystemLayout(std::move(parties));
}

Json state_to_json(const SparseState &s) {
    Json terms = Json::array();
    s.for_each([&](LinearIndex idx, Amplitude a) {
        terms.push_back(Json::array({s.layout().decode(idx), round12(a.real()), round12(a.imag())}));
    });
    return Json{{"layout", layout_to_json(s.layout())}, {"terms", terms}};
}

SparseState state_from_json(const Json &j) {
    SystemLayout layout = layout_from_json(field(j, "layout"));
    std::vector<std::pair<BasisIndex, Amplitude>> terms;
    for (const auto &t : field(j, "terms")) {
        if (!t.is_array() || t.size() != 3) {
            throw StructuralError("json: state term must be [levels, re, im]");
        }
        terms.emplace_back(t[0].get<BasisIndex>(), Amplitude(t[1].get<double>(), t[2].get<double>()));
    }
    return SparseState::from_terms(layout, terms);
}

Json ensemble_to_json(const Ensemble &e) {
    Json families = Json::object();
    for (const auto &[tag, labels] : e.families) {
        families[tag] = strings(labels);
    }
    Json members = Json::array();
    for (const auto &m : e.members) {
        Json terms = state_to_json(m.state)["terms"];
        members.push_back(Json{{"label", m.label.str()}, {"family", m.label.family}, {"terms", terms}});
    }
    return Json{{"format", "locc-lab/ensemble"},
                {"version", 1},
                {"name", e.name},
                {"size", e.size()},
                {"layout", layout_to_json(e.layout)},
                {"families", families},
                {"members", members}};
}

Json tally_to_json(const CostTally &t) {
    Json entries = Json::array();
    for (const auto &[key, e] : t.entries) {
        entries.push_back(Json{{"key", key},
                               {"kind", e.kind},
                               {"copies", round12(e.copies)},
                               {"ebits_per_copy", round12(e.ebits_per_copy)}});
    }
    return Json{{"entries", entries}, {"ebits", round12(t.ebits)}};
}

CostTally tally_from_json(const Json &j) {
    CostTally t;
    for (const auto &e : field(j, "entries")) {
        t.entries[get<std::string>(e, "key")] =
            CostEntry{get<std::string>(e, "kind"), get<double>(e, "copies"), get<double>(e, "ebits_per_copy")};
    }
    t.ebits = get<double>(j, "ebits");
    return t;
}

Json protocol_to_json(const ProtocolTree &p) {
    Json recovery = Json::array();
    for (const auto &g : p.recovery) {
        recovery.push_back(Json{{"control", g.control}, {"target", g.target}});
    }
    return Json{{"format", "locc-lab/protocol"},
                {"version", 1},
                {"name", p.name},
                {"layout", layout_to_json(p.layout)},
                {"recovery", recovery},
                {"notes", strings(p.notes)},
                {"root", node_to_json(p.root)}};
}

ProtocolTree protocol_from_json(const Json &j) {
    if (j.contains("format") && j.at("format") != "locc-lab/protocol") {
        throw StructuralError("json: not a protocol document");
    }
    ProtocolTree p;
    p.name = get<std::string>(j, "name");
    p.layout = layout_from_json(field(j, "layout"));
    if (j.contains("recovery")) {
        for (const auto &g : j.at("recovery")) {
            p.recovery.push_back({get<std::string>(g, "control"), get<std::string>(g, "target")});
        }
    }
    if (j.contains("notes")) {
        p.notes = get<std::vector<std::string>>(j, "notes");
    }
    p.root = node_from_json(field(j, "root"));
    return p;
}

Json report_to_json(const RunReport &r) {
    Json members = Json::array();
    for (const auto &m : r.members) {
        Json paths = Json::array();
        for (const auto &p : m.paths) {
            Json transcript = Json::array();
            for (const auto &t : p.transcript) {
                transcript.push_back(Json{{"annotation", t.annotation}, {"event", t.event}});
            }
            paths.push_back(Json{{"path", p.path},
                                 {"probability", round12(p.probability)},
                                 {"verdict", p.verdict},
                                 {"leaf_ok", p.leaf_ok},
                                 {"transcript", transcript},
                                 {"cost", tally_to_json(p.cost)}});
        }
        members.push_back(Json{{"label", m.label},
                               {"prior", round12(m.prior)},
                               {"total_probability", round12(m.total_probability)},
                               {"success", m.success},
                               {"paths", paths}});
    }
    Json leaves = Json::array();
    for (const auto &l : r.leaves) {
        leaves.push_back(Json{{"path", l.path},
                              {"verdict", l.verdict},
                              {"candidates", strings(l.candidates)},
                              {"ok", l.ok},
                              {"detail", l.detail}});
    }
    Json failures = Json::array();
    for (const auto &f : r.failures) {
        failures.push_back(Json{{"path", f.path},
                                {"kind", f.kind},
                                {"message", f.message},
                                {"candidates", strings(f.candidates)}});
    }
    Json violations = Json::array();
    for (const auto &v : r.orthogonality.violations) {
        violations.push_back(
            Json{{"path", v.path}, {"first", v.first}, {"second", v.second}, {"overlap", round12(v.overlap)}});
    }
    return Json{{"format", "locc-lab/report"},
                {"version", 1},
                {"protocol", r.protocol},
                {"ensemble", r.ensemble},
                {"success", r.success},
                {"members_total", r.members.size()},
                {"members_identified", r.identified_count()},
                {"expected", tally_to_json(r.expected)},
                {"orthogonality",
                 Json{{"outcomes_checked", r.orthogonality.outcomes_checked},
                      {"pairs_checked", r.orthogonality.pairs_checked},
                      {"max_overlap", round12(r.orthogonality.max_overlap)},
                      {"violations", violations}}},
                {"failures", failures},
                {"notes", strings(r.notes)},
                {"leaves", leaves},
                {"members", members}};
}

RunReport report_from_json(const Json &j) {
    RunReport r;
    r.protocol = get<std::string>(j, "protocol");
    r.ensemble = get<std::string>(j, "ensemble");
    r.success = get<bool>(j, "success");
    r.expected = tally_from_json(field(j, "expected"));
    const Json &o = field(j, "orthogonality");
    r.orthogonality.outcomes_checked = get<std::size_t>(o, "outcomes_checked");
    r.orthogonality.pairs_checked = get<std::size_t>(o, "pairs_checked");
    r.orthogonality.max_overlap = get<double>(o, "max_overlap");
    for (const auto &v : field(o, "violations")) {
        r.orthogonality.violations.push_back({get<std::string>(v, "path"), get<std::string>(v, "first"),
                                              get<std::string>(v, "second"), get<double>(v, "overlap")});
    }
    for (const auto &f : field(j, "failures")) {
        r.failures.push_back({get<std::string>(f, "path"), get<std::string>(f, "kind"),
                              get<std::string>(f, "message"), get<std::vector<std::string>>(f, "candidates")});
    }
    r.notes = get<std::vector<std::string>>(j, "notes");
    for (const auto &l : field(j, "leaves")) {
        r.leaves.push_back({get<std::string>(l, "path"), get<std::string>(l, "verdict"),
                            get<std::vector<std::string>>(l, "candidates"), get<bool>(l, "ok"),
                            get<std::string>(l, "detail")});
    }
    for (const auto &m : field(j, "members")) {
        MemberReport mr;
        mr.label = get<std::string>(m, "label");
        mr.prior = get<double>(m, "prior");
        mr.total_probability = get<double>(m, "total_probability");
        mr.success = get<bool>(m, "success");
        for (const auto &p : field(m, "paths")) {
            PathRecord pr;
            pr.path = get<std::string>(p, "path");
            pr.probability = get<double>(p, "probability");
            pr.verdict = get<std::string>(p, "verdict");
            pr.leaf_ok = get<bool>(p, "leaf_ok");
            for (const auto &t : field(p, "transcript")) {
                pr.transcript.push_back({get<std::string>(t, "annotation"), get<std::string>(t, "event")});
            }
            pr.cost = tally_from_json(field(p, "cost"));
            mr.paths.push_back(std::move(pr));
        }
        r.members.push_back(std::move(mr));
    }
    return r;
}

std::string report_to_csv(const RunReport &r) {
    std::ostringstream out;
    out << "member,path,probability,verdict,ebits\n";
    auto quoted = [](const std::string &s) {
        std::string q = "\"";
        for (char c : s) {
            q += c;
            if (c == '"') {
                q += '"';
            }
        }
        return q + "\"";
    };
    for (const auto &m : r.members) {
        for (const auto &p : m.paths) {
            out << quoted(m.label) << "," << quoted(p.path) << "," << format12(p.probability) << ","
                << quoted(p.verdict) << "," << format12(p.cost.ebits) << "\n";
        }
    }
    return out.str();
}

}  // namespace locc
