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

#ifndef LOCC_SERIALIZE_HPP
#define LOCC_SERIALIZE_HPP

#include <string>

#include "json.hpp"
#include "locc/engine.hpp"
#include "locc/ensembles.hpp"
#include "locc/protocol.hpp"

namespace locc {

using Json = nlohmann::ordered_json;

/// Rounds to 12 significant digits so printed output is reproducible.
double round12(double x);
/// %.12g text form.
std::string format12(double x);

Json layout_to_json(const SystemLayout &layout);
SystemLayout layout_from_json(const Json &j);

/// {"layout": ..., "terms": [[[levels...], re, im], ...]} in increasing index order.
Json state_to_json(const SparseState &s);
SparseState state_from_json(const Json &j);

/// State list plus family manifest.
Json ensemble_to_json(const Ensemble &e);

Json tally_to_json(const CostTally &t);
CostTally tally_from_json(const Json &j);

Json protocol_to_json(const ProtocolTree &p);
/// Throws StructuralError on malformed input.
ProtocolTree protocol_from_json(const Json &j);

Json report_to_json(const RunReport &r);
RunReport report_from_json(const Json &j);

/// Header "member,path,probability,verdict,ebits", one row per member path.
std::string report_to_csv(const RunReport &r);

}  // namespace locc

#endif
