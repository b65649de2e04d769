#pragma once

#include <json.hpp>

#include "lptorsion/analysis.hpp"
#include "lptorsion/check.hpp"
#include "lptorsion/interval.hpp"
#include "lptorsion/pinching.hpp"
#include "lptorsion/riccati.hpp"
#include "lptorsion/spectral.hpp"
#include "lptorsion/torsion.hpp"

namespace lpt {

using json = nlohmann::ordered_json;

// Scalars are always strings: "2", "-1/4", "1+1/2*sqrt(3)", or a decimal
// for approximate values. Intervals are [lo, hi, kind] with hi = "inf" for
// an unbounded interval and kind one of open, closed, left-open, right-open;
// the empty interval is null. Sets are lists of intervals.
json to_json(const Scalar& x);
json to_json(const ExponentInterval& i);
json to_json(const ExponentSet& s);
json to_json(const std::vector<Scalar>& xs);
json to_json(const CheckReport& c);
json to_json(const std::vector<CheckReport>& cs);

Scalar scalar_from_json(const json& j);
ExponentInterval interval_from_json(const json& j);
ExponentSet set_from_json(const json& j);

json to_json(const ExteriorSpectrum& e);
json to_json(const DegreeReport& r);
DegreeReport degree_report_from_json(const json& j);
json to_json(const ObstructionReport& r);
json to_json(const NonvanishingWindow& w);
json to_json(const RiccatiBatchReport& r);
json to_json(const LemmaRReport& r);
json to_json(const RadialReport& r);
json to_json(const KunnethReport& r);

// True when every entry of a "checks" array passed.
bool all_checks_pass(const json& report);

}  // namespace lpt
