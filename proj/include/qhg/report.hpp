#pragma once

#include <string>

#include <json.hpp>

#include "qhg/gromov.hpp"
#include "qhg/harness.hpp"
#include "qhg/qh_engine.hpp"
#include "qhg/shortarc.hpp"

namespace qhg {

using nlohmann::json;

/// Reports carry reals rounded to 12 significant digits so that reruns print identical bytes.
double round12(double v);
json num(double v);
json to_json(Point2 p);

json to_json(const DistanceEstimate& e);
json to_json(const ShortArcCert& c);
json to_json(const ProductRecord& r);
json to_json(const DeltaEstimate& d);
json to_json(const SequenceDiagnostics& d);
json to_json(const EquivalenceDiagnostics& d);
json to_json(const SandwichReport& r);
json to_json(const Subdivision& s);
json to_json(const TriangleSubdivision& t);
json to_json(const DisplacementEntry& e);
json to_json(const CompositionReport& c);
json to_json(const DeltaSummary& d);
json to_json(const Lemma31Run& run);
json to_json(const Theorem13Run& run);

/// Pretty-printed with a trailing newline.
std::string dump(const json& j);

}  // namespace qhg
