#pragma once

#include "vopt/newton.hpp"
#include "vopt/pareto.hpp"
#include "vopt/polynomial.hpp"
#include "vopt/rabier.hpp"
#include "vopt/sublevel.hpp"
#include "vopt/tangency.hpp"

#include <json.hpp>

namespace vopt {

using Json = nlohmann::json;

/// Non-finite doubles serialize as null.
Json jnum(double v);
Json to_json(const Vec& v);
Json to_json(const IVec& v);

const char* to_string(SectionVerdict v);
const char* to_string(PropernessVerdict v);
const char* to_string(KhovanskiiStatus v);
const char* to_string(ParetoKind v);
const char* to_string(ExistenceVerdict v);

Json to_json(const RabierResult& r);
Json to_json(const TangencySample& s);
Json to_json(const TangencyTrace& t);
Json to_json(const ValueCluster& c);
Json to_json(const TangencyEstimate& e);
Json to_json(const EscapeWitness& w);
Json to_json(const SectionProbeReport& r);
Json to_json(const PropernessProbeReport& r);
Json to_json(const PsProbeReport& r);
Json to_json(const LatticePolytope& p);
Json to_json(const FaceAtInfinity& f);
Json to_json(const NewtonComplex& c);
Json to_json(const ConvenienceReport& r);
Json to_json(const KhovanskiiResult& r);
Json to_json(const CriticalValueResult& r);
Json to_json(const ParetoPoint& p);
Json to_json(const ParetoSearchResult& r);
Json to_json(const CandidateValueSet& s);
Json to_json(const ExistenceReport& r);

} // namespace vopt
