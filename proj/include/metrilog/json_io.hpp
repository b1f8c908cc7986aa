#ifndef METRILOG_JSON_IO_HPP
#define METRILOG_JSON_IO_HPP

#include <json.hpp>

#include "metrilog/corpus.hpp"
#include "metrilog/omitting.hpp"
#include "metrilog/ultraproduct.hpp"

namespace metrilog {

using Json = nlohmann::ordered_json;

/// Stable machine-readable renderings; rationals appear as "p/q" strings.
Json to_json(const Rat& r);
Json to_json(const ValueInterval& v);
Json to_json(Verdict v);
Json to_json(const Term& t);
Json formula_ast_json(const FormulaPtr& f);

Json to_json(const MetricStructure& m, const MetricViolation& v);
Json to_json(const MetricStructure& m, const MetricReport& r);
Json to_json(const MetricStructure& m, const ModulusReport& r);
Json to_json(const ModelsReport& r);
Json to_json(const ModIntervalReport& r);
Json to_json(const CompareReport& r);
Json to_json(const MetricStructure& m, const RealizeReport& r);
Json to_json(const MetricStructure& m, const OmitsReport& r);
Json to_json(const Registry& reg, const WitnessPool& pool, const PrincipalityReport& r);
Json to_json(const Registry& reg, const WitnessPool& pool, const MetricPrincipalityReport& r);
Json to_json(const Registry& reg, const OmitSearchReport& r);
Json to_json(const Claim3Report& r);

std::vector<std::string> tuple_names(const MetricStructure& m, const std::vector<int>& tuple);

}  // namespace metrilog

#endif
