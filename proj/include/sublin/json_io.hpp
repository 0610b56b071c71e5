// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "sublin/criteria.hpp"
#include "sublin/kernels.hpp"
#include "sublin/measure.hpp"
#include "sublin/solver.hpp"
#include "sublin/verify.hpp"

namespace sublin::io {

// +inf is kept readable and round-trippable as the string "inf"
// (JSON has no infinity literal and the vendored dump would emit null).
nlohmann::json encode_number(double v);
double decode_number(const nlohmann::json& j);

nlohmann::json measure_to_json(const Measure& m);
Measure measure_from_json(const nlohmann::json& j);

nlohmann::json kernel_to_json(const Kernel& k);
Kernel kernel_from_json(const nlohmann::json& j);

nlohmann::json params_to_json(const Params& prm);
Params params_from_json(const nlohmann::json& j);

nlohmann::json criteria_to_json(const CriteriaReport& r,
                                const std::vector<CriteriaTrend>* trend = nullptr);
nlohmann::json solve_to_json(const SolveReport& r);
nlohmann::json verify_to_json(const VerifyReport& r);
nlohmann::json diagnostics_to_json(const KernelDiagnostics& d);

// one row per iteration: index, L^{1+q} norm, sup-change, residual
std::string iterations_csv(const SolveReport& r);

// canonical text form: sorted keys (nlohmann object order), two-space
// indent, trailing newline; identical reports dump byte-identically
std::string dump_json(const nlohmann::json& j);

} // namespace sublin::io
