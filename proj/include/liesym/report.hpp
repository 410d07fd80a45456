#pragma once

// Text and JSON renderings of engine results. JSON reports carry
// "schema": "liesym.report/1"; rationals are exact strings such as "-3/2".

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "liesym/registry.hpp"
#include "liesym/verifynum.hpp"

namespace liesym {

enum class Format { Text, Json };
std::optional<Format> parse_format(std::string_view name);

inline constexpr const char* kReportSchema = "liesym.report/1";

std::string render_symmetries(const OdeSystem& sys, const AnsatzSpec& window, const SymmetryBasis& basis, Format f);
std::string render_algebra(const OdeSystem& sys, const AnsatzSpec& window, const SymmetryBasis& basis,
                           const AlgebraOutcome& algebra, Format f);
std::string render_reduction(const OdeSystem& sys, const ReductionOutcome& red, Format f);

struct VerifyLine {
  std::string field;
  MappingReport report;
};
std::string render_verify(const OdeSystem& sys, const std::vector<VerifyLine>& lines, const MappingOptions& opts,
                          Format f);

std::string render_case(const CaseReport& rep, Format f);
std::string render_cases(const std::vector<CaseReport>& reps, Format f);
std::string render_case_list(const std::vector<CaseSpec>& specs, Format f);

}  // namespace liesym
