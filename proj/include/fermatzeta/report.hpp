#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "fermatzeta/monomial.hpp"
#include "fermatzeta/point_counter.hpp"
#include "fermatzeta/zeta.hpp"

namespace fermatzeta {

nlohmann::json family_to_json(const FamilyDescriptor& f);

/// Admissible types, strong and weak classes, and the predicted zeta factors.
nlohmann::json classes_to_json(const FamilyDescriptor& f);
std::string classes_to_text(const nlohmann::json& classes);

/// One block per strong class; entry (target, source) is the canonical spec.
nlohmann::json pf_to_json(const FamilyDescriptor& f);
/// Each block as a LaTeX pmatrix, rows indexed by targets and columns by sources.
std::string pf_to_latex(const FamilyDescriptor& f);
std::string pf_to_text(const FamilyDescriptor& f);

std::string report_to_text(const nlohmann::json& report);
std::string report_to_latex(const nlohmann::json& report);

/// Counts over F_{q^s}, s = 1..terms, with the numerator they determine (degree = number
/// of admissible types).
nlohmann::json counts_to_json(const FamilyDescriptor& f, const FieldDescriptor& field, FqElem lambda,
                              const std::vector<PointCount>& counts);

}  // namespace fermatzeta
