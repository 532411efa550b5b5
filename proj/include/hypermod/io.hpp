#pragma once

// Variety description files, element expressions and the one-object-per-line
// JSON records of the command-line tool.

#include "hypermod/ranges.hpp"
#include "hypermod/stable.hpp"
#include "hypermod/variety.hpp"

#include <json.hpp>

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hypermod {

class InputError : public std::runtime_error {
public:
    enum class Kind { syntax, schema, validation };

    InputError(Kind kind, const std::string& message);
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Parses and validates a variety description. Syntax errors carry a line and
/// column (JSON) or a field path (coefficients); validation failures list every
/// violation reported by validate().
VarietyData parse_variety(std::string_view text);
VarietyData parse_variety_file(const std::filesystem::path& path);

/// Inverse of parse_variety for any variety whose elements live in its ring.
nlohmann::ordered_json variety_to_json(const VarietyData& v);

/// Linear combination of basis labels such as "3u", "2h_1+3h_2", "-1/2 a*b".
/// A coefficient without a label multiplies the unit. Labels are matched
/// longest first. Throws InputError(syntax) on malformed text.
Element parse_element(const std::shared_ptr<const RingPresentation>& ring, std::string_view text);

/// parse_element restricted to homogeneous degree-2 classes.
Element parse_divisor_class(const std::shared_ptr<const RingPresentation>& ring, std::string_view text);

nlohmann::ordered_json to_json(const BettiTable& t);
nlohmann::ordered_json to_json(const RangeReport& r);
nlohmann::ordered_json to_json(const PoincareSeries& s);

BettiTable betti_table_from_json(const nlohmann::json& j);
RangeReport range_report_from_json(const nlohmann::json& j);
PoincareSeries poincare_series_from_json(const nlohmann::json& j);

}  // namespace hypermod
