#pragma once

#include "pluri/higherdim.hpp"
#include "pluri/refdata.hpp"
#include "pluri/threefold.hpp"

#include <string>
#include <vector>

namespace pluri {

enum class Format { markdown, csv, json };

Format parse_format(const std::string& s);

// Decimal digits used for enclosure endpoints in every format.
inline constexpr int kDecimalDigits = 12;

std::string format_report(const std::string& query, const ThresholdReport& r, Format f,
                          const Precision& prec = {});
std::string format_table(const std::vector<TableRow>& rows, Format f, const Precision& prec = {});
std::string format_diff(const DiffReport& d, Format f);
std::string format_enclosure(const RealExpr& e, const Enclosure& en, Format f, int digits = kDecimalDigits);

// Key/value block (higherdim outputs). Values are emitted as JSON strings
// unless they parse as integers or booleans.
std::string format_fields(const std::vector<std::pair<std::string, std::string>>& fields, Format f);

// Header of the CSV produced by format_table.
extern const char* const kTableCsvHeader;

} // namespace pluri
