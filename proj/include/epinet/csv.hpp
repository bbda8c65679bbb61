#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace epinet {

/// Minimal RFC-4180-style CSV support: quoted fields, embedded commas and
/// doubled quotes, CR/LF line endings. Enough for the locality snapshots
/// (addresses contain commas) and for this tool's own outputs.
namespace csv {

/// Splits one logical record. The caller feeds complete records (reader
/// handles multi-line quoted fields).
std::vector<std::string> split_line(const std::string& line);

/// Reads all records from a stream. Skips blank lines. Handles quoted
/// fields spanning lines.
std::vector<std::vector<std::string>> read_all(std::istream& in);

/// Quotes a field if it contains a comma, quote, or newline.
std::string escape(const std::string& field);

/// Joins and escapes one row (no trailing newline).
std::string join(const std::vector<std::string>& row);

/// Strips leading/trailing whitespace.
std::string trim(const std::string& s);

}  // namespace csv
}  // namespace epinet
