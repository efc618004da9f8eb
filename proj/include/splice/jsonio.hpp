#ifndef SPLICE_JSONIO_HPP
#define SPLICE_JSONIO_HPP

#include <string>

#include "json.hpp"
#include "splice/numeric.hpp"

namespace splice {

using ordered_json = nlohmann::ordered_json;

// Integers are emitted as JSON numbers while they fit comfortably in every
// consumer (|v| <= 2^53), and as decimal strings beyond that.
ordered_json int_to_json(const Int& v);
Int json_to_int(const ordered_json& j, const std::string& what);

// Accepts "p", "p/q", {"num","den"}, or a JSON integer.
Rat json_to_rat(const ordered_json& j, const std::string& what);

// 1-based line/column for a byte offset into a document.
std::pair<int, int> line_column_at(const std::string& text, size_t byte);

// json::parse wrapper converting syntax errors to ParseError with line/column.
ordered_json parse_json_document(const std::string& text);

}  // namespace splice

#endif
