#ifndef QAPNET_CSV_H_
#define QAPNET_CSV_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qapnet::csv {

struct Row {
  std::size_t line = 0;  // 1-based line number in the source
  std::vector<std::string> fields;
};

// Reads comma-separated records. Blank lines and lines starting with '#'
// are skipped; double-quoted fields may contain commas and "" escapes.
// The first non-comment line is returned as the header.
class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  std::optional<Row> Next();

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::vector<std::string> SplitLine(std::string_view line);

// Quotes a field only when it contains a comma, quote or newline.
std::string Escape(std::string_view field);

// Strict parsers: the whole field must be consumed.
std::optional<std::int64_t> ParseInt(std::string_view field);
std::optional<double> ParseDouble(std::string_view field);

std::string Trim(std::string_view s);

}  // namespace qapnet::csv

#endif  // QAPNET_CSV_H_
