#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace cmgeval::cli {

/// Splits one RFC 4180 line ("a,\"b,c\",d"). Embedded newlines are not supported.
std::vector<std::string> split_csv_line(std::string_view line);

/// Reads CSV rows up to the first blank line or end of input.
std::vector<std::vector<std::string>> read_csv_block(std::istream& in);

}  // namespace cmgeval::cli
