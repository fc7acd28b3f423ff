#pragma once

#include <string>
#include <vector>

namespace vanhove {

// Shortest round-trip decimal form; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double x);

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
    // Header row, comma separator, LF line endings; cells containing ',' or '"' are quoted.
    std::string to_csv() const;
    // Space-aligned columns for terminals.
    std::string to_text() const;
};

}  // namespace vanhove
