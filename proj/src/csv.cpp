#include "vanhove/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "vanhove/error.hpp"

namespace vanhove {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

void Table::add(std::vector<std::string> row) {
    require(row.size() == header.size(), ErrorKind::Dimension, "table row width does not match the header");
    rows.push_back(std::move(row));
}

namespace {

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void append_line(std::string& out, const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (k) out += ',';
        out += quote(cells[k]);
    }
    out += '\n';
}

}  // namespace

std::string Table::to_csv() const {
    std::string out;
    append_line(out, header);
    for (const auto& r : rows) append_line(out, r);
    return out;
}

std::string Table::to_text() const {
    std::vector<std::size_t> width(header.size(), 0);
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    std::string out;
    auto line = [&](const std::vector<std::string>& cells) {
        std::string l;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) l += "  ";
            l += cells[c];
            if (c + 1 < cells.size()) l.append(width[c] - cells[c].size(), ' ');
        }
        out += l + '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
    return out;
}

}  // namespace vanhove
