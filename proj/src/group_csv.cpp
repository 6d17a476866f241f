#include "eqmargin/errors.hpp"
#include "eqmargin/inference.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>

namespace eqmargin {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string_view unquote(std::string_view s) {
    if (s.size() >= 2 && s.front() == '"' && s.back() == '"') return s.substr(1, s.size() - 2);
    return s;
}

}  // namespace

GroupedSamples parse_group_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    GroupedSamples out;

    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view row = trim(line);
        if (row.empty()) continue;
        const auto comma = row.find(',');
        if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
            throw InputFormatError("csv line " + std::to_string(line_no) +
                                   ": expected exactly two fields");
        }
        const std::string_view group = unquote(trim(row.substr(0, comma)));
        const std::string_view value = trim(row.substr(comma + 1));

        if (!header_seen) {
            if (group != "group" || unquote(value) != "value") {
                throw InputFormatError("csv: header must be 'group,value'");
            }
            header_seen = true;
            continue;
        }
        if (group.empty()) {
            throw InputFormatError("csv line " + std::to_string(line_no) + ": empty group label");
        }

        double x = 0.0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), x);
        if (ec != std::errc() || ptr != value.data() + value.size()) {
            throw InputFormatError("csv line " + std::to_string(line_no) + ": '" +
                                   std::string(value) + "' is not a number");
        }

        if (out.label_a.empty() || group == out.label_a) {
            out.label_a = group;
            out.group_a.push_back(x);
        } else if (out.label_b.empty() || group == out.label_b) {
            out.label_b = group;
            out.group_b.push_back(x);
        } else {
            throw InputFormatError("csv line " + std::to_string(line_no) +
                                   ": more than two distinct groups");
        }
    }
    if (!header_seen) throw InputFormatError("csv: missing 'group,value' header");
    if (out.label_b.empty()) throw InputFormatError("csv: exactly two groups are required");
    return out;
}

GroupedSamples read_group_csv(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw InputFormatError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return parse_group_csv(buffer.str());
}

}  // namespace eqmargin
