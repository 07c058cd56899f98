#include "disparity/records_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "disparity/error.hpp"

namespace disparity {

std::optional<InputFormat> parse_input_format(std::string_view name) {
    if (name == "records") return InputFormat::records;
    if (name == "aggregated") return InputFormat::aggregated;
    return std::nullopt;
}

std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw Error("unterminated quoted field");
    fields.push_back(std::move(cur));
    return fields;
}

namespace {

struct Line {
    std::size_t number;
    std::string_view text;
};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Non-blank lines with their 1-based numbers; strips a UTF-8 BOM.
std::vector<Line> split_lines(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
    std::vector<Line> out;
    std::size_t number = 0;
    while (!text.empty()) {
        ++number;
        const auto eol = text.find('\n');
        auto line = text.substr(0, eol);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!trim(line).empty()) out.push_back({number, line});
        if (eol == std::string_view::npos) break;
        text.remove_prefix(eol + 1);
    }
    return out;
}

Error line_error(std::size_t line, const std::string& msg) {
    return Error("line " + std::to_string(line) + ": " + msg);
}

std::vector<std::string> fields_at(const Line& line) {
    try {
        auto f = split_csv_line(line.text);
        for (auto& s : f) s = std::string(trim(s));
        return f;
    } catch (const Error& e) {
        throw line_error(line.number, e.what());
    }
}

std::size_t column_index(const std::vector<std::string>& header, std::string_view name) {
    auto it = std::ranges::find(header, name);
    if (it == header.end()) throw Error("missing required column '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - header.begin());
}

std::vector<std::string> read_header(const std::vector<Line>& lines) {
    if (lines.size() < 2) throw Error("no data");
    auto header = fields_at(lines.front());
    std::set<std::string> seen;
    for (const auto& h : header)
        if (!seen.insert(h).second) throw line_error(lines.front().number, "duplicate column '" + h + "'");
    return header;
}

std::uint8_t parse_binary(std::string_view field, std::string_view column, std::size_t line) {
    if (field == "0") return 0;
    if (field == "1") return 1;
    throw line_error(line, std::string(column) + " must be 0 or 1, got '" + std::string(field) + "'");
}

std::int64_t parse_count(std::string_view field, std::string_view column, std::size_t line) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || v < 0)
        throw line_error(line, std::string(column) + " must be a non-negative integer, got '" + std::string(field) + "'");
    return v;
}

}  // namespace

RecordTable parse_records_csv(std::string_view text) {
    const auto lines = split_lines(text);
    const auto header = read_header(lines);
    const auto label_col = column_index(header, "label");
    const auto pred_col = column_index(header, "prediction");

    RecordTable table;
    std::vector<std::size_t> attr_cols;
    for (std::size_t j = 0; j < header.size(); ++j) {
        if (j == label_col || j == pred_col) continue;
        attr_cols.push_back(j);
        table.columns.push_back(header[j]);
    }

    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto fields = fields_at(lines[i]);
        if (fields.size() != header.size())
            throw line_error(lines[i].number, "expected " + std::to_string(header.size()) + " fields, got " +
                                                  std::to_string(fields.size()));
        table.labels.push_back(parse_binary(fields[label_col], "label", lines[i].number));
        table.predictions.push_back(parse_binary(fields[pred_col], "prediction", lines[i].number));
        std::vector<std::string> row;
        row.reserve(attr_cols.size());
        for (auto j : attr_cols) row.push_back(fields[j]);
        table.rows.push_back(std::move(row));
    }
    return table;
}

AggregatedInput parse_aggregated_csv(std::string_view text) {
    const auto lines = split_lines(text);
    const auto header = read_header(lines);
    const auto group_col = column_index(header, "group");
    const auto n_col = column_index(header, "n");
    const auto z_col = column_index(header, "z");

    AggregatedInput out;
    std::set<std::string> seen;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto line = lines[i].number;
        const auto fields = fields_at(lines[i]);
        if (fields.size() != header.size())
            throw line_error(line, "expected " + std::to_string(header.size()) + " fields, got " +
                                       std::to_string(fields.size()));
        std::string group = fields[group_col].empty() ? std::string(kMissingValue) : fields[group_col];
        const auto n = parse_count(fields[n_col], "n", line);
        const auto z = parse_count(fields[z_col], "z", line);
        if (z > n) throw line_error(line, "z (" + std::to_string(z) + ") exceeds n (" + std::to_string(n) + ")");
        if (!seen.insert(group).second) throw line_error(line, "duplicate group '" + group + "'");
        if (n == 0)
            out.excluded.push_back({GroupKey{std::move(group)}, "zero trials"});
        else
            out.groups.emplace_back(GroupKey{std::move(group)}, n, z);
    }
    return out;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LoadedInput load_records(const std::filesystem::path& path, InputFormat format) {
    const auto text = read_text_file(path);
    try {
        if (format == InputFormat::records) return parse_records_csv(text);
        return parse_aggregated_csv(text);
    } catch (const Error& e) {
        throw Error(path.string() + ": " + e.what());
    }
}

}  // namespace disparity
