#include "cli/output.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

namespace jhit::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <class T>
T parse_number(std::string_view s, int line) {
    s = trim(s);
    T value{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw ConfigError("field CSV line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
    return value;
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    if (ec != std::errc{}) return "nan";
    return {buf, ptr};
}

void write_file_atomic(const std::string& path, std::string_view content) {
    const std::filesystem::path target(path);
    if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) throw std::runtime_error("failed writing " + tmp);
    }
    std::filesystem::rename(tmp, target);
}

std::string join_path(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

std::string config_comment_block(std::string_view command, const KeyValues& config) {
    std::string s = "# jhit ";
    s += command;
    s += '\n';
    for (const auto& [k, v] : config) {
        s += "# ";
        s += k;
        s += '=';
        s += v;
        s += '\n';
    }
    return s;
}

std::string field_csv_text(const FieldGrid& field, std::string_view comments) {
    const int n = field.n();
    const Grid grid(n);
    std::string s(comments);
    s.reserve(s.size() + grid.nodes() * 56);
    s += kFieldHeader;
    s += '\n';
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            s += std::to_string(i);
            s += ',';
            s += std::to_string(j);
            s += ',';
            s += format_double(grid.x(i));
            s += ',';
            s += format_double(grid.z(j));
            s += ',';
            s += format_double(field(i, j));
            s += '\n';
        }
    }
    return s;
}

FieldGrid parse_field_csv(std::string_view text) {
    struct Entry {
        int i;
        int j;
        double v;
    };
    std::vector<Entry> entries;
    bool header_seen = false;
    int line_no = 0;
    int max_index = -1;
    while (!text.empty()) {
        const auto eol = text.find('\n');
        std::string_view line = text.substr(0, eol);
        text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
        ++line_no;
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;
        if (!header_seen) {
            if (line != kFieldHeader)
                throw ConfigError("field CSV: expected header '" + std::string(kFieldHeader) + "'");
            header_seen = true;
            continue;
        }
        std::string_view cols[5];
        for (int c = 0; c < 5; ++c) {
            const auto comma = line.find(',');
            if ((comma == std::string_view::npos) != (c == 4))
                throw ConfigError("field CSV line " + std::to_string(line_no) + ": expected 5 columns");
            cols[c] = line.substr(0, comma);
            line = comma == std::string_view::npos ? std::string_view{} : line.substr(comma + 1);
        }
        Entry e{parse_number<int>(cols[0], line_no), parse_number<int>(cols[1], line_no),
                parse_number<double>(cols[4], line_no)};
        if (e.i < 0 || e.j < 0) throw ConfigError("field CSV: negative index");
        max_index = std::max({max_index, e.i, e.j});
        entries.push_back(e);
    }
    if (!header_seen) throw ConfigError("field CSV: missing header");
    const int n = max_index;
    if (n < Grid::kMinN || entries.size() != Grid(n).nodes())
        throw ConfigError("field CSV: vertex count does not form an (N+1)^2 grid");
    std::vector<double> values(entries.size(), std::nan(""));
    for (const auto& e : entries) {
        const auto idx = static_cast<std::size_t>(e.j) * static_cast<std::size_t>(n + 1) + static_cast<std::size_t>(e.i);
        if (!std::isnan(values[idx])) throw ConfigError("field CSV: duplicate vertex");
        values[idx] = e.v;
    }
    return FieldGrid(n, std::move(values));
}

FieldGrid read_field_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open field file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_field_csv(ss.str());
}

}  // namespace jhit::cli
