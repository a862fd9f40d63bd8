#include "bornuq/textio.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bornuq::textio {

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{})
        throw std::runtime_error("format_double: to_chars failed");
    return std::string(buf, end);
}

namespace {

[[noreturn]] void bad_number(std::string_view what, std::string_view s) {
    throw std::invalid_argument(std::string(what) + ": cannot parse '" + std::string(s) + "'");
}

} // namespace

double parse_double(std::string_view s) {
    s = trim(s);
    double v = 0.0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
        bad_number("parse_double", s);
    return v;
}

long parse_long(std::string_view s) {
    s = trim(s);
    long v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
        bad_number("parse_long", s);
    return v;
}

std::uint64_t parse_u64(std::string_view s) {
    s = trim(s);
    std::uint64_t v = 0;
    auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc{} || r.ptr != s.data() + s.size())
        bad_number("parse_u64", s);
    return v;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t next = s.find(sep, pos);
        if (next == std::string_view::npos)
            next = s.size();
        out.emplace_back(trim(s.substr(pos, next - pos)));
        pos = next + 1;
    }
    return out;
}

std::vector<double> parse_double_list(std::string_view s, char sep) {
    std::vector<double> out;
    for (const auto& tok : split(s, sep))
        if (!tok.empty())
            out.push_back(parse_double(tok));
    return out;
}

std::vector<long> parse_long_list(std::string_view s, char sep) {
    std::vector<long> out;
    for (const auto& tok : split(s, sep))
        if (!tok.empty())
            out.push_back(parse_long(tok));
    return out;
}

KvFile KvFile::parse(std::string_view text) {
    KvFile kv;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (std::size_t hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw std::invalid_argument("KvFile: line " + std::to_string(line_no) +
                                        " is not 'key = value'");
        std::string key{trim(line.substr(0, eq))};
        std::string value{trim(line.substr(eq + 1))};
        if (key.empty())
            throw std::invalid_argument("KvFile: empty key on line " + std::to_string(line_no));
        kv.entries.emplace_back(std::move(key), std::move(value));
    }
    return kv;
}

const std::string* KvFile::find(std::string_view key) const {
    for (const auto& [k, v] : entries)
        if (k == key)
            return &v;
    return nullptr;
}

std::string KvFile::require(std::string_view key) const {
    if (const std::string* v = find(key))
        return *v;
    throw std::invalid_argument("missing required key '" + std::string(key) + "'");
}

std::vector<std::string> KvFile::all(std::string_view key) const {
    std::vector<std::string> out;
    for (const auto& [k, v] : entries)
        if (k == key)
            out.push_back(v);
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        throw std::runtime_error("write to '" + path + "' failed");
}

} // namespace bornuq::textio
