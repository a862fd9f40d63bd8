#ifndef BORNUQ_TEXTIO_HPP
#define BORNUQ_TEXTIO_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bornuq::textio {

// shortest decimal form that round-trips the exact double (std::to_chars)
std::string format_double(double v);

double parse_double(std::string_view s);   // throws std::invalid_argument
long parse_long(std::string_view s);
std::uint64_t parse_u64(std::string_view s);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

std::vector<double> parse_double_list(std::string_view s, char sep);
std::vector<long> parse_long_list(std::string_view s, char sep);

/*
 * Line-oriented "key = value" text, the format shared by model files and
 * experiment configs. '#' starts a comment, blank lines are skipped.
 * Duplicate keys keep file order (model files use repeated keys for
 * per-layer arrays).
 */
struct KvFile {
    std::vector<std::pair<std::string, std::string>> entries;

    static KvFile parse(std::string_view text);

    const std::string* find(std::string_view key) const;
    std::string require(std::string_view key) const; // throws when missing
    std::vector<std::string> all(std::string_view key) const;
    bool has(std::string_view key) const { return find(key) != nullptr; }
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

} // namespace bornuq::textio

#endif
