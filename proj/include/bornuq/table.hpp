#ifndef BORNUQ_TABLE_HPP
#define BORNUQ_TABLE_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bornuq::harness {

/*
 * Numeric result records with provenance. Cells are doubles, unsigned
 * integers (seeds, counts) or short strings (method names). CSV output
 * is byte-stable: doubles use the shortest round-trip form with a forced
 * '.0' when integral, so types survive a parse round trip.
 */

using Cell = std::variant<double, std::uint64_t, std::string>;

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::string config_hash; // hex digest of the canonical config text
    std::uint64_t seed = 0;  // master seed of the run

    void add_row(std::vector<Cell> row); // throws on width mismatch
    bool operator==(const ResultTable&) const = default;
};

std::string cell_to_string(const Cell& cell);

std::string table_to_csv(const ResultTable& table);
ResultTable table_from_csv(std::string_view csv);

// FNV-1a over the canonical config text, rendered as 16 hex digits
std::string config_hash_hex(std::string_view canonical_text);

} // namespace bornuq::harness

#endif
