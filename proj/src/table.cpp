#include "bornuq/table.hpp"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "bornuq/rng.hpp"
#include "bornuq/textio.hpp"

namespace bornuq::harness {

void ResultTable::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw std::invalid_argument("ResultTable: row width " + std::to_string(row.size()) +
                                    " does not match " + std::to_string(columns.size()) +
                                    " columns");
    for (const Cell& c : row)
        if (const std::string* s = std::get_if<std::string>(&c))
            if (s->find_first_of(",\"\n\r") != std::string::npos)
                throw std::invalid_argument("ResultTable: string cells must not contain "
                                            "commas, quotes or newlines");
    rows.push_back(std::move(row));
}

std::string cell_to_string(const Cell& cell) {
    if (const double* d = std::get_if<double>(&cell)) {
        std::string s = textio::format_double(*d);
        // keep integral doubles distinguishable from integer cells
        if (s.find_first_of(".einE") == std::string::npos)
            s += ".0";
        return s;
    }
    if (const std::uint64_t* u = std::get_if<std::uint64_t>(&cell))
        return std::to_string(*u);
    return std::get<std::string>(cell);
}

std::string table_to_csv(const ResultTable& table) {
    std::ostringstream out;
    out << "# bornuq-table\n";
    out << "# config_hash = " << table.config_hash << '\n';
    out << "# seed = " << table.seed << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            out << (c ? "," : "") << cell_to_string(row[c]);
        out << '\n';
    }
    return out.str();
}

namespace {

Cell parse_cell(std::string_view token) {
    if (token.empty())
        return std::string{};
    bool digits_only = true;
    for (char ch : token)
        if (ch < '0' || ch > '9')
            digits_only = false;
    if (digits_only) {
        std::uint64_t u = 0;
        auto r = std::from_chars(token.data(), token.data() + token.size(), u);
        if (r.ec == std::errc{} && r.ptr == token.data() + token.size())
            return u;
    }
    double d = 0.0;
    auto r = std::from_chars(token.data(), token.data() + token.size(), d);
    if (r.ec == std::errc{} && r.ptr == token.data() + token.size())
        return d;
    return std::string{token};
}

} // namespace

ResultTable table_from_csv(std::string_view csv) {
    ResultTable table;
    bool saw_header = false;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t eol = csv.find('\n', pos);
        if (eol == std::string_view::npos)
            eol = csv.size();
        std::string_view line = csv.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line.empty())
            continue;
        if (line.front() == '#') {
            std::string_view body = textio::trim(line.substr(1));
            if (std::size_t eq = body.find('='); eq != std::string_view::npos) {
                const std::string_view key = textio::trim(body.substr(0, eq));
                const std::string_view value = textio::trim(body.substr(eq + 1));
                if (key == "config_hash")
                    table.config_hash = std::string(value);
                else if (key == "seed")
                    table.seed = textio::parse_u64(value);
            }
            continue;
        }
        std::vector<std::string> tokens = textio::split(line, ',');
        if (!saw_header) {
            table.columns = std::move(tokens);
            saw_header = true;
            continue;
        }
        if (tokens.size() != table.columns.size())
            throw std::invalid_argument("table_from_csv: ragged row");
        std::vector<Cell> row;
        row.reserve(tokens.size());
        for (const std::string& t : tokens)
            row.push_back(parse_cell(t));
        table.rows.push_back(std::move(row));
    }
    if (!saw_header)
        throw std::invalid_argument("table_from_csv: missing header row");
    return table;
}

std::string config_hash_hex(std::string_view canonical_text) {
    const std::uint64_t h = rng::hash_tag(canonical_text);
    char buf[17];
    static const char* digits = "0123456789abcdef";
    for (int i = 0; i < 16; ++i)
        buf[i] = digits[(h >> (60 - 4 * i)) & 0xF];
    buf[16] = '\0';
    return std::string(buf);
}

} // namespace bornuq::harness
