#include "rcmetro/table.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "rcmetro/errors.hpp"

namespace rcmetro {

namespace {

bool cell_matches(const Cell& c, ColumnType t) {
    switch (t) {
        case ColumnType::real: return std::holds_alternative<double>(c);
        case ColumnType::integer: return std::holds_alternative<std::int64_t>(c);
        case ColumnType::boolean: return std::holds_alternative<bool>(c);
        case ColumnType::text: return std::holds_alternative<std::string>(c);
    }
    return false;
}

std::string quote_csv(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_real(*d);
    if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
    if (const auto* b = std::get_if<bool>(&c)) return *b ? "true" : "false";
    return quote_csv(std::get<std::string>(c));
}

// Splits CSV text into records of fields, honouring quotes.
std::vector<std::vector<std::string>> split_csv(const std::string& text) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> rec;
    std::string field;
    bool quoted = false;
    bool any = false;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (quoted) {
            if (ch == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += ch;
            }
            continue;
        }
        if (ch == '"') {
            quoted = true;
            any = true;
        } else if (ch == ',') {
            rec.push_back(std::move(field));
            field.clear();
            any = true;
        } else if (ch == '\n' || ch == '\r') {
            if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
            if (any || !field.empty()) {
                rec.push_back(std::move(field));
                records.push_back(std::move(rec));
            }
            rec.clear();
            field.clear();
            any = false;
        } else {
            field += ch;
            any = true;
        }
    }
    if (quoted) throw DomainError("unterminated quoted CSV field");
    if (any || !field.empty()) {
        rec.push_back(std::move(field));
        records.push_back(std::move(rec));
    }
    return records;
}

bool is_integer(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

bool is_real(const std::string& s) {
    if (s.empty()) return false;
    try {
        parse_real(s);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

Cell parse_cell(const std::string& s, ColumnType t) {
    switch (t) {
        case ColumnType::real: return parse_real(s);
        case ColumnType::integer: {
            if (!is_integer(s)) throw DomainError("not an integer: '" + s + "'");
            return static_cast<std::int64_t>(std::stoll(s));
        }
        case ColumnType::boolean: {
            if (s == "true") return true;
            if (s == "false") return false;
            throw DomainError("not a boolean: '" + s + "'");
        }
        case ColumnType::text: return s;
    }
    return s;
}

}  // namespace

std::string to_string(ColumnType t) {
    switch (t) {
        case ColumnType::real: return "real";
        case ColumnType::integer: return "integer";
        case ColumnType::boolean: return "boolean";
        case ColumnType::text: return "text";
    }
    return "text";
}

ColumnType parse_column_type(const std::string& s) {
    if (s == "real") return ColumnType::real;
    if (s == "integer") return ColumnType::integer;
    if (s == "boolean") return ColumnType::boolean;
    if (s == "text") return ColumnType::text;
    throw DomainError("unknown column type '" + s + "'");
}

std::string format_real(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_real(const std::string& s) {
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || end != s.c_str() + s.size()) throw DomainError("not a real number: '" + s + "'");
    return v;
}

Table::Table(std::vector<Column> columns) : columns_(std::move(columns)) {}

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns_.size()) {
        throw DomainError("row has " + std::to_string(row.size()) + " cells, table has " +
                          std::to_string(columns_.size()) + " columns");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (!cell_matches(row[i], columns_[i].type)) {
            throw DomainError("cell type mismatch in column '" + columns_[i].name + "'");
        }
    }
    rows_.push_back(std::move(row));
}

int Table::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].name == name) return static_cast<int>(i);
    }
    return -1;
}

namespace {

template <class T>
const T& cell_as(const Table& t, std::size_t row, const std::string& column) {
    const int c = t.column_index(column);
    if (c < 0) throw DomainError("no column '" + column + "'");
    if (row >= t.size()) throw DomainError("row index out of range");
    const auto* v = std::get_if<T>(&t.rows()[row][c]);
    if (!v) throw DomainError("column '" + column + "' has type " + to_string(t.columns()[c].type));
    return *v;
}

}  // namespace

double Table::real(std::size_t row, const std::string& column) const { return cell_as<double>(*this, row, column); }
std::int64_t Table::integer(std::size_t row, const std::string& column) const {
    return cell_as<std::int64_t>(*this, row, column);
}
bool Table::boolean(std::size_t row, const std::string& column) const { return cell_as<bool>(*this, row, column); }
const std::string& Table::text(std::size_t row, const std::string& column) const {
    return cell_as<std::string>(*this, row, column);
}

std::string Table::to_csv() const {
    std::string out = "# types: ";
    for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + to_string(columns_[i].type);
    out += "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) out += (i ? "," : "") + quote_csv(columns_[i].name);
    out += "\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + format_cell(row[i]);
        out += "\n";
    }
    return out;
}

Table Table::from_csv(const std::string& text) {
    std::string body = text;
    std::vector<ColumnType> types;
    bool typed = false;
    const std::string marker = "# types: ";
    if (body.rfind(marker, 0) == 0) {
        const auto eol = body.find('\n');
        std::stringstream ss(body.substr(marker.size(), eol - marker.size()));
        std::string t;
        while (std::getline(ss, t, ',')) {
            if (!t.empty() && t.back() == '\r') t.pop_back();
            types.push_back(parse_column_type(t));
        }
        typed = true;
        body = eol == std::string::npos ? "" : body.substr(eol + 1);
    }
    auto records = split_csv(body);
    if (records.empty()) throw DomainError("CSV has no header");
    const auto& header = records.front();
    if (typed && types.size() != header.size()) throw DomainError("types line does not match header");
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != header.size()) {
            throw DomainError("CSV record " + std::to_string(r) + " has " + std::to_string(records[r].size()) +
                              " fields, header has " + std::to_string(header.size()));
        }
    }
    if (!typed) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            bool all_int = records.size() > 1, all_bool = records.size() > 1, all_real = records.size() > 1;
            for (std::size_t r = 1; r < records.size(); ++r) {
                const auto& f = records[r][c];
                all_int = all_int && is_integer(f);
                all_bool = all_bool && (f == "true" || f == "false");
                all_real = all_real && is_real(f);
            }
            types.push_back(all_int    ? ColumnType::integer
                            : all_bool ? ColumnType::boolean
                            : all_real ? ColumnType::real
                                       : ColumnType::text);
        }
    }
    std::vector<Column> cols;
    for (std::size_t c = 0; c < header.size(); ++c) cols.push_back({header[c], types[c]});
    Table t(std::move(cols));
    for (std::size_t r = 1; r < records.size(); ++r) {
        std::vector<Cell> row;
        for (std::size_t c = 0; c < header.size(); ++c) row.push_back(parse_cell(records[r][c], types[c]));
        t.add_row(std::move(row));
    }
    return t;
}

std::string Table::to_json() const {
    nlohmann::ordered_json j;
    j["columns"] = nlohmann::ordered_json::array();
    for (const auto& c : columns_) j["columns"].push_back({{"name", c.name}, {"type", to_string(c.type)}});
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& cell : row) {
            if (const auto* d = std::get_if<double>(&cell)) {
                // JSON has no nan/inf; those travel as strings.
                if (std::isfinite(*d)) {
                    r.push_back(*d);
                } else {
                    r.push_back(format_real(*d));
                }
            } else if (const auto* i = std::get_if<std::int64_t>(&cell)) {
                r.push_back(*i);
            } else if (const auto* b = std::get_if<bool>(&cell)) {
                r.push_back(*b);
            } else {
                r.push_back(std::get<std::string>(cell));
            }
        }
        j["rows"].push_back(std::move(r));
    }
    return j.dump(1) + "\n";
}

Table Table::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed JSON table: ") + e.what());
    }
    std::vector<Column> cols;
    for (const auto& c : j.at("columns")) {
        cols.push_back({c.at("name").get<std::string>(), parse_column_type(c.at("type").get<std::string>())});
    }
    Table t(cols);
    for (const auto& r : j.at("rows")) {
        if (r.size() != cols.size()) throw DomainError("JSON row arity mismatch");
        std::vector<Cell> row;
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const auto& v = r[c];
            switch (cols[c].type) {
                case ColumnType::real:
                    row.push_back(v.is_string() ? parse_real(v.get<std::string>()) : v.get<double>());
                    break;
                case ColumnType::integer: row.push_back(v.get<std::int64_t>()); break;
                case ColumnType::boolean: row.push_back(v.get<bool>()); break;
                case ColumnType::text: row.push_back(v.get<std::string>()); break;
            }
        }
        t.add_row(std::move(row));
    }
    return t;
}

bool operator==(const Table& a, const Table& b) {
    if (a.columns_.size() != b.columns_.size() || a.rows_.size() != b.rows_.size()) return false;
    for (std::size_t i = 0; i < a.columns_.size(); ++i) {
        if (a.columns_[i].name != b.columns_[i].name || a.columns_[i].type != b.columns_[i].type) return false;
    }
    for (std::size_t r = 0; r < a.rows_.size(); ++r) {
        for (std::size_t c = 0; c < a.columns_.size(); ++c) {
            const auto& x = a.rows_[r][c];
            const auto& y = b.rows_[r][c];
            if (x.index() != y.index()) return false;
            if (const auto* dx = std::get_if<double>(&x)) {
                const double dy = std::get<double>(y);
                if (std::isnan(*dx) && std::isnan(dy)) continue;
                if (std::bit_cast<std::uint64_t>(*dx) != std::bit_cast<std::uint64_t>(dy)) return false;
            } else if (x != y) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace rcmetro
