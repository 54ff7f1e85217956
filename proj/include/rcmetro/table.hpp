#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace rcmetro {

enum class ColumnType { real, integer, boolean, text };

struct Column {
    std::string name;
    ColumnType type = ColumnType::real;
};

using Cell = std::variant<double, std::int64_t, bool, std::string>;

/// Row-major table with typed columns. Reals are written with %.17g so that
/// parse(emit(t)) reproduces every double bit for bit.
class Table {
public:
    Table() = default;
    explicit Table(std::vector<Column> columns);

    const std::vector<Column>& columns() const { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }

    /// Throws DomainError if the arity or any cell type does not match.
    void add_row(std::vector<Cell> row);
    int column_index(const std::string& name) const;  // -1 if absent

    double real(std::size_t row, const std::string& column) const;
    std::int64_t integer(std::size_t row, const std::string& column) const;
    bool boolean(std::size_t row, const std::string& column) const;
    const std::string& text(std::size_t row, const std::string& column) const;

    /// CSV: a "# types: ..." line, the header, then one line per row.
    std::string to_csv() const;
    std::string to_json() const;

    /// Accepts the output of to_csv. Without a types line, column types are
    /// inferred (integer, boolean, real, else text). Throws DomainError on
    /// malformed input.
    static Table from_csv(const std::string& text);
    static Table from_json(const std::string& text);

    friend bool operator==(const Table& a, const Table& b);

private:
    std::vector<Column> columns_;
    std::vector<std::vector<Cell>> rows_;
};

std::string to_string(ColumnType t);
ColumnType parse_column_type(const std::string& s);

/// %.17g formatting; nan and +-inf are spelled out.
std::string format_real(double x);
double parse_real(const std::string& s);

}  // namespace rcmetro
