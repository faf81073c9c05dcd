#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spets/data.hpp"
#include "spets/kcyclo.hpp"
#include "spets/uch.hpp"

namespace spets {

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& msg);
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

// Degree text: unit, x-power and K-cyclotomic factors; a complete set of K-factors
// of Phi_d is written Phi_d.
std::string format_degree(const LaurentPoly& p, const CycloSubfield& K);

UchTable parse_uch(std::string_view text);
std::string emit_uch(const UchTable& table);
UchTable load_uch(const std::string& path);
// Warnings for rows whose degree does not divide the order.
std::vector<std::string> uch_warnings(const UchTable& table);

enum class DiffKind { missing_left, missing_right, fr, family, marker, header, rename, sign_only };

struct DiffEntry {
    DiffKind kind;
    std::string left, right;
    std::string detail;
};

struct TableDiff {
    std::vector<DiffEntry> entries;
    // Renames and sign-only entries are informational.
    std::vector<DiffEntry> mismatches() const;
    bool empty() const { return mismatches().empty(); }
    std::string str() const;
};

TableDiff diff_tables(const UchTable& left, const UchTable& right);
// Copy names, signs of sign-only rows and symbols from the reference onto matched rows.
void adopt_reference(UchTable& computed, const UchTable& reference);

std::vector<SchurEntry> parse_schur(std::string_view text, std::string* group = nullptr);
std::string emit_schur(const std::string& group, const std::vector<SchurEntry>& entries, const CycloSubfield& K);
std::vector<SchurEntry> load_schur(const std::string& group);

// Classification of spetsial irreducible groups.
bool is_spetsial(std::string_view group);

// File stem used under data/ for a builtin group name: G(3,1,2) -> G312.
std::string table_stem(const std::string& group);

}  // namespace spets
