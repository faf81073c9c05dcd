#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "spets/tabledata.hpp"

using namespace spets;

namespace {

LaurentPoly P(const char* s) { return LaurentPoly::parse(s); }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

const char* small =
    "group Z2\n"
    "conductor 1\n"
    "order x^3-x\n"
    "family 1\n"
    "Id | 1 | 1 | 1 | special\n"
    "family 2\n"
    "St | x | 1 | 2 | special\n";

void expect_error(const std::string& text, std::size_t line, std::size_t column) {
    try {
        parse_uch(text);
        FAIL("no error for:\n" << text);
    } catch (const ParseError& e) {
        CHECK_MESSAGE(e.line() == line, e.what());
        CHECK_MESSAGE(e.column() == column, e.what());
    }
}

}  // namespace

TEST_CASE("shipped tables round-trip") {
    std::size_t n = 0;
    for (const auto& ent : std::filesystem::directory_iterator(data_dir() + "/tables")) {
        if (ent.path().extension() != ".uch") continue;
        ++n;
        std::string text = slurp(ent.path());
        auto t = parse_uch(text);
        CHECK_MESSAGE(emit_uch(t) == text, ent.path());
        CHECK_MESSAGE(uch_warnings(t).empty(), ent.path());
        CHECK(diff_tables(t, t).entries.empty());
    }
    CHECK(n == 5);
}

TEST_CASE("shipped Schur data round-trip") {
    for (const char* g : {"G4", "G(3,1,2)"}) {
        const std::string path = data_file("schur/" + table_stem(g) + ".txt");
        std::string text = slurp(path);
        std::string group;
        auto s = parse_schur(text, &group);
        CHECK(group == g);
        auto G = ReflectionCoset::builtin(g);
        CHECK(emit_schur(group, s, CycloSubfield::cyclotomic(G->field_conductor())) == text);
        CHECK(s.size() == G->character_table().size());
    }
}

TEST_CASE("parse errors carry line and column") {
    auto t = parse_uch(small);
    CHECK(t.rows.size() == 2);
    CHECK(t.family_count() == 2);

    expect_error("group Z2\nconductor 1\norder x^3-x\n", 4, 1);
    expect_error("", 1, 1);
    expect_error(std::string(small) + "X | x^2 | 1 | 2 | nope\n", 8, 19);
    expect_error(std::string(small) + "Id | x | 1 | 2 | -\n", 8, 1);
    expect_error(std::string(small) + "Y | x | 1 | 3 | -\n", 8, 13);
    expect_error(std::string(small) + "Y | x+ | 1 | 2 | -\n", 8, 5);
    expect_error(std::string(small) + "family 4\n", 8, 8);
    expect_error(std::string(small) + "Y | x | 1 | 2\n", 8, 1);
    expect_error(std::string("bogus\n") + small, 1, 1);
}

TEST_CASE("degree formatting") {
    const auto Q = CycloSubfield::cyclotomic(1);
    const auto K3 = CycloSubfield::cyclotomic(3);
    CHECK(format_degree(P("1"), Q) == "1");
    CHECK(format_degree(P("x^2+x+1"), Q) == "Phi3");
    CHECK(format_degree(P("-x(x-1)"), Q) == "-1*x*Phi1");
    CHECK(format_degree(P("x^2(x^2+x+1)(x+1)^2"), K3) == "x^2*Phi2^2*Phi3");
    CHECK(format_degree(P("x-ζ3"), K3) == "Phi'3");
    CHECK(format_degree(P("(x-ζ3)^2(x+1)"), K3) == "Phi2*Phi'3^2");
    // unit with two Zumbroich terms is bracketed
    CHECK(format_degree(P("(1+2ζ3)x"), K3).front() == '(');
    // round trip through the parser
    for (const char* s : {"x(x-ζ3)/3", "(x^3-1)(x+ζ3^2)", "1/2x^4(x+1)^2(x^2-x+1)"}) {
        auto p = LaurentPoly::parse(s);
        CHECK(LaurentPoly::parse(format_degree(p, K3)) == p);
    }
}

TEST_CASE("structured diff") {
    auto a = parse_uch(small);
    auto b = a;
    CHECK(diff_tables(a, b).empty());

    b.rows[1].name = "sgn";
    auto d = diff_tables(a, b);
    CHECK(d.empty());
    REQUIRE(d.entries.size() == 1);
    CHECK(d.entries[0].kind == DiffKind::rename);

    b = a;
    b.rows[1].fr = FracExpMonomial(Cyclo(-1), 0);
    d = diff_tables(a, b);
    REQUIRE(d.mismatches().size() == 1);
    CHECK(d.mismatches()[0].kind == DiffKind::fr);

    b = a;
    b.rows.pop_back();
    d = diff_tables(a, b);
    REQUIRE(d.mismatches().size() >= 1);
    CHECK(d.mismatches()[0].kind == DiffKind::missing_right);

    b = a;
    b.conductor = 3;
    CHECK(diff_tables(a, b).mismatches()[0].kind == DiffKind::header);

    // a sign flip on an unresolved row is informational
    b = a;
    a.rows[1].sign_resolved = false;
    b.rows[1].degree = -b.rows[1].degree;
    d = diff_tables(a, b);
    CHECK(d.empty());
    adopt_reference(a, b);
    CHECK(a.rows[1].degree == b.rows[1].degree);
}

TEST_CASE("names") {
    CHECK(table_stem("G(3,1,2)") == "G312");
    CHECK(table_stem("G4") == "G4");
    CHECK(cyclic_name(2, 1) == "rho_{2,1}");
    CHECK(!is_spetsial("G(4,2,2)"));
    CHECK_THROWS(is_spetsial("G(3,2,2)"));
    CHECK(is_spetsial("G(3,3,2)"));
}
