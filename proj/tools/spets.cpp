// spets: command-line front end for the library.
#include <charconv>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "spets/hecke.hpp"
#include "spets/kcyclo.hpp"
#include "spets/orders.hpp"
#include "spets/tabledata.hpp"
#include "spets/uch.hpp"

using namespace spets;

namespace {

std::pair<long, long> parse_zeta(const std::string& s) {
    auto slash = s.find('/');
    long d = 0, a = 1;
    if (slash == std::string::npos) {
        d = std::stol(s);
    } else {
        d = std::stol(s.substr(0, slash));
        a = std::stol(s.substr(slash + 1));
    }
    if (d < 1) throw std::invalid_argument("bad eigenvalue " + s);
    return {d, ((a % d) + d) % d};
}

CycloSubfield parse_field(const std::string& s) {
    long n = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec == std::errc() && p == s.data() + s.size()) return CycloSubfield::cyclotomic(n);
    return CycloSubfield::parse(s);
}

UchTable construct(const std::string& group, bool verbose) {
    auto res = run_pipeline(group);
    if (verbose)
        for (const auto& l : res.log) std::cerr << l << "\n";
    return res.table;
}

int cmd_analyze(const std::string& group) {
    auto G = ReflectionCoset::builtin(group);
    std::cout << G->summary();
    auto o = order_polys(*G);
    std::cout << "order_c " << o.order_c.str() << "\n";
    std::cout << "order_nc " << o.order_nc.str() << "\n";
    std::cout << "spetsial " << (is_spetsial(G->name()) ? "yes" : "no") << "\n";
    std::cout << "regular";
    for (const auto& [d, a] : regular_eigenvalues(*G)) std::cout << " " << a << "/" << d;
    std::cout << "\n";
    return 0;
}

int cmd_orders(const std::string& group) {
    auto G = ReflectionCoset::builtin(group);
    auto o = order_polys(*G);
    std::cout << "P " << G->poincare().str() << "\n";
    std::cout << "order_c " << o.order_c.str() << "\n";
    std::cout << "order_nc " << o.order_nc.str() << "\n";
    std::cout << "degrees";
    for (const auto& [d, z] : G->degrees().degrees) std::cout << " " << d << ":" << z.str();
    std::cout << "\n";
    std::cout << "n_ref " << G->n_ref() << "\nn_hyp " << G->n_hyp() << "\n";
    return 0;
}

int cmd_verify(const std::string& group, const std::string& ref, const std::string& table_file, bool verbose) {
    auto G = ReflectionCoset::builtin(group);
    int rc = 0;
    UchTable t;
    if (!table_file.empty()) {
        t = load_uch(table_file);
        tag_principal(t, principal_characters(*G));
    } else {
        t = construct(group, verbose);
    }
    if (!ref.empty()) {
        UchTable r = load_uch(ref);
        adopt_reference(t, r);
        auto d = diff_tables(t, r);
        std::cout << d.str();
        std::cout << (d.empty() ? "diff: empty" : "diff: " + std::to_string(d.mismatches().size()) + " mismatches") << "\n";
        if (!d.empty()) rc = 1;
    }
    auto rep = verify_axioms(t, *G);
    std::cout << rep.str();
    if (!rep.ok()) rc = 1;
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Unipotent characters of spetses"};
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Log pipeline steps to stderr");

    std::string group;
    auto* analyze = app.add_subcommand("analyze", "Orders, degrees and hyperplane data");
    analyze->add_option("group", group)->required();

    auto* orders = app.add_subcommand("orders", "Poincare polynomial and order polynomials");
    orders->add_option("group", group)->required();

    long cyclic = 0;
    std::string names_from;
    auto* uch = app.add_subcommand("uch", "Construct the table of unipotent characters");
    uch->add_option("group", group);
    uch->add_option("--cyclic", cyclic, "Closed form for Z_e");
    uch->add_option("--names", names_from, "Reference table to take row names from");

    std::string zeta;
    auto* series = app.add_subcommand("series", "Determine the spetsial algebra of a zeta-series");
    series->add_option("group", group)->required();
    series->add_option("--zeta", zeta, "d/a for zeta = exp(2 pi i a/d)")->required();

    std::string params;
    auto* schur = app.add_subcommand("schur", "Schur elements of a cyclic Hecke algebra");
    schur->add_option("--cyclic", cyclic)->required();
    schur->add_option("--params", params, "Comma-separated parameters")->required();

    std::string ref, table_file;
    auto* verify = app.add_subcommand("verify", "Construct, diff against a reference and check the axioms");
    verify->add_option("group", group)->required();
    verify->add_option("--ref", ref, "Reference table");
    verify->add_option("--table", table_file, "Check this table instead of constructing one");

    long d = 0;
    std::string field = "1";
    auto* factors = app.add_subcommand("factors", "K-cyclotomic factors of Phi_d");
    factors->add_option("d", d)->required();
    factors->add_option("--field", field, "Conductor or field name");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*analyze) return cmd_analyze(group);
        if (*orders) return cmd_orders(group);
        if (*uch) {
            UchTable t;
            if (cyclic > 0) t = cyclic_uch(cyclic);
            else if (!group.empty()) t = construct(group, verbose);
            else throw std::invalid_argument("uch needs a group or --cyclic");
            if (!names_from.empty()) adopt_reference(t, load_uch(names_from));
            std::cout << emit_uch(t);
            return 0;
        }
        if (*series) {
            auto G = ReflectionCoset::builtin(group);
            auto [dd, a] = parse_zeta(zeta);
            UchTable known = construct(group, verbose);
            auto ds = determine_parameters(*G, dd, a, known);
            std::cout << ds.spec.str() << "\n";
            const auto& f = ds.funnel;
            std::cout << "search " << f.arrangements << " " << f.after_fr << " " << f.after_rationality << " "
                      << f.survivors << "\n";
            return 0;
        }
        if (*schur) {
            std::vector<FracExpMonomial> u;
            std::stringstream ss(params);
            std::string tok;
            while (std::getline(ss, tok, ',')) u.push_back(FracExpMonomial::parse(tok));
            if (static_cast<long>(u.size()) != cyclic) throw std::invalid_argument("need exactly e parameters");
            auto S = schur_cyclic(CyclicHeckeParams{u});
            for (std::size_t j = 0; j < S.size(); ++j) std::cout << "S_" << j << " = " << S[j].str() << "\n";
            return 0;
        }
        if (*verify) return cmd_verify(group, ref, table_file, verbose);
        if (*factors) {
            auto K = parse_field(field);
            for (const auto& f : k_cyclotomic_factors(d, K)) std::cout << f.label << " = " << f.poly.str() << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
