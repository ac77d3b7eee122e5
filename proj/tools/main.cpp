// Command line front end: the lemma suites, ultrafilter enumeration, the
// finite Los sweep, and scenario verification, each emitting a canonical
// key/value report.  Exit status: 0 all checks pass, 1 a check failed,
// 2 usage, parse, or budget trouble.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "cohult/errors.hpp"
#include "cohult/los_suite.hpp"
#include "cohult/report.hpp"
#include "cohult/scenario.hpp"
#include "cohult/suites.hpp"

namespace {

int emit(const cohult::Report& rep, const std::string& out_path) {
    std::string text = rep.to_text();
    std::cout << text;
    if (!out_path.empty()) {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << "\n";
            return 2;
        }
        out << text;
    }
    return rep.all_pass() ? 0 : 1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw cohult::ImproperInputError("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coherent filter systems and definable ultrapowers"};
    app.require_subcommand(1);

    cohult::SuiteBudgets budgets;
    std::string mutant, lemmas_out;
    auto* lemmas = app.add_subcommand(
        "verify-lemmas", "exhaustive small-scale checks of the filter laws");
    lemmas->add_option("--max-base", budgets.max_base, "largest |A| in the grid");
    lemmas->add_option("--max-lambda", budgets.max_lambda, "largest lambda");
    lemmas->add_option("--max-arity", budgets.max_arity, "largest tuple size");
    lemmas->add_option("--count-max-base", budgets.count_max_base,
                       "largest |A| for the ultrafilter count sweep");
    lemmas->add_option("--product-max-base", budgets.product_max_base,
                       "largest |A| for the product suite");
    lemmas->add_option("--product-max-lambda", budgets.product_max_lambda,
                       "largest lambda for the product suite");
    lemmas->add_option("--seed", budgets.seed, "sampling seed");
    lemmas->add_option("--mutant", mutant, "negative control to install")
        ->check(CLI::IsMember({"bad-fullify"}));
    lemmas->add_option("--out", lemmas_out, "also write the report here");

    std::uint32_t enum_base = 2, enum_lambda = 2, enum_arity = 2;
    std::string enum_out;
    auto* enumerate = app.add_subcommand(
        "enumerate-ultra", "count proper coherent ultrafilters over |A|");
    enumerate->add_option("--base", enum_base, "|A|");
    enumerate->add_option("--lambda", enum_lambda, "index-set size");
    enumerate->add_option("--max-arity", enum_arity, "largest tuple size");
    enumerate->add_option("--out", enum_out, "also write the report here");

    cohult::LosSweepBudgets sweep;
    std::string sweep_out;
    auto* los = app.add_subcommand(
        "los-sweep", "Los differential over all unary structures and witnesses");
    los->add_option("--max-base", sweep.max_base, "largest structure size");
    los->add_option("--lambda", sweep.lambda, "index-set size");
    los->add_option("--spot-samples", sweep.spot_samples,
                    "honest-evaluator samples per pair");
    los->add_option("--seed", sweep.seed, "sampling seed");
    los->add_option("--out", sweep_out, "also write the report here");

    std::string scn_path, build_out;
    cohult::IsoBudgets iso;
    auto* build = app.add_subcommand(
        "build-ultrapower", "verify the derived ultrapower of a scenario");
    build->add_option("scenario", scn_path, "scenario file")->required();
    build->add_option("--seed", iso.seed, "sampling seed");
    build->add_option("--depth", iso.depth, "term depth for sampled formulas");
    build->add_option("--los-formulas", iso.los_formulas,
                      "formulas in the Los differential");
    build->add_option("--m-samples", iso.m_samples, "points pushed through j");
    build->add_option("--n-samples", iso.n_samples, "surjectivity targets");
    build->add_option("--pair-samples", iso.pair_samples,
                      "injectivity class pairs");
    build->add_option("--out", build_out, "also write the report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (lemmas->parsed()) {
            cohult::Report rep;
            cohult::SuiteHooks hooks = mutant == "bad-fullify"
                                           ? cohult::SuiteHooks::bad_fullify()
                                           : cohult::SuiteHooks::real();
            cohult::run_lemma_suite(rep, budgets, hooks);
            cohult::run_completion_suite(rep, budgets);
            cohult::run_product_suite(rep, budgets);
            return emit(rep, lemmas_out);
        }
        if (enumerate->parsed()) {
            cohult::check_suite_budget(
                cohult::estimate_ultra_enum(enum_base, enum_lambda, enum_arity),
                100'000'000, "ultrafilter enumeration");
            auto ultras = cohult::enumerate_proper_coherent_ultrafilters(
                enum_base, enum_lambda, enum_arity);
            std::uint64_t expected = 1;
            for (std::uint32_t i = 0; i < enum_lambda; ++i) expected *= enum_base;
            cohult::Report rep;
            rep.set("enum.base", enum_base);
            rep.set("enum.lambda", enum_lambda);
            rep.set("enum.max_arity", enum_arity);
            rep.set("enum.count", static_cast<std::uint64_t>(ultras.size()));
            rep.set("enum.expected", expected);
            rep.set_pass("enum.count", ultras.size() == expected);
            bool witnessed = true;
            std::set<std::vector<std::uint32_t>> seen;
            for (const auto& u : ultras) {
                auto g = u.witness_point();
                if (!g.has_value() || !seen.insert(*g).second) witnessed = false;
            }
            rep.set_pass("enum.witnesses", witnessed);
            return emit(rep, enum_out);
        }
        if (los->parsed()) {
            return emit(cohult::run_los_sweep(sweep), sweep_out);
        }
        cohult::Scenario sc = cohult::scenario_from_text(slurp(scn_path));
        if (build->count("--seed")) sc.budgets.seed = iso.seed;
        if (build->count("--depth")) sc.budgets.depth = iso.depth;
        if (build->count("--los-formulas"))
            sc.budgets.los_formulas = iso.los_formulas;
        if (build->count("--m-samples")) sc.budgets.m_samples = iso.m_samples;
        if (build->count("--n-samples")) sc.budgets.n_samples = iso.n_samples;
        if (build->count("--pair-samples"))
            sc.budgets.pair_samples = iso.pair_samples;
        return emit(cohult::verify_isomorphism(sc), build_out);
    } catch (const cohult::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
