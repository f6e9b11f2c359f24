// Command-line front end: Fourier tables, semi-ordinary stabilization, the
// Iwasawa-algebra family, local Siegel series, and the verification suites.
// All numeric output is exact; re-running a job with the same flags and seed
// produces byte-identical JSON.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

#include "siegel/json_io.hpp"
#include "siegel/verify.hpp"

namespace {

void emit(const siegel::Json& j, const std::string& out_path) {
    std::string text = j.dump(2);
    text += "\n";
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw siegel::Error("cannot open output file: " + out_path);
        f << text;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Fourier tables of Siegel Eisenstein series, their semi-ordinary "
                 "p-stabilization, and the Iwasawa-algebra interpolation"};
    app.require_subcommand(1);

    long genus = 1, weight = 4, prime = 5, trace_bound = 3, xprec = 6, pprec = 8;
    unsigned long long seed = 1;
    int jobs = 0;
    std::string char_spec = "1:", out_path, matrix_key, suite;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--char", char_spec, "character spec M:g1^e1,g2^e2,... (default trivial)");
        cmd->add_option("--out", out_path, "output file (default stdout)");
        cmd->add_option("--jobs", jobs, "parallelism cap (0 = auto)");
    };

    CLI::App* classical = app.add_subcommand("classical", "classical Fourier table");
    classical->add_option("--genus", genus)->required();
    classical->add_option("--weight", weight)->required();
    classical->add_option("--trace-bound", trace_bound)->required();
    add_common(classical);

    CLI::App* stabilize = app.add_subcommand("stabilize", "semi-ordinary p-stabilized table");
    stabilize->add_option("--genus", genus)->required();
    stabilize->add_option("--weight", weight)->required();
    stabilize->add_option("--prime", prime)->required();
    stabilize->add_option("--trace-bound", trace_bound)->required();
    add_common(stabilize);

    CLI::App* lambda = app.add_subcommand("lambda", "Iwasawa-algebra coefficient family");
    lambda->add_option("--genus", genus)->required();
    lambda->add_option("--weight", weight, "a weight selecting the torsion tag a = weight mod (p-1)")
        ->required();
    lambda->add_option("--prime", prime)->required();
    lambda->add_option("--trace-bound", trace_bound)->required();
    lambda->add_option("--xprec", xprec);
    lambda->add_option("--pprec", pprec);
    add_common(lambda);

    CLI::App* series = app.add_subcommand("siegel-series", "local series polynomial F_l(T;X)");
    series->add_option("--matrix", matrix_key, "index in canonical key form n:g11,g12,...,gnn")
        ->required();
    series->add_option("--prime", prime)->required();
    add_common(series);

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite,
                       "one of genus1 | operator | siegel-series | kummer | lambda-specialize")
        ->required();
    verify->add_option("--seed", seed);
    verify->add_option("--jobs", jobs);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;   // flag errors are an invalid job spec
    }

    try {
        if (*classical || *stabilize) {
            siegel::DirichletCharacter chi = siegel::DirichletCharacter::parse(char_spec);
            siegel::EisensteinParams params(genus, weight, chi);
            std::optional<long> p = *stabilize ? std::optional<long>(prime) : std::nullopt;
            siegel::FourierTable table = siegel::build_table(params, p, trace_bound, jobs);
            emit(siegel::to_json(table), out_path);
        } else if (*lambda) {
            siegel::DirichletCharacter chi = siegel::DirichletCharacter::parse(char_spec);
            long a = ((weight % (prime - 1)) + prime - 1) % (prime - 1);
            siegel::Json rows = siegel::Json::array();
            for (const auto& t : siegel::enumerate_indices(genus, trace_bound)) {
                siegel::Json row = siegel::to_json(
                    siegel::lambda_coefficient(t, genus, chi, a, prime, xprec, pprec));
                siegel::Json entry;
                entry["T"] = t.key();
                for (auto& [k, v] : row.items()) entry[k] = v;
                rows.push_back(entry);
            }
            siegel::Json j{{"genus", genus}, {"prime", prime}, {"a", a},
                           {"char", chi.spec_string()}, {"xprec", xprec}, {"pprec", pprec},
                           {"entries", rows}};
            emit(j, out_path);
        } else if (*series) {
            siegel::HalfIntegralMatrix t = siegel::HalfIntegralMatrix::from_key(matrix_key);
            siegel::SiegelSeriesPoly f = siegel::F_local(t, prime);
            siegel::Json j = siegel::to_json(f);
            j["T"] = t.key();
            emit(j, out_path);
        } else if (*verify) {
            std::vector<siegel::CheckResult> results;
            if (suite == "genus1") results = siegel::verify_genus1();
            else if (suite == "operator") results = siegel::verify_operator(seed, jobs);
            else if (suite == "siegel-series") results = siegel::verify_siegel_series(seed);
            else if (suite == "kummer") results = siegel::verify_kummer();
            else if (suite == "lambda-specialize") results = siegel::verify_lambda_specialize();
            else {
                std::fprintf(stderr, "unknown suite: %s\n", suite.c_str());
                return 2;
            }
            int failures = 0;
            for (const auto& r : results) {
                if (!r.pass) ++failures;
                std::printf("[%s] %s%s%s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(),
                            r.detail.empty() ? "" : " -- ", r.detail.c_str());
                if (!r.pass && !r.detail.empty())
                    std::fprintf(stderr, "counterexample: %s: %s\n", r.name.c_str(),
                                 r.detail.c_str());
            }
            std::printf("%zu checks, %d failures\n", results.size(), failures);
            return failures ? 1 : 0;
        }
    } catch (const siegel::InvalidParamsError& e) {
        std::fprintf(stderr, "invalid job spec: %s\n", e.what());
        return 2;
    } catch (const siegel::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
