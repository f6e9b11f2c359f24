// pybind11 surface over the main operations: tables, local series, the
// Iwasawa-algebra family and the verification suites. Values cross the
// boundary as exact strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "siegel/json_io.hpp"
#include "siegel/verify.hpp"

namespace py = pybind11;
using namespace siegel;

namespace {

HalfIntegralMatrix matrix_from_key(const std::string& key) {
    return HalfIntegralMatrix::from_key(key);
}

EisensteinParams make_params(long genus, long weight, const std::string& char_spec) {
    return EisensteinParams(genus, weight, DirichletCharacter::parse(char_spec));
}

std::string json_value_str(const Json& j) {
    return j.is_string() ? j.get<std::string>() : j.dump();
}

py::dict table_to_dict(const FourierTable& table) {
    py::dict out;
    for (const auto& [key, value] : table.entries)
        out[py::str(key)] = json_value_str(to_json(value));
    return out;
}

} // namespace

PYBIND11_MODULE(_siegeleis, m) {
    m.doc() = "exact Siegel Eisenstein Fourier tables, semi-ordinary p-stabilization, "
              "and Iwasawa-algebra interpolation";

    m.def("enumerate_indices", [](long n, long bound) {
        std::vector<std::string> keys;
        for (const auto& t : enumerate_indices(n, bound)) keys.push_back(t.key());
        return keys;
    }, py::arg("genus"), py::arg("trace_bound"));

    m.def("classical_table", [](long genus, long weight, const std::string& char_spec,
                                long trace_bound, int jobs) {
        return table_to_dict(build_table(make_params(genus, weight, char_spec), std::nullopt,
                                         trace_bound, jobs));
    }, py::arg("genus"), py::arg("weight"), py::arg("char_spec") = "1:",
       py::arg("trace_bound") = 3, py::arg("jobs") = 0);

    m.def("stabilized_table", [](long genus, long weight, long prime,
                                 const std::string& char_spec, long trace_bound, int jobs) {
        return table_to_dict(build_table(make_params(genus, weight, char_spec), prime,
                                         trace_bound, jobs));
    }, py::arg("genus"), py::arg("weight"), py::arg("prime"), py::arg("char_spec") = "1:",
       py::arg("trace_bound") = 3, py::arg("jobs") = 0);

    m.def("stabilize_via_operator_table", [](long genus, long weight, long prime,
                                             const std::string& char_spec, long trace_bound,
                                             int jobs) {
        return table_to_dict(stabilize_via_operator(make_params(genus, weight, char_spec), prime,
                                                    trace_bound, jobs));
    }, py::arg("genus"), py::arg("weight"), py::arg("prime"), py::arg("char_spec") = "1:",
       py::arg("trace_bound") = 3, py::arg("jobs") = 0);

    m.def("siegel_series", [](const std::string& matrix_key, long prime) {
        std::vector<std::string> coeffs;
        for (const auto& c : F_local(matrix_from_key(matrix_key), prime).coeffs)
            coeffs.push_back(c.get_str());
        return coeffs;
    }, py::arg("matrix_key"), py::arg("prime"));

    m.def("lambda_coefficient_json", [](const std::string& matrix_key, long genus,
                                        const std::string& char_spec, long a, long prime,
                                        long xprec, long pprec) {
        auto frac = lambda_coefficient(matrix_from_key(matrix_key), genus,
                                       DirichletCharacter::parse(char_spec), a, prime, xprec,
                                       pprec);
        return to_json(frac).dump();
    }, py::arg("matrix_key"), py::arg("genus"), py::arg("char_spec"), py::arg("a"),
       py::arg("prime"), py::arg("xprec") = 6, py::arg("pprec") = 8);

    m.def("kronecker", [](long d, long m) { return kronecker_symbol(Int(d), Int(m)); },
          py::arg("d"), py::arg("m"));

    m.def("bernoulli", [](unsigned long k) { return rational_str(bernoulli_number(k)); },
          py::arg("k"));

    m.def("l_value", [](unsigned long k, const std::string& char_spec) {
        return json_value_str(to_json(L_at_negative(k, DirichletCharacter::parse(char_spec))));
    }, py::arg("k"), py::arg("char_spec") = "1:", "L(1-k, chi) as an exact value string");

    m.def("smith_normal_form", [](const std::vector<std::vector<long>>& rows) {
        long n = static_cast<long>(rows.size());
        IntMat a(n, n);
        for (long i = 0; i < n; ++i) {
            if (static_cast<long>(rows[i].size()) != n) throw Error("matrix must be square");
            for (long j = 0; j < n; ++j) a.at(i, j) = rows[i][j];
        }
        auto s = smith_normal_form(a);
        std::vector<std::string> diag;
        for (const auto& d : s.diag) diag.push_back(d.get_str());
        return diag;
    }, py::arg("rows"));

    m.def("verify_suite", [](const std::string& suite, unsigned long long seed, int jobs) {
        std::vector<CheckResult> results;
        if (suite == "genus1") results = verify_genus1();
        else if (suite == "operator") results = verify_operator(seed, jobs);
        else if (suite == "siegel-series") results = verify_siegel_series(seed);
        else if (suite == "kummer") results = verify_kummer();
        else if (suite == "lambda-specialize") results = verify_lambda_specialize();
        else if (suite == "polys") results = verify_poly_bookkeeping();
        else throw Error("unknown suite: " + suite);
        py::list out;
        for (const auto& r : results)
            out.append(py::make_tuple(r.name, r.pass, r.detail));
        return out;
    }, py::arg("suite"), py::arg("seed") = 1, py::arg("jobs") = 0);

    py::register_exception<Error>(m, "SiegelError");
}
