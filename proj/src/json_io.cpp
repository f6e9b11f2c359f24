#include "siegel/json_io.hpp"

namespace siegel {

Json to_json(const Rational& q) { return rational_str(q); }

Json to_json(const CyclotomicNumber& z) {
    if (z.is_rational()) return rational_str(z.to_rational());
    Json coeffs = Json::array();
    for (const auto& c : z.coeffs()) coeffs.push_back(rational_str(c));
    return Json{{"conductor", z.conductor()}, {"coeffs", coeffs}};
}

Json to_json(const DirichletCharacter& chi) {
    Json gens = Json::array(), orders = Json::array(), images = Json::array();
    for (const auto& f : chi.factors()) {
        gens.push_back(f.generator.get_str());
        orders.push_back(f.order);
    }
    for (long e : chi.images()) images.push_back(e);
    return Json{{"modulus", chi.modulus().get_str()},
                {"order", chi.order()},
                {"spec", chi.spec_string()},
                {"generators", gens},
                {"generator_orders", orders},
                {"images", images}};
}

DirichletCharacter character_from_json(const Json& j) {
    Int modulus(j.at("modulus").get<std::string>());
    std::vector<long> images;
    for (const auto& e : j.at("images")) images.push_back(e.get<long>());
    return DirichletCharacter::from_images(modulus, images);
}

Json to_json(const SiegelSeriesPoly& f) {
    Json coeffs = Json::array();
    for (const auto& c : f.coeffs) coeffs.push_back(c.get_str());
    return Json{{"prime", f.prime}, {"rank", f.rank}, {"coeffs", coeffs}};
}

Json to_json(const FourierTable& table) {
    Json params{{"genus", table.params.genus},
                {"weight", table.params.weight},
                {"char", table.params.chi.spec_string()}};
    if (table.prime) params["prime"] = *table.prime;
    params["trace_bound"] = table.trace_bound;
    Json entries = Json::object();
    for (const auto& [key, value] : table.entries) entries[key] = to_json(value);
    return Json{{"params", params}, {"entries", entries}};
}

Json to_json(const LambdaElement& e) {
    Json coeffs = Json::array(), prec = Json::array();
    for (const auto& c : e.coeffs()) {
        coeffs.push_back(c.residue().get_str());
        prec.push_back(c.prec());
    }
    return Json{{"prime", e.prime()},
                {"xprec", e.xprec()},
                {"coeffs mod (p^M, X^N)", coeffs},
                {"slot_prec", prec}};
}

Json to_json(const LambdaFraction& f) {
    Json poles = Json::array();
    for (const auto& [kind, idx] : f.poles)
        poles.push_back(std::string(1, kind) + std::to_string(idx));
    Json j = to_json(f.num);
    j["pole_order"] = f.pole_order();
    j["pole_factors"] = poles;
    return j;
}

} // namespace siegel
