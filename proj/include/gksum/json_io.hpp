#pragma once

#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gksum/errata.hpp"
#include "gksum/errors.hpp"
#include "gksum/gosper.hpp"
#include "gksum/lsumming.hpp"
#include "gksum/parser.hpp"
#include "gksum/printer.hpp"
#include "gksum/verifier.hpp"

namespace gksum {

using Json = nlohmann::ordered_json;

inline constexpr int kCorpusSchemaVersion = 1;

// Dense coefficient array of "num/den" strings, lowest degree first.
inline Json poly_to_json(const Polynomial& p) {
    Json arr = Json::array();
    for (const auto& c : p.coeffs()) arr.push_back(rat_to_string(c));
    return arr;
}

inline Polynomial poly_from_json(const Json& j) {
    std::vector<Rational> coeffs;
    for (const auto& item : j) coeffs.push_back(rat_from_string(item.get<std::string>()));
    return Polynomial(std::move(coeffs));
}

inline Json ratfun_to_json(const RationalFunction& rf) {
    return Json{{"num", poly_to_json(rf.num())}, {"den", poly_to_json(rf.den())}};
}

inline Json verdict_to_json(const OracleVerdict& v) {
    return Json{{"n", v.n},
                {"side_a", rat_to_string(v.side_a)},
                {"side_b", rat_to_string(v.side_b)},
                {"equal", v.equal}};
}

inline Json errata_to_json(const ErrataEntry& e) {
    Json j{{"location", e.location},
           {"claim", e.claim},
           {"verdict", e.verdict}};
    if (e.first_failing_n) j["first_failing_n"] = *e.first_failing_n;
    else j["first_failing_n"] = nullptr;
    j["witness_n"] = e.witness_n;
    j["side_a"] = rat_to_string(e.side_a);
    j["side_b"] = rat_to_string(e.side_b);
    j["checked_lower"] = e.checked_lower;
    j["checked_n_max"] = e.checked_n_max;
    if (!e.note.empty()) j["note"] = e.note;
    return j;
}

// The result record for one summation run.
inline Json gosper_record(const GosperResult& res, const std::optional<DefiniteSum>& ds) {
    Json j;
    j["status"] = res.failed() ? "fail" : "sum";
    j["input"] = print_term(res.input);
    j["lower"] = res.lower;
    j["ratio"] = ratfun_to_json(res.ratio.rho);
    j["gosper_form"] = Json{{"p", poly_to_json(res.form.p)},
                            {"q", poly_to_json(res.form.q)},
                            {"r", poly_to_json(res.form.r)}};
    j["degree_bound"] = res.bound ? Json(*res.bound) : Json(nullptr);
    j["f"] = res.key_poly ? poly_to_json(*res.key_poly) : Json(nullptr);
    if (res.anti) {
        j["antidifference"] = print_term(res.anti->F);
        j["antidifference_base"] = res.anti->k0;
    } else {
        j["antidifference"] = nullptr;
        j["antidifference_base"] = nullptr;
    }
    if (ds) {
        j["definite_sum"] = print_term(ds->closed, "n");
        j["valid_from"] = ds->valid_from;
    } else {
        j["definite_sum"] = nullptr;
        j["valid_from"] = nullptr;
    }
    j["checks"] = Json{{"telescoping_samples", res.telescoping_samples}};
    return j;
}

// LaTeX rendering of a presented identity.
inline std::string identity_latex(const PresentedIdentity& id) {
    std::string out;
    bool first = true;
    for (const auto& term : id.lhs) {
        const Rational mag = term.coeff < 0 ? Rational(-term.coeff) : term.coeff;
        if (first) {
            if (term.coeff < 0) out += "-";
        } else {
            out += term.coeff < 0 ? " - " : " + ";
        }
        if (mag != 1) out += detail::latex_rational(mag) + " ";
        out += "\\sum_{k=" + std::to_string(id.lower) + "}^{n} " + latex_term(term.summand, "k");
        first = false;
    }
    out += " = " + latex_term(id.rhs, "n");
    return out;
}

inline Json identity_to_json(const RawIdentity& raw, const PresentedIdentity& presented) {
    Json monomials = Json::array();
    for (const auto& mono : raw.monomials)
        monomials.push_back(Json{{"coeff", rat_to_string(mono.coeff)},
                                 {"s_pow", mono.s_pow},
                                 {"t_pow", mono.t_pow}});
    Json terms = Json::array();
    for (const auto& term : presented.lhs)
        terms.push_back(
            Json{{"coeff", rat_to_string(term.coeff)}, {"summand", print_term(term.summand)}});
    return Json{{"schema", kCorpusSchemaVersion},
                {"m", raw.m},
                {"lower", raw.lower},
                {"t", print_term(raw.t)},
                {"s", print_term(raw.s)},
                {"summand_monomials", monomials},
                {"rhs", "s(n)^" + std::to_string(raw.m)},
                {"presented",
                 Json{{"lhs_terms", terms}, {"rhs", print_term(presented.rhs)}}},
                {"latex", identity_latex(presented)}};
}

struct CorpusIdentity {
    RawIdentity raw;
    PresentedIdentity presented;
};

inline CorpusIdentity identity_from_json(const Json& j) {
    CorpusIdentity out;
    out.raw.m = j.at("m").get<long>();
    out.raw.lower = j.at("lower").get<long>();
    out.raw.t = parse_term(j.at("t").get<std::string>());
    out.raw.s = parse_term(j.at("s").get<std::string>());
    for (const auto& mono : j.at("summand_monomials"))
        out.raw.monomials.push_back(RMonomial{rat_from_string(mono.at("coeff").get<std::string>()),
                                              mono.at("s_pow").get<long>(),
                                              mono.at("t_pow").get<long>()});
    if (out.raw.monomials.empty()) throw DomainError("identity without monomials");
    out.presented.lower = out.raw.lower;
    const Json& pres = j.at("presented");
    for (const auto& term : pres.at("lhs_terms"))
        out.presented.lhs.push_back(
            PresentedTerm{rat_from_string(term.at("coeff").get<std::string>()),
                          parse_term(term.at("summand").get<std::string>())});
    out.presented.rhs = parse_term(pres.at("rhs").get<std::string>());
    return out;
}

struct CorpusLine {
    std::size_t line_number = 0;
    CorpusIdentity identity;
};

// JSON-lines corpus; blank lines are skipped, anything else must be a
// well-formed identity record.
inline std::vector<CorpusLine> read_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CorpusError(0, "cannot open corpus file " + path);
    std::vector<CorpusLine> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            Json j = Json::parse(line);
            if (j.value("schema", -1) != kCorpusSchemaVersion)
                throw DomainError("unsupported schema version");
            out.push_back(CorpusLine{lineno, identity_from_json(j)});
        } catch (const std::exception& e) {
            throw CorpusError(lineno,
                              "malformed corpus line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

// User substitution rules: a JSON array of {t, power, closed, lower?}.
inline SubstitutionTable load_substitution_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open substitution table " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw DomainError("malformed substitution table: " + std::string(e.what()));
    }
    SubstitutionTable table;
    for (const auto& rule : j) {
        SubstitutionRule r;
        r.pattern = parse_term(rule.at("t").get<std::string>());
        r.power = rule.at("power").get<long>();
        r.closed = parse_term(rule.at("closed").get<std::string>());
        r.lower = rule.value("lower", 1);
        table.add_rule(std::move(r));
    }
    return table;
}

} // namespace gksum
