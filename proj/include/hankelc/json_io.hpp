#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "hankelc/distributions.hpp"
#include "hankelc/liouville.hpp"
#include "hankelc/multiplier.hpp"
#include "hankelc/symbolic.hpp"

namespace hankelc {

using json = nlohmann::json;

namespace detail {

inline void reject_unknown(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
    if (!j.is_object()) throw SpecError(where + " must be a JSON object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [key, value] : j.items())
        if (!ok.count(key)) throw SpecError("unknown field '" + key + "' in " + where);
}

}  // namespace detail

/// Rationals are written as "num/den" (or "n"); numbers and decimal strings are read exactly.
inline json rational_to_json(const Rational& q) { return format_rational(q); }

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number()) return parse_rational(j.dump());
    throw SpecError("expected a rational, got " + j.dump());
}

inline json multiindex_to_json(const MultiIndex& k) { return std::vector<std::uint32_t>(k.begin(), k.end()); }

inline MultiIndex multiindex_from_json(const json& j) {
    if (!j.is_array()) throw SpecError("multi-index must be an array of naturals");
    std::vector<std::uint32_t> v;
    for (const auto& e : j) {
        if (!e.is_number_integer() || e.get<long long>() < 0) throw SpecError("multi-index entries must be naturals");
        v.push_back(e.get<std::uint32_t>());
    }
    if (v.empty()) throw SpecError("multi-index must not be empty");
    return MultiIndex(std::move(v));
}

inline json mu_to_json(const MuVector& mu) {
    json a = json::array();
    for (const auto& q : mu.orders()) a.push_back(rational_to_json(q));
    return a;
}

inline MuVector mu_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw SpecError("mu must be a non-empty array");
    std::vector<Rational> orders;
    for (const auto& e : j) orders.push_back(rational_from_json(e));
    return MuVector(std::move(orders));
}

inline json polynomial_terms_to_json(const EvenPolynomial& p, const char* coeff) {
    json terms = json::array();
    for (const auto& [k, q] : p.terms()) terms.push_back({{"k", multiindex_to_json(k)}, {coeff, rational_to_json(q)}});
    return terms;
}

inline EvenPolynomial polynomial_from_terms(const json& terms, std::size_t n, const char* coeff,
                                            const std::string& where) {
    if (!terms.is_array()) throw SpecError(where + ".terms must be an array");
    EvenPolynomial p(n);
    for (const auto& t : terms) {
        detail::reject_unknown(t, {"k", coeff}, where + " term");
        const MultiIndex k = multiindex_from_json(t.at("k"));
        if (k.size() != n) throw SpecError(where + ": term " + k.str() + " has the wrong dimension");
        p.add_term(k, rational_from_json(t.at(coeff)));
    }
    return p;
}

inline json symbolic_to_json(const SymbolicHFunction& f) {
    return {{"mu", mu_to_json(f.mu)}, {"decay", rational_to_json(f.decay)}, {"terms", polynomial_terms_to_json(f.poly, "q")}};
}

/// `mu` may be omitted when a default is supplied; if both are present they must agree.
inline SymbolicHFunction symbolic_from_json(const json& j, const std::optional<MuVector>& fallback = std::nullopt) {
    detail::reject_unknown(j, {"mu", "decay", "terms"}, "function");
    std::optional<MuVector> mu = fallback;
    if (j.contains("mu")) {
        MuVector own = mu_from_json(j.at("mu"));
        if (mu && !(*mu == own)) throw SpecError("function.mu disagrees with the problem mu");
        mu = std::move(own);
    }
    if (!mu) throw SpecError("function needs mu");
    const Rational decay = j.contains("decay") ? rational_from_json(j.at("decay")) : Rational(0);
    if (decay < 0) throw SpecError("decay must be >= 0");
    const json terms = j.contains("terms") ? j.at("terms") : json::array();
    return SymbolicHFunction(*mu, polynomial_from_terms(terms, mu->size(), "q", "function"), decay);
}

inline json operator_to_json(const OperatorPoly& P) {
    json terms = json::array();
    for (const auto& [a, c] : P.terms()) terms.push_back({{"k", multiindex_to_json(a)}, {"a", rational_to_json(c)}});
    return {{"terms", terms}};
}

inline OperatorPoly operator_from_json(const json& j, std::size_t n) {
    detail::reject_unknown(j, {"terms"}, "P");
    OperatorPoly P(n);
    for (const auto& t : j.at("terms")) {
        detail::reject_unknown(t, {"k", "a"}, "P term");
        const MultiIndex k = multiindex_from_json(t.at("k"));
        if (k.size() != n) throw SpecError("P: term " + k.str() + " has the wrong dimension");
        P.add(k, rational_from_json(t.at("a")));
    }
    return P;
}

inline MultiplierFunction multiplier_from_json(const json& j, std::size_t n) {
    detail::reject_unknown(j, {"numerator", "denominator", "cutoff"}, "multiplier");
    auto poly = [&](const char* key) {
        const json& p = j.at(key);
        detail::reject_unknown(p, {"terms"}, std::string("multiplier.") + key);
        return polynomial_from_terms(p.at("terms"), n, "q", std::string("multiplier.") + key);
    };
    const EvenPolynomial num = poly("numerator");
    const EvenPolynomial den = j.contains("denominator") ? poly("denominator") : EvenPolynomial::constant(n, 1);
    MultiplierFunction f{RationalFunction(num, den)};
    if (j.contains("cutoff")) {
        const json& c = j.at("cutoff");
        detail::reject_unknown(c, {"kind", "radius"}, "multiplier.cutoff");
        const std::string kind = c.at("kind").get<std::string>();
        if (kind == "inner")
            f.cut = MultiplierFunction::Cut::Inner;
        else if (kind == "complement")
            f.cut = MultiplierFunction::Cut::Complement;
        else if (kind != "none")
            throw SpecError("multiplier.cutoff.kind must be none, inner or complement");
        f.cutoff = CutoffSpec(c.contains("radius") ? c.at("radius").get<double>() : 1.0);
    }
    return f;
}

/// One problem document shared by all commands.
struct ProblemSpec {
    MuVector mu;
    std::optional<SymbolicHFunction> function;
    std::optional<OperatorPoly> P;
    std::optional<MultiIndex> k;
    std::optional<std::uint32_t> m;
    std::optional<std::uint32_t> R;
    std::optional<std::uint32_t> order;
    std::optional<std::string> seminorm;
    std::optional<json> multiplier;
    std::optional<DeltaCombination> delta;

    std::size_t dim() const noexcept { return mu.size(); }
};

inline ProblemSpec parse_problem(const json& j) {
    try {
        detail::reject_unknown(j, {"mu", "function", "P", "k", "m", "R", "order", "seminorm", "multiplier", "delta"},
                               "problem");
        if (!j.contains("mu")) throw SpecError("problem needs mu");
        ProblemSpec s{mu_from_json(j.at("mu")), {}, {}, {}, {}, {}, {}, {}, {}, {}};
        const std::size_t n = s.dim();
        if (j.contains("function")) s.function = symbolic_from_json(j.at("function"), s.mu);
        if (j.contains("P")) s.P = operator_from_json(j.at("P"), n);
        if (j.contains("k")) {
            s.k = multiindex_from_json(j.at("k"));
            if (s.k->size() != n) throw SpecError("k has the wrong dimension");
        }
        for (auto [key, slot] : {std::pair{"m", &s.m}, std::pair{"R", &s.R}, std::pair{"order", &s.order}})
            if (j.contains(key)) {
                if (!j.at(key).is_number_unsigned()) throw SpecError(std::string(key) + " must be a natural");
                *slot = j.at(key).get<std::uint32_t>();
            }
        if (j.contains("seminorm")) {
            s.seminorm = j.at("seminorm").get<std::string>();
            if (*s.seminorm != "gamma" && *s.seminorm != "lambda" && *s.seminorm != "rho")
                throw SpecError("seminorm must be gamma, lambda or rho");
        }
        if (j.contains("multiplier")) {
            multiplier_from_json(j.at("multiplier"), n);  // validate early
            s.multiplier = j.at("multiplier");
        }
        if (j.contains("delta")) {
            json d = j.at("delta");
            detail::reject_unknown(d, {"mu", "terms"}, "delta");
            if (!d.contains("mu")) d["mu"] = mu_to_json(s.mu);
            s.delta = DeltaCombination::from_json(d);
            if (!(s.delta->mu == s.mu)) throw SpecError("delta.mu disagrees with the problem mu");
        }
        return s;
    } catch (const SpecError&) {
        throw;
    } catch (const HypothesisFailed&) {
        throw;
    } catch (const Error& e) {
        throw SpecError(e.what());
    } catch (const json::exception& e) {
        throw SpecError(std::string("malformed problem: ") + e.what());
    }
}

inline ProblemSpec load_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open spec file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw SpecError(path + ": " + e.what());
    }
    return parse_problem(j);
}

inline json hypothesis_to_json(const HypothesisReport& r) {
    json j{{"pass", r.pass},
           {"same_sign", r.same_sign},
           {"orthant_nonvanishing", r.orthant_nonvanishing},
           {"grid_confirms", r.grid_confirms},
           {"grid_min_abs", r.grid_min_abs},
           {"full_space_nonvanishing", r.full_space_nonvanishing}};
    if (r.failing_axis >= 0) j["failing_axis"] = r.failing_axis + 1;
    if (!r.reason.empty()) j["reason"] = r.reason;
    return j;
}

inline json liouville_to_json(const LiouvilleResult& r, std::uint32_t degree) {
    json basis = json::array();
    for (const auto& e : r.basis) {
        json item = symbolic_to_json(e.f);
        item["certificate"] = {{"exact_residual", e.exact_zero ? "0" : "nonzero"},
                               {"weak_residual", e.weak.max_residual},
                               {"weak_residuals", e.weak.residuals},
                               {"oracle_residual", e.weak.max_oracle_residual}};
        basis.push_back(std::move(item));
    }
    return {{"degree", degree}, {"hypothesis", hypothesis_to_json(r.hypothesis)}, {"basis", basis}};
}

inline json taylor_to_json(const TaylorReport& r) {
    json coeffs = json::array();
    for (const auto& [k, a] : r.exact) {
        json c{{"k", multiindex_to_json(k)}, {"a", rational_to_json(a)}};
        if (r.extrapolated.count(k)) c["extrapolated"] = r.extrapolated.at(k);
        coeffs.push_back(std::move(c));
    }
    json tk = json::array();
    for (const auto& [k, v] : r.remainder_Tk) tk.push_back({{"k", multiindex_to_json(k)}, {"samples", v}});
    return {{"order", r.order}, {"coefficients", coeffs}, {"ladder", r.ladder}, {"remainder", r.remainder},
            {"remainder_Tk", tk}};
}

inline json multiplier_to_json(const MultiplierReport& r) {
    json entries = json::array();
    for (const auto& [k, e] : r.entries)
        entries.push_back({{"k", multiindex_to_json(k)},
                           {"n_k", e.n_k},
                           {"n_max", e.n_max},
                           {"growth", std::isinf(e.growth) ? json("-inf") : json(e.growth)},
                           {"bounded", e.bounded},
                           {"C", e.C}});
    return {{"entries", entries}};
}

}  // namespace hankelc
