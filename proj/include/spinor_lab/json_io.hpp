#pragma once

// JSON encodings. Objects use sorted keys and rationals are canonical "p/q"
// strings, so identical inputs serialize to identical bytes.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "spinor_lab/diffop.hpp"
#include "spinor_lab/kaplansky.hpp"

namespace spinor_lab::json_io {

using json = nlohmann::json;

inline json parse_text(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw InputError("malformed JSON in " + what + ": " + e.what());
    }
}

inline json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str(), path);
}

/// A JSON literal if the argument starts with '{' or '[', else a file path.
inline json read_inline_or_file(const std::string& arg) {
    const auto p = arg.find_first_not_of(" \t\n");
    if (p != std::string::npos && (arg[p] == '{' || arg[p] == '[')) return parse_text(arg, "argument");
    return read_file(arg);
}

inline Rational rational_from(const json& j) {
    if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
    if (j.is_string()) return parse_rational(j.get<std::string>());
    throw InputError("expected an integer or a \"p/q\" string, got " + j.dump());
}

// --- gamma -----------------------------------------------------------------

/// {"pairs": [[i, j], ...], "rows": R}. Validated; errors name the pair.
inline GammaValidation gamma_from_json(const json& j) {
    if (!j.is_object() || !j.contains("pairs") || !j.contains("rows"))
        throw InputError("gamma file needs \"pairs\" and \"rows\"");
    if (!j["rows"].is_number_integer()) throw InputError("\"rows\" must be an integer");
    std::vector<GammaSpec::Pair> pairs;
    for (const auto& p : j["pairs"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
            throw InputError("malformed pair " + p.dump());
        const long long a = p[0].get<long long>(), b = p[1].get<long long>();
        if (a < -1000000 || a > 1000000 || b < -1000000 || b > 1000000)
            throw InputError("index out of range in pair " + p.dump());
        pairs.emplace_back(static_cast<int>(a), static_cast<int>(b));
    }
    return validate(GammaSpec(pairs, j["rows"].get<int>()));
}

inline json to_json(const GammaSpec& g) {
    json pairs = json::array();
    for (auto [i, j] : g.pairs()) pairs.push_back({i, j});
    return {{"pairs", pairs}, {"rows", g.rows()}};
}

// --- vectors, operators ----------------------------------------------------

inline json to_json(const GaussianRational& c) { return {{"re", to_string(c.re)}, {"im", to_string(c.im)}}; }

/// {"terms": [{"index": n, "re": "p/q", "im": "p/q"}, ...]} in index order.
inline json to_json(const WalshVector& v) {
    json terms = json::array();
    for (const auto& [alpha, c] : v.terms())
        terms.push_back({{"index", index_to_integer(alpha)}, {"re", to_string(c.re)}, {"im", to_string(c.im)}});
    return {{"terms", terms}};
}

inline WalshVector walsh_from_json(const json& j) {
    if (!j.is_object() || !j.contains("terms")) throw InputError("vector needs \"terms\"");
    WalshVector v;
    for (const auto& t : j["terms"]) {
        if (!t.contains("index") || !t["index"].is_number_unsigned()) throw InputError("term needs a nonnegative \"index\"");
        const Rational re = t.contains("re") ? rational_from(t["re"]) : Rational(0);
        const Rational im = t.contains("im") ? rational_from(t["im"]) : Rational(0);
        v.add(index_from_integer(t["index"].get<std::uint64_t>()), GaussianRational(re, im));
    }
    return v;
}

inline json to_json(const std::vector<Triplet>& ts) {
    json out = json::array();
    for (const auto& t : ts) out.push_back({{"row", t.row}, {"col", t.col}, {"re", to_string(t.value.re)}, {"im", to_string(t.value.im)}});
    return out;
}

inline std::string to_csv(const std::vector<Triplet>& ts) {
    std::string out = "row,col,re,im\n";
    for (const auto& t : ts)
        out += std::to_string(t.row) + "," + std::to_string(t.col) + "," + to_string(t.value.re) + "," + to_string(t.value.im) + "\n";
    return out;
}

// --- reports ---------------------------------------------------------------

inline json to_json(const Report& r) {
    json failures = json::array();
    for (const auto& f : r.failures) {
        json where = json::object();
        for (const auto& [k, v] : f.where) where[k] = v;
        failures.push_back({{"check", f.check}, {"where", where}});
    }
    return {{"name", r.name},     {"checks", r.checks},     {"failed", r.failed},
            {"passed", r.passed()}, {"failures", failures}, {"notes", r.notes}};
}

// --- spectra ---------------------------------------------------------------

inline json to_json(const SpectralData& s) {
    json multiset = json::object();
    json spaces = json::array();
    for (const auto& e : s.eigen) {
        multiset[e.value.get_str()] = e.algebraic_multiplicity;
        json vectors = json::array();
        for (const auto& v : e.vectors) vectors.push_back(to_json(v));
        spaces.push_back({{"value", e.value.get_str()},
                          {"algebraic_multiplicity", e.algebraic_multiplicity},
                          {"geometric_multiplicity", e.vectors.size()},
                          {"vectors", vectors}});
    }
    return {{"level", s.level}, {"eigenvalues", multiset}, {"eigenspaces", spaces}, {"complete", s.complete}};
}

// --- algebra ---------------------------------------------------------------

/// {"terms": [{"symbol": "w" | "w'", "m": n, "c": "p/q"}, ...]}.
inline json to_json(const AlgebraElement& a) {
    json terms = json::array();
    for (const auto& [s, c] : a.terms())
        terms.push_back({{"symbol", s.primed ? "w'" : "w"}, {"m", s.m}, {"c", to_string(c)}});
    return {{"terms", terms}};
}

inline AlgebraElement algebra_from_json(const json& j) {
    if (!j.is_object() || !j.contains("terms")) throw InputError("algebra element needs \"terms\"");
    AlgebraElement a;
    for (const auto& t : j["terms"]) {
        if (!t.contains("symbol") || !t.contains("m") || !t["m"].is_number_unsigned())
            throw InputError("malformed algebra term " + t.dump());
        const std::string sym = t["symbol"].get<std::string>();
        if (sym != "w" && sym != "w'") throw InputError("unknown symbol " + sym);
        a.add({sym == "w'", t["m"].get<std::uint64_t>()}, t.contains("c") ? rational_from(t["c"]) : Rational(1));
    }
    return a;
}

inline json to_json(const Convention& c) {
    return {{"description", c.describe()},
            {"unprimed_family", to_string(c.unprimed_family)},
            {"unprimed_shift", c.unprimed_shift},
            {"unprimed_sign", c.unprimed_sign},
            {"primed_family", to_string(c.primed_family())},
            {"primed_shift", c.primed_shift},
            {"primed_sign", c.primed_sign}};
}

inline json to_json(const CalibrationReport& r) {
    json rules = json::object();
    for (const auto& [name, a] : r.rules) rules[name] = {{"agree", a.agree}, {"total", a.total}};
    json ranking = json::array();
    for (const auto& [c, n] : r.ranking) ranking.push_back({{"convention", c.describe()}, {"matches", n}});
    return {{"convention", to_json(r.convention)},
            {"matches", r.matches},
            {"compared", r.compared},
            {"rules", rules},
            {"ranking", ranking}};
}

}  // namespace spinor_lab::json_io
