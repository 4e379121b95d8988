#pragma once

// Command dispatch for the spinor-lab executable. run() returns the exit
// status: 0 when every requested verification passes, 1 on a verification
// failure (the report is still printed), 2 on malformed input.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <regex>
#include <string>

#include "spinor_lab/json_io.hpp"

namespace spinor_lab {

struct RunConfig {
    std::string command;     // gamma, rep, classify, finite-type, diffop, algebra, derivative-check
    std::string subcommand;  // validate, classify, verify, build, matrix, spectrum, identities, mul, check, calibrate
    std::string gamma_path;
    int level = 0;           // 0: command default
    int generators = 0;      // 0: all available
    std::string format = "json";
    std::uint64_t seed = 0;
    std::size_t trials = 1000;
    int k = 1;
    int m = 1;
    int kmax = 12;
    std::string op;
    std::string a, b;
    bool oracle = false;
    bool recursive = false;
    bool exact = false;
    std::string function = "sin";
    std::string output_path;
};

inline constexpr int max_level = 16;
inline constexpr int max_spectral_level = 8;

namespace detail {

inline void check_level(int n, int upper) {
    if (n < 1 || n > upper)
        throw InputError("level " + std::to_string(n) + " outside supported range 1.." + std::to_string(upper));
}

inline GammaSpec load_gamma(const RunConfig& c) {
    if (c.gamma_path.empty()) throw InputError("--gamma is required");
    return json_io::gamma_from_json(json_io::read_file(c.gamma_path)).spec;
}

struct Outcome {
    json_io::json body;
    bool ok = true;
    std::string text;  // non-JSON payload (csv)
};

inline Outcome run_gamma(const RunConfig& c) {
    if (c.gamma_path.empty()) throw InputError("--gamma is required");
    const auto v = json_io::gamma_from_json(json_io::read_file(c.gamma_path));
    if (c.subcommand == "validate")
        return {{{"gamma", json_io::to_json(v.spec)}, {"valid", true}, {"warnings", v.warnings}}};
    if (c.subcommand == "classify") {
        const auto cls = classify(v.spec);
        auto opt = [](const std::optional<int>& w) { return w ? json_io::json(*w) : json_io::json(nullptr); };
        return {{{"tag", to_string(cls.tag)},
                 {"gamma1_witness", opt(cls.gamma1_witness)},
                 {"gamma_minus1_witness", opt(cls.gamma_minus1_witness)},
                 {"filtration_levels", filtration_levels(v.spec, v.spec.rows())},
                 {"warnings", v.warnings}}};
    }
    throw InputError("unknown gamma subcommand '" + c.subcommand + "'");
}

inline Representation load_rep(const RunConfig& c, int upper = max_level) {
    check_level(c.level, upper);
    return Representation::dyadic(load_gamma(c), c.level, c.generators);
}

/// Operator names: J<k>, J'<k>, a<k>, a*<k>, D, D', T.
inline LinearMap named_operator(const Representation& rep, const std::string& name) {
    static const std::regex indexed(R"((J'|J|a\*|a)(\d+))");
    std::smatch match;
    if (std::regex_match(name, match, indexed)) {
        const int k = std::stoi(match[2]);
        if (match[1] == "J") return build_J(rep, k);
        if (match[1] == "J'") return build_Jprime(rep, k);
        if (match[1] == "a") return build_a(rep, k);
        return build_a_star(rep, k);
    }
    if (name == "D") return build_D(rep);
    if (name == "D'") return build_Dprime(rep);
    if (name == "T") return build_T(rep);
    throw InputError("unknown operator '" + name + "'");
}

inline Outcome run_rep(const RunConfig& c) {
    const Representation rep = load_rep(c);
    json_io::json base{{"level", rep.level().n()}, {"generators", rep.generator_count()}};
    if (c.subcommand == "verify") {
        const Report cl = verify_clifford(rep);
        const Report car = verify_car(rep);
        base["clifford"] = json_io::to_json(cl);
        base["car"] = json_io::to_json(car);
        return {base, cl.passed() && car.passed()};
    }
    if (c.subcommand == "build") {
        json_io::json ops = json_io::json::array();
        std::size_t pos = 0;
        for (const auto& g : generators(rep)) {
            ops.push_back({{"name", generator_name(pos++)},
                           {"nonzeros", g.nonzero_count()},
                           {"max_column_size", g.max_column_size()}});
        }
        base["operators"] = ops;
        return {base};
    }
    if (c.subcommand == "matrix" || c.subcommand == "operator") {
        if (c.op == "S" || c.op == "Q") {
            const AntilinearMap a = c.op == "S" ? build_S(rep) : build_Q(rep);
            base["antilinear"] = true;
            base["operator"] = c.op;
            if (c.format == "csv") return {base, true, json_io::to_csv(a.matrix().triplets())};
            base["triplets"] = json_io::to_json(a.matrix().triplets());
            return {base};
        }
        const LinearMap m = named_operator(rep, c.op);
        base["antilinear"] = false;
        base["operator"] = c.op;
        if (c.format == "csv") return {base, true, json_io::to_csv(m.triplets())};
        base["triplets"] = json_io::to_json(m.triplets());
        return {base};
    }
    throw InputError("unknown rep subcommand '" + c.subcommand + "'");
}

inline Outcome run_classify(const RunConfig& c) {
    const Representation rep = load_rep(c);
    const GammaSpec& g = *rep.cocycles().gamma();
    const auto cls = classify(g);
    json_io::json body{{"level", rep.level().n()}, {"generators", rep.generator_count()}, {"tag", to_string(cls.tag)}};
    bool ok = true;
    if (cls.tag == GammaTag::Gamma1) {
        const AntilinearMap s = build_S(rep);
        const Report r = verify_structure(s, rep, 1);
        body["type"] = "real";
        body["structure"] = json_io::to_json(r);
        body["fixed_real_dimension"] = fixed_real_dimension(s);
        ok = r.passed();
    } else if (cls.tag == GammaTag::GammaMinus1) {
        const Report r = verify_structure(build_Q(rep), rep, -1);
        body["type"] = "quaternionic";
        body["structure"] = json_io::to_json(r);
        ok = r.passed();
    } else {
        body["type"] = nullptr;
    }
    if (c.exact) {
        check_level(c.level, 5);
        const TypeVerdict v = classify_antilinear(rep);
        body["commutant"] = {{"type", to_string(v.tag)}, {"lambda", to_string(v.lambda)}, {"dimension", v.commutant_dimension}};
    }
    return {body, ok};
}

inline Outcome run_finite_type(const RunConfig& c) {
    if (c.m < 1 || c.m > 6) throw InputError("m must lie in 1..6");
    const TypeVerdict v = classify_antilinear(Representation::finite(c.m));
    const int sign = cartan_dirac_sign(c.m);
    const RepresentationType expected = sign > 0 ? RepresentationType::Real : RepresentationType::Quaternionic;
    return {{{"m", c.m},
             {"type", to_string(v.tag)},
             {"lambda", to_string(v.lambda)},
             {"commutant_dimension", v.commutant_dimension},
             {"cartan_dirac_sign", sign}},
            v.tag == expected};
}

inline Outcome run_diffop(const RunConfig& c) {
    const GammaSpec g = load_gamma(c);
    if (c.subcommand == "spectrum") {
        const int nk = required_level(g, c.k);
        if (nk > g.rows()) throw InputError("N_k = " + std::to_string(nk) + " exceeds the declared rows");
        const int level = c.level != 0 ? c.level : required_level(g, nk);
        check_level(level, max_spectral_level);
        const Representation rep = Representation::dyadic(g, level, c.generators);
        if (rep.generator_count() < nk) throw InputError("level too small for the generators acting on W_{N_k}");
        const SpectralData s = integer_spectrum(build_D(rep), nk);
        json_io::json body{{"k", c.k}, {"N_k", nk}, {"spectrum", json_io::to_json(s)}};
        bool ok = s.complete;
        if (c.recursive) {
            const auto r = recursive_diagonalize(rep, c.k);
            body["recursion"] = {{"used_fallback", r.used_fallback},
                                 {"agrees_with_oracle", r.agrees_with_oracle},
                                 {"report", json_io::to_json(r.report)}};
            ok = ok && r.agrees_with_oracle;
        }
        return {body, ok};
    }
    if (c.subcommand == "identities") {
        check_level(c.level, max_spectral_level);
        const Representation rep = Representation::dyadic(g, c.level, c.generators);
        json_io::json body{{"level", c.level}, {"generators", rep.generator_count()}};
        bool ok = true;
        json_io::json filtration = json_io::json::array();
        for (int k = 1; k <= g.rows(); ++k) {
            if (required_level(g, k) > rep.generator_count()) break;
            const Report r = check_filtration_invariance(rep, k);
            filtration.push_back(json_io::to_json(r));
            ok = ok && r.passed();
        }
        body["filtration"] = filtration;
        if (classify(g).tag == GammaTag::Gamma1) {
            const Report t = verify_T_conjugation(rep);
            body["t_conjugation"] = json_io::to_json(t);
            ok = ok && t.passed();
        } else {
            body["t_conjugation"] = nullptr;
        }
        const RecoveryReport rec = verify_recovery(rep);
        body["recovery_as_printed"] = json_io::to_json(rec.as_printed);
        body["recovery_with_character"] = json_io::to_json(rec.with_character);
        body["recovery_sign_resolved"] = json_io::to_json(rec.sign_resolved);
        ok = ok && rec.as_printed.passed() && rec.with_character.passed();
        return {body, ok};
    }
    throw InputError("unknown diffop subcommand '" + c.subcommand + "'");
}

inline Outcome run_algebra(const RunConfig& c) {
    const GammaSpec g = c.gamma_path.empty() ? gamma_presets::real_example(6) : load_gamma(c);
    const int level = c.level != 0 ? c.level : 6;
    check_level(level, max_spectral_level);
    const Representation rep = Representation::dyadic(g, level, c.generators);
    if (c.subcommand == "mul") {
        const AlgebraElement a = json_io::algebra_from_json(json_io::read_inline_or_file(c.a));
        const AlgebraElement b = json_io::algebra_from_json(json_io::read_inline_or_file(c.b));
        json_io::json body;
        AlgebraElement p;
        if (c.oracle) {
            const CalibrationReport cal = calibrate(g, rep);
            p = star_oracle(a, b, CliffordAlgebra(rep, cal.convention));
            body["convention"] = json_io::to_json(cal.convention);
        } else {
            p = star_formula(a, b, g);
        }
        body["product"] = json_io::to_json(p);
        body["norm2"] = {{"a", to_string(a.norm2())}, {"b", to_string(b.norm2())}, {"product", to_string(p.norm2())}};
        return {body};
    }
    if (c.subcommand == "calibrate") return {{{"level", level}, {"calibration", json_io::to_json(calibrate(g, rep))}}};
    if (c.subcommand == "check") {
        const CalibrationReport cal = calibrate(g, rep);
        const CliffordAlgebra alg(rep, cal.convention);
        const Report laws = verify_algebra_laws(alg, std::min<std::size_t>(c.trials, 100), c.seed);
        const Report norm_oracle = verify_norm_composition(ProductKind::Oracle, alg, g, c.trials, c.seed);
        const Report norm_formula = verify_norm_composition(ProductKind::Formula, alg, g, c.trials, c.seed);
        const Report iso = verify_formula_isometry(g, alg.dimension(), g.rows());
        return {{{"level", level},
                 {"seed", c.seed},
                 {"trials", c.trials},
                 {"convention", json_io::to_json(cal.convention)},
                 {"oracle_laws", json_io::to_json(laws)},
                 {"norm_composition_oracle", json_io::to_json(norm_oracle)},
                 {"norm_composition_formula", json_io::to_json(norm_formula)},
                 {"formula_isometry", json_io::to_json(iso)}},
                laws.passed() && norm_oracle.passed() && iso.passed()};
    }
    throw InputError("unknown algebra subcommand '" + c.subcommand + "'");
}

inline Outcome run_derivative(const RunConfig& c) {
    std::function<double(double)> f, fp;
    if (c.function == "sin") {
        f = [](double t) { return std::sin(2 * std::numbers::pi * t); };
        fp = [](double t) { return 2 * std::numbers::pi * std::cos(2 * std::numbers::pi * t); };
    } else if (c.function == "parabola") {
        f = [](double t) { return t * (1 - t); };
        fp = [](double t) { return 1 - 2 * t; };
    } else {
        throw InputError("unknown function '" + c.function + "' (sin | parabola)");
    }
    const auto errors = derivative_limit_check(f, fp, c.kmax);
    json_io::json rows = json_io::json::array();
    bool ok = true;
    for (std::size_t i = 0; i < errors.size(); ++i) {
        json_io::json r{{"k", errors[i].k}, {"max_error", errors[i].max_error}};
        if (i > 0 && errors[i - 1].max_error > 0) {
            const double ratio = errors[i].max_error / errors[i - 1].max_error;
            r["ratio"] = ratio;
            if (errors[i].k >= 4 && errors[i].k <= 12) ok = ok && ratio <= 0.75;
        }
        rows.push_back(r);
    }
    return {{{"function", c.function}, {"errors", rows}}, ok};
}

inline Outcome dispatch(const RunConfig& c) {
    if (c.command == "gamma") return run_gamma(c);
    if (c.command == "rep") return run_rep(c);
    if (c.command == "classify") return run_classify(c);
    if (c.command == "finite-type") return run_finite_type(c);
    if (c.command == "diffop") return run_diffop(c);
    if (c.command == "algebra") return run_algebra(c);
    if (c.command == "derivative-check") return run_derivative(c);
    throw InputError("unknown command '" + c.command + "'");
}

inline void emit(const RunConfig& c, const std::string& payload, std::ostream& out) {
    if (c.output_path.empty()) {
        out << payload;
        return;
    }
    std::ofstream file(c.output_path, std::ios::binary);
    if (!file) throw InputError("cannot write " + c.output_path);
    file << payload;
}

}  // namespace detail

inline int run(const RunConfig& config, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    if (config.format != "json" && config.format != "csv") {
        err << "error: format must be json or csv\n";
        return 2;
    }
    try {
        const detail::Outcome o = detail::dispatch(config);
        if (!o.text.empty()) {
            detail::emit(config, o.text, out);
        } else {
            json_io::json body = o.body;
            body["command"] = config.subcommand.empty() ? config.command : config.command + " " + config.subcommand;
            body["ok"] = o.ok;
            detail::emit(config, body.dump(2) + "\n", out);
        }
        return o.ok ? 0 : 1;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        out << json_io::json{{"ok", false}, {"error", e.what()}}.dump(2) << "\n";
        return 1;
    }
}

}  // namespace spinor_lab
