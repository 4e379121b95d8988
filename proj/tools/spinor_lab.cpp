#include <CLI11.hpp>

#include "spinor_lab/cli.hpp"

namespace {

void add_common(CLI::App* app, spinor_lab::RunConfig& c, bool gamma_required) {
    auto* g = app->add_option("--gamma", c.gamma_path, "gamma JSON file {\"pairs\": [[i,j],...], \"rows\": R}");
    if (gamma_required) g->required();
    app->add_option("--output,-o", c.output_path, "write the result to a file instead of stdout");
    app->add_option("--format", c.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
    spinor_lab::RunConfig c;
    CLI::App app{"Exact dyadic spinor representations, difference operators and their algebras"};
    app.require_subcommand(1);

    auto* gamma = app.add_subcommand("gamma", "validate or classify a gamma file");
    gamma->require_subcommand(1);
    for (const char* name : {"validate", "classify"}) {
        auto* s = gamma->add_subcommand(name);
        add_common(s, c, true);
    }

    auto* rep = app.add_subcommand("rep", "build and verify a truncated representation");
    rep->require_subcommand(1);
    for (const char* name : {"verify", "build", "matrix"}) {
        auto* s = rep->add_subcommand(name);
        add_common(s, c, true);
        s->add_option("--level,-n", c.level, "truncation level")->required();
        s->add_option("--generators,-K", c.generators, "number of generator pairs (default: all)");
        if (std::string(name) == "matrix")
            s->add_option("--op", c.op, "J<k> | J'<k> | a<k> | a*<k> | D | D' | S | Q | T")->required();
    }

    auto* cls = app.add_subcommand("classify", "real / quaternionic structure of a dyadic representation");
    add_common(cls, c, true);
    cls->add_option("--level,-n", c.level, "truncation level")->required();
    cls->add_option("--generators,-K", c.generators, "number of generator pairs");
    cls->add_flag("--exact", c.exact, "also solve for the antilinear commutant (level <= 5)");

    auto* finite = app.add_subcommand("finite-type", "type of the finite Clifford representation on m bits");
    finite->add_option("--m", c.m, "number of bits")->required();
    finite->add_option("--output,-o", c.output_path);

    auto* diffop = app.add_subcommand("diffop", "dyadic operators D and D'");
    diffop->require_subcommand(1);
    auto* spectrum = diffop->add_subcommand("spectrum", "integer spectrum of D on W_{N_k}");
    add_common(spectrum, c, true);
    spectrum->add_option("--k", c.k, "filtration index k")->required();
    spectrum->add_option("--level,-n", c.level, "representation level (default: smallest sufficient)");
    spectrum->add_flag("--recursive", c.recursive, "also run the coordinate recursion and compare");
    auto* ids = diffop->add_subcommand("identities", "filtration, T-conjugation and recovery identities");
    add_common(ids, c, true);
    ids->add_option("--level,-n", c.level, "truncation level")->required();
    ids->add_option("--generators,-K", c.generators);

    auto* algebra = app.add_subcommand("algebra", "normed left-division algebras");
    algebra->require_subcommand(1);
    auto* mul = algebra->add_subcommand("mul", "product of two elements");
    add_common(mul, c, true);
    mul->add_option("--a", c.a, "element JSON or file")->required();
    mul->add_option("--b", c.b, "element JSON or file")->required();
    mul->add_option("--level,-n", c.level, "level of the Clifford module (default 6)");
    mul->add_flag("--oracle", c.oracle, "use the Clifford-module product");
    auto* check = algebra->add_subcommand("check", "algebra laws on seeded random elements");
    add_common(check, c, false);
    check->add_option("--trials", c.trials);
    check->add_option("--seed", c.seed);
    check->add_option("--level,-n", c.level);
    auto* calib = algebra->add_subcommand("calibrate", "match the dyadic structure constants to the Clifford product");
    add_common(calib, c, true);
    calib->add_option("--level,-n", c.level);

    auto* deriv = app.add_subcommand("derivative-check", "2^k d_k f against f'");
    deriv->add_option("--function", c.function, "sin | parabola")->check(CLI::IsMember({"sin", "parabola"}));
    deriv->add_option("--kmax", c.kmax);
    deriv->add_option("--output,-o", c.output_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    for (auto* top : app.get_subcommands()) {
        c.command = top->get_name();
        for (auto* sub : top->get_subcommands()) c.subcommand = sub->get_name();
    }
    return spinor_lab::run(c);
}
