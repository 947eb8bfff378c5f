#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "soliton/cartan.hpp"
#include "soliton/dressing.hpp"
#include "soliton/mkdv.hpp"
#include "soliton/reduction.hpp"
#include "soliton/toda.hpp"

namespace {

using namespace soliton;

constexpr int kExitBadArgs = 2;
constexpr int kExitUnsupported = 3;
constexpr int kExitInternal = 4;

int default_cutoff(int fallback)
{
    if (const char *env = std::getenv("SOLITON_CUTOFF")) {
        try {
            int c = std::stoi(env);
            if (c >= 1)
                return c;
        } catch (const std::exception &) {
        }
        std::cerr << "warning: ignoring malformed SOLITON_CUTOFF='" << env << "'\n";
    }
    return fallback;
}

std::string flow_lhs(const std::string &fmt, int n, const std::string &letter, int rank, int i)
{
    std::ostringstream os;
    if (fmt == "latex") {
        os << "\\partial_{" << n << "} " << letter;
        if (rank > 1)
            os << "_" << i;
        os << " = ";
    } else {
        os << "∂_" << n << " " << letter;
        if (rank > 1)
            os << "_" << i;
        os << " = ";
    }
    return os.str();
}

std::string render(const DiffPoly &p, const std::string &fmt, const std::string &letter)
{
    if (fmt == "latex")
        return p.to_latex(letter);
    if (fmt == "json")
        return p.to_json();
    return p.to_text(letter);
}

std::string read_poly_arg(const std::string &arg)
{
    if (!arg.empty() && arg[0] == '@') {
        std::ifstream in(arg.substr(1));
        if (!in)
            throw std::invalid_argument("cannot open file " + arg.substr(1));
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    }
    return arg;
}

void emit_derivation(const EvolutionaryDerivation &d, int n, const std::string &fmt,
                     const std::string &letter, const std::string &algebra)
{
    if (fmt == "json") {
        nlohmann::json j;
        j["algebra"] = algebra;
        j["flow"] = n;
        j["variable"] = letter;
        nlohmann::json images = nlohmann::json::array();
        for (const auto &im : d.images)
            images.push_back(nlohmann::json::parse(im.to_json()));
        j["images"] = images;
        std::cout << j.dump(2) << "\n";
        return;
    }
    for (int i = 1; i <= d.rank(); ++i)
        std::cout << flow_lhs(fmt, n, letter, d.rank(), i)
                  << render(d.images[i - 1], fmt, letter) << "\n";
}

int run_table(const std::string &name, const std::string &fmt)
{
    CartanData data = cartan_data(name);
    if (fmt == "json") {
        std::cout << cartan_to_json(data) << "\n";
        return 0;
    }
    std::cout << "type:      " << data.name() << "\n";
    std::cout << "h:         " << data.coxeter_number << "\n";
    std::cout << "exponents:";
    for (int e : data.exponents)
        std::cout << " " << e;
    std::cout << "\nlabels:   ";
    for (int a : data.labels)
        std::cout << " " << a;
    std::cout << "\n";
    return 0;
}

int run_verify(const Algebra &alg)
{
    int failures = 0;
    auto report = [&](const std::string &what, bool ok) {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << what << "\n";
        if (!ok)
            ++failures;
    };

    std::vector<int> flows;
    for (int m = 1; flows.size() < 2; ++m)
        if (m % alg.N != 0)
            flows.push_back(m);

    {
        int n_hi = flows.back();
        DressingOperator d = dressing_operator(alg, n_hi + 1);
        bool ok = true;
        for (int n : flows) {
            ZeroCurvatureSolution sol = solve_canonical(alg, n, 1);
            LoopElement conj = conjugated_generator(alg, d, n);
            int top = std::min(1, d.cutoff - n);
            for (int deg = -n; deg <= top; ++deg)
                ok = ok && conj.component(deg) == sol.components.at(deg);
        }
        report("dressing conjugation matches the recursion solution", ok);
    }
    {
        MkdvFlow f1 = mkdv_flow(alg, flows[0]);
        MkdvFlow f2 = mkdv_flow(alg, flows[1]);
        report("zero-curvature residual of the first two flows vanishes",
               zero_curvature_residual(alg, f1, f2).is_zero());
        report("flow derivations commute",
               commutator(f1.derivation, f2.derivation).is_zero());
    }
    report("screenings annihilate the KdV variables", verify_invariance(alg).empty());
    {
        bool ok = true;
        EvolutionaryDerivation kdv = kdv_flow(alg, flows[1]);
        EvolutionaryDerivation mk = mkdv_flow(alg, flows[1]).derivation;
        std::vector<DiffPoly> v = miura(alg);
        for (int i = 0; i < alg.rank(); ++i)
            ok = ok && substitute_jets(kdv.images[i], v) == mk.apply(v[i]);
        report("KdV flow intertwines with the mKdV flow through the Miura map", ok);
    }
    {
        bool ok = true;
        try {
            verify_hamiltonian(alg, flows[0]);
            verify_hamiltonian(alg, flows[1]);
            LocalFunctional i1 = find_integrals(alg, flows[0]).functional;
            LocalFunctional i2 = find_integrals(alg, flows[1]).functional;
            ok = poisson_bracket(alg, i1, i2).is_zero();
        } catch (const std::exception &e) {
            std::cerr << "  " << e.what() << "\n";
            ok = false;
        }
        report("Toda integrals are hamiltonians of the flows and commute", ok);
    }
    report("gamma vectors have full rank", gamma_vectors(alg).second == alg.rank());
    return failures == 0 ? 0 : kExitInternal;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"exact-arithmetic engine for generalized mKdV/KdV hierarchies"};
    app.require_subcommand(1);

    std::string algebra = "sl2";
    std::string format = "text";
    int flow_index = 0;
    int degree = 0;
    int cutoff = 0;
    bool show_lax = false;
    std::string left, right;

    auto add_common = [&](CLI::App *cmd, bool needs_flow, bool needs_degree) {
        cmd->add_option("--algebra", algebra, "algebra name, e.g. sl2, sl3, A2, E8");
        cmd->add_option("--format", format, "text | latex | json")
            ->check(CLI::IsMember({"text", "latex", "json"}));
        if (needs_flow)
            cmd->add_option("--flow", flow_index, "flow index n")->required();
        if (needs_degree)
            cmd->add_option("--degree", degree, "degree m")->required();
        cmd->add_option("--cutoff", cutoff, "principal-degree cutoff override");
    };

    auto *cmd_table = app.add_subcommand("table", "print a row of the affine data table");
    add_common(cmd_table, false, false);

    auto *cmd_flows = app.add_subcommand("flows", "print an mKdV flow");
    add_common(cmd_flows, true, false);
    cmd_flows->add_flag("--lax", show_lax, "also print the Lax matrix of the flow");

    auto *cmd_miura = app.add_subcommand("miura", "print the Miura transformation");
    add_common(cmd_miura, false, false);

    auto *cmd_kdv = app.add_subcommand("kdv", "print a KdV flow in the s-variables");
    add_common(cmd_kdv, true, false);

    auto *cmd_conserved = app.add_subcommand("conserved", "print a Toda conserved density");
    add_common(cmd_conserved, false, true);

    auto *cmd_poisson = app.add_subcommand("poisson", "poisson bracket of two functionals");
    add_common(cmd_poisson, false, false);
    cmd_poisson->add_option("--left", left, "DiffPoly JSON (or @file)")->required();
    cmd_poisson->add_option("--right", right, "DiffPoly JSON (or @file)")->required();

    auto *cmd_verify = app.add_subcommand("verify", "run the cross-module verification suite");
    add_common(cmd_verify, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitBadArgs;
    }

    try {
        if (cmd_table->parsed())
            return run_table(algebra, format);

        Algebra alg = make_algebra(cartan_data(algebra));

        if (cmd_flows->parsed()) {
            if (flow_index < 1 || flow_index % alg.N == 0) {
                std::cerr << "error: " << flow_index << " is not an exponent of "
                          << alg.cartan.name() << " modulo h = " << alg.N << "\n";
                return kExitBadArgs;
            }
            MkdvFlow flow = mkdv_flow(alg, flow_index, std::max(1, default_cutoff(cutoff)));
            emit_derivation(flow.derivation, flow_index, format, "u", algebra);
            if (show_lax) {
                if (format == "json")
                    std::cout << flow.minus_part.to_json() << "\n";
                else
                    std::cout << flow.minus_part.pretty();
            }
            return 0;
        }
        if (cmd_miura->parsed()) {
            std::vector<DiffPoly> v = miura(alg);
            if (format == "json") {
                nlohmann::json j;
                j["algebra"] = algebra;
                nlohmann::json images = nlohmann::json::array();
                for (const auto &p : v)
                    images.push_back(nlohmann::json::parse(p.to_json()));
                j["v"] = images;
                std::cout << j.dump(2) << "\n";
            } else {
                for (std::size_t i = 0; i < v.size(); ++i) {
                    std::string lhs = alg.rank() > 1 ? "v_" + std::to_string(i + 1) : "v";
                    std::cout << lhs << " = " << render(v[i], format, "u") << "\n";
                }
            }
            return 0;
        }
        if (cmd_kdv->parsed()) {
            if (flow_index < 1 || flow_index % alg.N == 0) {
                std::cerr << "error: " << flow_index << " is not an exponent of "
                          << alg.cartan.name() << " modulo h = " << alg.N << "\n";
                return kExitBadArgs;
            }
            EvolutionaryDerivation d = kdv_flow(alg, flow_index);
            emit_derivation(d, flow_index, format, "s", algebra);
            return 0;
        }
        if (cmd_conserved->parsed()) {
            ConservedDensity cd = find_integrals(alg, degree);
            Rational c = verify_hamiltonian(alg, degree);
            if (format == "json") {
                nlohmann::json j;
                j["algebra"] = algebra;
                j["degree"] = degree;
                j["density"] = nlohmann::json::parse(cd.density.to_json());
                j["xi_scale"] = rational_to_string(c);
                std::cout << j.dump(2) << "\n";
            } else {
                std::string lhs = "H_" + std::to_string(degree);
                std::cout << lhs << " = " << render(cd.density, format, "u") << "\n";
                std::cout << "xi_{" << lhs << "} = " << rational_to_string(c) << " ∂_"
                          << degree << "\n";
            }
            return 0;
        }
        if (cmd_poisson->parsed()) {
            DiffPoly pl = DiffPoly::from_json(read_poly_arg(left), alg.rank());
            DiffPoly pr = DiffPoly::from_json(read_poly_arg(right), alg.rank());
            LocalFunctional result =
                poisson_bracket(alg, functional0(alg, pl), functional0(alg, pr));
            if (format == "json")
                std::cout << result.representative.to_json() << "\n";
            else
                std::cout << render(result.representative, format, "u") << "\n";
            return 0;
        }
        if (cmd_verify->parsed())
            return run_verify(alg);
    } catch (const UnsupportedAlgebra &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUnsupported;
    } catch (const UnknownAlgebra &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    } catch (const FlowIndexError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadArgs;
    } catch (const std::logic_error &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitBadArgs;
}
