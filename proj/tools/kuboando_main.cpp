#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kuboando/specfmt.hpp"
#include "kuboando/verify.hpp"

namespace {

using namespace kuboando;

// Exit codes: 0 success, 1 failed verification, 2 parse error,
// 3 dimension mismatch, 4 numeric failure, 5 unsupported inversion.
constexpr int exit_parse = 2;
constexpr int exit_dim = 3;
constexpr int exit_numeric = 4;
constexpr int exit_inversion = 5;

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw ParseError("cannot open output file: " + out_path);
    out << text;
}

QuadSpec quad_from(int nodes) {
    if (nodes < 8) throw ParseError("--nodes must be >= 8");
    return QuadSpec{nodes};
}

std::string one_line(const std::string& multi) {
    std::istringstream in(multi);
    std::string line;
    std::string out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (!out.empty()) out += "; ";
        out += line;
    }
    return out;
}

int cmd_eval(const std::string& spec, const std::string& a_path, const std::string& b_path,
             const std::string& out_path, int nodes) {
    const Connection s = parse_connection_spec(spec, quad_from(nodes));
    const PsdMatrix a = parse_matrix_file(a_path);
    const PsdMatrix b = parse_matrix_file(b_path);
    emit(out_path, print_matrix(s.evaluate(a, b)));
    return 0;
}

int cmd_norm(const std::string& spec, const std::string& out_path, int nodes) {
    const Connection s = parse_connection_spec(spec, quad_from(nodes));
    std::ostringstream os;
    os << std::fixed << std::setprecision(12) << connection_norm(s).value << "\n";
    emit(out_path, os.str());
    return 0;
}

int cmd_convert(const std::string& spec, const std::string& target, const std::string& out_path, int nodes) {
    const Connection s = parse_connection_spec(spec, quad_from(nodes));
    if (target == "function") {
        emit(out_path, print_function_spec(representing_function(s)) + "\n");
        return 0;
    }
    if (target == "measure") {
        emit(out_path, print_measure_spec(representing_measure(s)));
        return 0;
    }
    throw ParseError("convert target must be 'function' or 'measure'");
}

TrialConfig config_from(std::uint64_t seed, int trials, const std::string& dims,
                        const std::vector<std::string>& tol_args) {
    TrialConfig cfg;
    cfg.seed = seed;
    cfg.trials = trials;
    const auto colon = dims.find(':');
    if (colon == std::string::npos) throw ParseError("--dims expects lo:hi");
    try {
        cfg.dim_lo = std::stoi(dims.substr(0, colon));
        cfg.dim_hi = std::stoi(dims.substr(colon + 1));
    } catch (const std::exception&) {
        throw ParseError("--dims expects integers lo:hi");
    }
    for (const std::string& t : tol_args) {
        const auto eq = t.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError("--tol expects NAME=VALUE");
        try {
            cfg.tol[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
        } catch (const std::exception&) {
            throw ParseError("--tol expects a numeric VALUE");
        }
    }
    try {
        cfg.validate();
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
    return cfg;
}

int cmd_verify(const TrialConfig& cfg, const std::string& format, const std::string& out_path) {
    const std::vector<VerifyReport> reports = run_all(cfg);
    emit(out_path, format == "csv" ? render_csv(reports) : render_text(reports));
    for (const VerifyReport& r : reports)
        if (!r.pass) return 1;
    return 0;
}

int cmd_catalog(const std::string& out_path) {
    static constexpr std::array<std::pair<const char*, ClosedForm>, 5> forms{{
        {"arithmetic", ClosedForm::arithmetic},
        {"geometric", ClosedForm::geometric},
        {"harmonic", ClosedForm::harmonic},
        {"logarithmic", ClosedForm::logarithmic},
        {"parallel", ClosedForm::parallel_sum},
    }};
    std::ostringstream os;
    for (const auto& [name, form] : forms) {
        const Connection s = Connection::closed(form);
        os << name << "\n"
           << "  f:  " << print_function_spec(representing_function(s)) << "\n"
           << "  mu: " << one_line(print_measure_spec(representing_measure(s))) << "\n";
    }
    emit(out_path, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator connections on positive semidefinite matrices"};
    app.require_subcommand(1);

    std::string spec;
    std::string a_path;
    std::string b_path;
    std::string out_path;
    std::string format = "text";
    std::string target;
    std::string dims = "1:6";
    int nodes = 200;
    int trials = 200;
    std::uint64_t seed = TrialConfig{}.seed;
    std::vector<std::string> tol_args;

    CLI::App* eval = app.add_subcommand("eval", "evaluate A sigma B for a connection spec");
    eval->add_option("--spec", spec, "connection spec")->required();
    eval->add_option("--A", a_path, "matrix file for A")->required();
    eval->add_option("--B", b_path, "matrix file for B")->required();
    eval->add_option("--out", out_path, "output file (default stdout)");
    eval->add_option("--nodes", nodes, "quadrature nodes for measure routes");

    CLI::App* norm = app.add_subcommand("norm", "print the connection norm");
    norm->add_option("--spec", spec, "connection spec")->required();
    norm->add_option("--out", out_path, "output file (default stdout)");
    norm->add_option("--nodes", nodes, "quadrature nodes for measure routes");

    CLI::App* convert = app.add_subcommand("convert", "print the representing function or measure");
    convert->add_option("--spec", spec, "connection spec")->required();
    convert->add_option("target", target, "function | measure")->required();
    convert->add_option("--out", out_path, "output file (default stdout)");
    convert->add_option("--nodes", nodes, "quadrature nodes for measure routes");

    CLI::App* verify = app.add_subcommand("verify", "run the property-check suite");
    verify->add_option("--out", out_path, "report file (default stdout)");
    verify->add_option("--format", format, "text | csv")->check(CLI::IsMember({"text", "csv"}));
    verify->add_option("--seed", seed, "trial seed");
    verify->add_option("--trials", trials, "trials per property");
    verify->add_option("--dims", dims, "dimension range lo:hi");
    verify->add_option("--tol", tol_args, "tolerance override NAME=VALUE (repeatable)");

    CLI::App* catalog = app.add_subcommand("catalog", "list the built-in connections");
    catalog->add_option("--out", out_path, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        std::ostringstream silent;
        app.exit(e, silent, silent);
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse;
    }

    try {
        if (eval->parsed()) return cmd_eval(spec, a_path, b_path, out_path, nodes);
        if (norm->parsed()) return cmd_norm(spec, out_path, nodes);
        if (convert->parsed()) return cmd_convert(spec, target, out_path, nodes);
        if (verify->parsed()) return cmd_verify(config_from(seed, trials, dims, tol_args), format, out_path);
        if (catalog->parsed()) return cmd_catalog(out_path);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_parse;
    } catch (const DimensionMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_dim;
    } catch (const UnsupportedInversion& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_inversion;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numeric;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numeric;
    }
    return 0;
}
