#include "kuboando/specfmt.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <utility>
#include <vector>

#include "kuboando/errors.hpp"

namespace kuboando {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

double read_finite(std::istream& in, const char* what) {
    double x = 0.0;
    if (!(in >> x) || !std::isfinite(x)) throw ParseError(std::string(what) + ": expected a finite number");
    return x;
}

void require_end(std::istream& in, const char* what) {
    std::string extra;
    if (in >> extra) throw ParseError(std::string(what) + ": unexpected trailing token '" + extra + "'");
}

// Splits "w1 spec1 + w2 spec2" at the first " + "; the left operand can
// therefore never itself be a sum.
std::pair<std::string, std::string> split_sum(const std::string& rest, const char* what) {
    const auto pos = rest.find(" + ");
    if (pos == std::string::npos) throw ParseError(std::string(what) + ": sum needs two operands joined by ' + '");
    return {trim(rest.substr(0, pos)), trim(rest.substr(pos + 3))};
}

} // namespace

PsdMatrix parse_matrix(std::istream& in) {
    std::string tag;
    if (!(in >> tag) || tag != "dim") throw ParseError("matrix: expected 'dim n' header");
    long n = 0;
    if (!(in >> n) || n < 1 || n > 64) throw ParseError("matrix: dimension must be in 1..64");
    Eigen::MatrixXd m(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            if (!(in >> m(i, j)) || !std::isfinite(m(i, j)))
                throw ParseError("matrix: expected " + std::to_string(n * n) + " finite entries");
    require_end(in, "matrix");
    return PsdMatrix(m);
}

PsdMatrix parse_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open matrix file: " + path);
    return parse_matrix(in);
}

std::string print_matrix(const HermitianMatrix& h) {
    const Eigen::MatrixXd m = h.real_entries(1e-8);
    std::ostringstream os;
    os << "dim " << h.dim() << "\n" << std::setprecision(12);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << ' ';
            os << m(i, j);
        }
        os << "\n";
    }
    return os.str();
}

std::string print_matrix(const PsdMatrix& a) { return print_matrix(a.matrix()); }

OMFunction parse_function_spec(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw ParseError("empty function spec");
    std::istringstream in(t);
    std::string head;
    in >> head;
    if (head == "affine") {
        const double a = read_finite(in, "affine");
        const double b = read_finite(in, "affine");
        require_end(in, "affine");
        if (a < 0 || b < 0) throw ParseError("affine: coefficients must be >= 0");
        return OMFunction::affine(a, b);
    }
    if (head == "power") {
        const double alpha = read_finite(in, "power");
        require_end(in, "power");
        if (alpha < 0 || alpha > 1) throw ParseError("power: exponent must lie in [0, 1]");
        return OMFunction::power(alpha);
    }
    if (head == "logmean") {
        require_end(in, "logmean");
        return OMFunction::log_mean();
    }
    if (head == "moebius") {
        const double lambda = read_finite(in, "moebius");
        require_end(in, "moebius");
        if (lambda <= 0) throw ParseError("moebius: parameter must be > 0");
        return OMFunction::moebius(lambda);
    }
    if (head == "sum") {
        double w1 = 0.0;
        if (!(in >> w1) || !std::isfinite(w1) || w1 < 0) throw ParseError("sum: expected a weight >= 0");
        std::string rest;
        std::getline(in, rest);
        const auto [left, tail] = split_sum(rest, "function sum");
        std::istringstream tin(tail);
        double w2 = 0.0;
        if (!(tin >> w2) || !std::isfinite(w2) || w2 < 0) throw ParseError("sum: expected a weight >= 0");
        std::string spec2;
        std::getline(tin, spec2);
        return omf_add(omf_scale(w1, parse_function_spec(left)), omf_scale(w2, parse_function_spec(spec2)));
    }
    throw ParseError("unknown function spec: " + t);
}

namespace {

std::string leaf_text(const OMFunction::Node& n) {
    switch (n.kind) {
        case OMFunction::Kind::affine: return "affine " + fmt(n.a) + " " + fmt(n.b);
        case OMFunction::Kind::power: return "power " + fmt(n.alpha);
        case OMFunction::Kind::log_mean: return "logmean";
        case OMFunction::Kind::moebius: return "moebius " + fmt(n.lambda);
        default: throw DomainError("leaf_text: not a leaf");
    }
}

// Flattens f into weighted grammar leaves; measure-backed nodes are reduced
// through their atoms and catalog densities.
void collect_leaves(const OMFunction& f, double w, std::vector<std::pair<double, OMFunction>>& out) {
    const OMFunction::Node& n = f.node();
    switch (n.kind) {
        case OMFunction::Kind::sum:
            for (const auto& [wi, fi] : n.terms) collect_leaves(fi, w * wi, out);
            return;
        case OMFunction::Kind::measure: {
            const RepMeasure& mu = n.mu;
            if (mu.atom_zero() > 0 || mu.atom_inf() > 0)
                out.emplace_back(w, OMFunction::affine(mu.atom_zero(), mu.atom_inf()));
            for (const MeasureAtom& a : mu.interior_atoms())
                out.emplace_back(w * a.mass, OMFunction::moebius(a.location));
            for (const DensityComponent& d : mu.density()) {
                if (d.name == "geometric")
                    out.emplace_back(w * d.scale, OMFunction::power(0.5));
                else if (d.name == "logmean-numeric")
                    out.emplace_back(w * d.scale, OMFunction::log_mean());
                else
                    throw UnsupportedInversion("density '" + d.name + "' has no function-spec form");
            }
            return;
        }
        default:
            out.emplace_back(w, f);
            return;
    }
}

std::string emit_leaves(const std::vector<std::pair<double, OMFunction>>& leaves, std::size_t from) {
    const auto& [w, f] = leaves[from];
    if (from + 1 == leaves.size()) {
        if (w == 1.0) return leaf_text(f.node());
        if (f.node().kind == OMFunction::Kind::affine)
            return "affine " + fmt(w * f.node().a) + " " + fmt(w * f.node().b);
        return "sum " + fmt(w) + " " + leaf_text(f.node()) + " + 0 affine 0 0";
    }
    const std::string rest = from + 2 == leaves.size()
        ? fmt(leaves[from + 1].first) + " " + leaf_text(leaves[from + 1].second.node())
        : "1 " + emit_leaves(leaves, from + 1);
    return "sum " + fmt(w) + " " + leaf_text(f.node()) + " + " + rest;
}

} // namespace

std::string print_function_spec(const OMFunction& f) {
    std::vector<std::pair<double, OMFunction>> leaves;
    collect_leaves(f, 1.0, leaves);
    std::erase_if(leaves, [](const auto& p) { return p.first == 0.0; });
    if (leaves.empty()) return "affine 0 0";
    // A lone scaled sum-collapsed leaf still needs the two-term grammar; see
    // emit_leaves. Simple leaves with weight one print bare.
    for (auto& [w, leaf] : leaves) {
        if (leaf.node().kind == OMFunction::Kind::affine && w != 1.0) {
            leaf = OMFunction::affine(w * leaf.node().a, w * leaf.node().b);
            w = 1.0;
        }
    }
    return emit_leaves(leaves, 0);
}

RepMeasure parse_measure_spec(const std::string& text, QuadSpec q) {
    RepMeasure acc = RepMeasure::zero();
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        std::istringstream in(t);
        std::string head;
        in >> head;
        if (head == "atom0") {
            const double m = read_finite(in, "atom0");
            require_end(in, "atom0");
            if (m < 0) throw ParseError("atom0: mass must be >= 0");
            acc = measure_add(acc, RepMeasure::at_zero(m));
        } else if (head == "atomInf") {
            const double m = read_finite(in, "atomInf");
            require_end(in, "atomInf");
            if (m < 0) throw ParseError("atomInf: mass must be >= 0");
            acc = measure_add(acc, RepMeasure::at_inf(m));
        } else if (head == "atom") {
            const double lambda = read_finite(in, "atom");
            const double m = read_finite(in, "atom");
            require_end(in, "atom");
            if (lambda <= 0) throw ParseError("atom: location must be > 0");
            if (m < 0) throw ParseError("atom: mass must be >= 0");
            acc = measure_add(acc, RepMeasure::dirac(lambda, m));
        } else if (head == "density") {
            std::string name;
            if (!(in >> name)) throw ParseError("density: expected a name");
            double scale = 1.0;
            if (in >> scale) {
                if (!std::isfinite(scale) || scale < 0) throw ParseError("density: scale must be >= 0");
                require_end(in, "density");
            }
            acc = measure_add(acc, RepMeasure::with_density(density_by_name(name, scale), q));
        } else {
            throw ParseError("unknown measure directive: " + t);
        }
    }
    return acc.with_quad(q);
}

std::string print_measure_spec(const RepMeasure& mu) {
    std::ostringstream os;
    if (mu.atom_zero() > 0) os << "atom0 " << fmt(mu.atom_zero()) << "\n";
    if (mu.atom_inf() > 0) os << "atomInf " << fmt(mu.atom_inf()) << "\n";
    for (const MeasureAtom& a : mu.interior_atoms()) os << "atom " << fmt(a.location) << " " << fmt(a.mass) << "\n";
    for (const DensityComponent& d : mu.density()) {
        os << "density " << d.name;
        if (d.scale != 1.0) os << " " << fmt(d.scale);
        os << "\n";
    }
    return os.str();
}

Connection parse_connection_spec(const std::string& text, QuadSpec q) {
    const std::string t = trim(text);
    if (t.empty()) throw ParseError("empty connection spec");
    std::istringstream in(t);
    std::string head;
    in >> head;
    if (head == "mean") {
        std::string name;
        if (!(in >> name)) throw ParseError("mean: expected a name");
        require_end(in, "mean");
        if (name == "arithmetic") return Connection::closed(ClosedForm::arithmetic);
        if (name == "geometric") return Connection::closed(ClosedForm::geometric);
        if (name == "harmonic") return Connection::closed(ClosedForm::harmonic);
        if (name == "logarithmic") return Connection::closed(ClosedForm::logarithmic);
        throw ParseError("unknown mean: " + name);
    }
    if (head == "parallel") {
        require_end(in, "parallel");
        return Connection::closed(ClosedForm::parallel_sum);
    }
    if (head == "function") {
        std::string rest;
        std::getline(in, rest);
        return Connection::from_function(parse_function_spec(rest), t);
    }
    if (head == "measure") {
        std::string rest;
        std::getline(in, rest);
        const std::string path = trim(rest);
        if (path.empty()) throw ParseError("measure: expected a file path");
        std::ifstream file(path);
        if (!file) throw ParseError("cannot open measure file: " + path);
        std::ostringstream buf;
        buf << file.rdbuf();
        return Connection::from_measure(parse_measure_spec(buf.str(), q), t);
    }
    if (head == "scale") {
        double k = 0.0;
        if (!(in >> k) || !std::isfinite(k)) throw ParseError("scale: expected a finite factor");
        if (k < 0) throw ParseError("scale: factor must be >= 0");
        std::string rest;
        std::getline(in, rest);
        return conn_scale(k, parse_connection_spec(rest, q)).with_label(t);
    }
    if (head == "sum") {
        std::string rest;
        std::getline(in, rest);
        const auto [left, right] = split_sum(rest, "connection sum");
        return conn_add(parse_connection_spec(left, q), parse_connection_spec(right, q)).with_label(t);
    }
    throw ParseError("unknown connection spec: " + t);
}

} // namespace kuboando
