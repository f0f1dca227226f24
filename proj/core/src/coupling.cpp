#include "phonoline/coupling.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace phonoline {

namespace {

// Strips comments and yields whitespace-separated tokens.
std::vector<std::string> tokenize(std::istream& in) {
    std::vector<std::string> tokens;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) tokens.push_back(tok);
    }
    return tokens;
}

double parse_double(const std::string& tok, const char* who) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
        throw ConfigError(std::string(who) + ": cannot parse number '" + tok + "'");
    }
    if (used != tok.size())
        throw ConfigError(std::string(who) + ": trailing characters in number '" + tok + "'");
    return v;
}

std::ifstream open_or_throw(const std::string& path, const char* who) {
    std::ifstream in(path);
    if (!in) throw IoError(std::string(who) + ": cannot open '" + path + "'");
    return in;
}

}  // namespace

ForceField read_forces(const std::string& path) {
    std::ifstream in = open_or_throw(path, "read_forces");
    ForceField f;
    for (const std::string& tok : tokenize(in)) f.values.push_back(parse_double(tok, "read_forces"));
    if (f.values.empty() || f.values.size() % 3 != 0)
        throw ConfigError("read_forces: expected 3N components, got " +
                          std::to_string(f.values.size()));
    f.n_atoms = int(f.values.size() / 3);
    return f;
}

ModeBasis read_modes(const std::string& path) {
    std::ifstream in = open_or_throw(path, "read_modes");
    // Logical lines with comments stripped; each mode is a header line
    // (`frequency` or `frequency:label`) followed by one row of components.
    std::vector<std::vector<std::string>> lines;
    std::string raw;
    while (std::getline(in, raw)) {
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> toks;
        std::string tok;
        while (ls >> tok) toks.push_back(tok);
        if (!toks.empty()) lines.push_back(std::move(toks));
    }
    if (lines.empty()) throw ConfigError("read_modes: empty file");
    if (lines.size() % 2 != 0)
        throw ConfigError("read_modes: expected header/row line pairs, got " +
                          std::to_string(lines.size()) + " lines");

    ModeBasis basis;
    std::vector<std::vector<double>> rows;
    for (std::size_t b = 0; b < lines.size(); b += 2) {
        const std::vector<std::string>& head = lines[b];
        if (head.size() != 1)
            throw ConfigError("read_modes: header line must hold a single token, got " +
                              std::to_string(head.size()));
        const auto colon = head[0].find(':');
        basis.frequencies.push_back(
            parse_double(colon == std::string::npos ? head[0] : head[0].substr(0, colon),
                         "read_modes"));
        basis.labels.push_back(colon == std::string::npos ? std::string() : head[0].substr(colon + 1));
        std::vector<double> row;
        for (const std::string& t : lines[b + 1]) row.push_back(parse_double(t, "read_modes"));
        rows.push_back(std::move(row));
    }

    const std::size_t len = rows.front().size();
    if (len == 0) throw ConfigError("read_modes: mode 0 has no components");
    basis.modes.resize(Eigen::Index(rows.size()), Eigen::Index(len));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != len)
            throw ConfigError("read_modes: mode " + std::to_string(r) + " has " +
                              std::to_string(rows[r].size()) + " components, expected " +
                              std::to_string(len));
        for (std::size_t c = 0; c < len; ++c) basis.modes(Eigen::Index(r), Eigen::Index(c)) = rows[r][c];
        const double norm = basis.modes.row(Eigen::Index(r)).norm();
        if (std::abs(norm - 1.0) > 1e-8)
            throw ConfigError("read_modes: mode " + std::to_string(r) + " has norm " +
                              std::to_string(norm));
    }
    return basis;
}

std::vector<double> project_forces(const ForceField& forces, const ModeBasis& basis) {
    if (Eigen::Index(forces.values.size()) != basis.modes.cols())
        throw ConfigError("project_forces: " + std::to_string(forces.values.size()) +
                          " force components vs " + std::to_string(basis.modes.cols()) +
                          " mode components");
    Eigen::Map<const Eigen::VectorXd> f(forces.values.data(), Eigen::Index(forces.values.size()));
    std::vector<double> g(std::size_t(basis.modes.rows()));
    for (Eigen::Index k = 0; k < basis.modes.rows(); ++k) {
        if (std::abs(basis.modes.row(k).norm() - 1.0) > 1e-8)
            throw ConfigError("project_forces: mode " + std::to_string(k) + " is not normalized");
        g[std::size_t(k)] = basis.modes.row(k).dot(f);
    }
    return g;
}

double scale_to_energy(double g_meV_A, double lattice_A) {
    if (!(lattice_A > 0.0)) throw ConfigError("scale_to_energy: lattice parameter must be > 0");
    return g_meV_A / lattice_A;
}

}  // namespace phonoline
