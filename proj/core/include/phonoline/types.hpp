// Shared linear-algebra aliases, the subsystem layout, and error types.
#pragma once

#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace phonoline {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Invalid user input: bad parameters, malformed configs, unknown keys. Exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure: integrator underflow, validation failure, truncation overflow. Exit code 3.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem failure: unreadable inputs, unwritable outputs. Exit code 4.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Ordered subsystem dimensions. Convention: spins first (dim 2 each), phonon mode last.
struct Layout {
    std::vector<Index> dims;

    Layout() = default;
    explicit Layout(std::vector<Index> d) : dims(std::move(d)) {}

    Index total() const {
        return std::accumulate(dims.begin(), dims.end(), Index{1},
                               [](Index a, Index b) { return a * b; });
    }
    std::size_t sites() const { return dims.size(); }

    bool operator==(const Layout&) const = default;

    void validate() const {
        if (dims.empty()) throw ConfigError("layout: at least one subsystem required");
        for (Index d : dims)
            if (d < 2) throw ConfigError("layout: subsystem dimension must be >= 2");
    }
};

// Square complex matrix tagged with the tensor factors it acts on.
struct Operator {
    Layout layout;
    Matrix mat;
};

// Same carrier as Operator; validity (Hermitian, unit trace, positive) is checked
// by validate_density_matrix at construction and sampling sites, not per access.
struct DensityMatrix {
    Layout layout;
    Matrix mat;
};

}  // namespace phonoline
