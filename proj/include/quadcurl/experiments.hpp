/**
 * @file experiments.hpp
 * @brief Convergence studies, energy-difference studies, element verification, and
 *        conformity checks, with table and CSV output.
 */
#pragma once

#include "quadcurl/expression.hpp"
#include "quadcurl/solver.hpp"

#include <limits>
#include <ostream>
#include <string>
#include <vector>

namespace quadcurl {

struct ExperimentConfig {
    std::string experiment;
    std::vector<int> sizes;
    int quad_degree = kDefaultQuadratureDegree;
    double tol = 1e-10;
    std::string precision = "solve-float";  // or verify-exact
    std::string out;
    bool rebuild_reference = false;
    BoundaryMode bc = BoundaryMode::Trace;
    std::ostream* log = nullptr;  // progress messages, optional
};

[[nodiscard]] std::vector<int> default_sizes(const std::string& experiment);

/// Rejects non-positive sizes and odd example3 sizes with UsageError.
void validate(const ExperimentConfig& config);

inline constexpr double kNoValue = std::numeric_limits<double>::quiet_NaN();

/// log(e_coarse / e_fine) / log(h_coarse / h_fine).
[[nodiscard]] double observed_rate(double h_coarse, double e_coarse, double h_fine, double e_fine);

struct ErrorRow {
    double h = 0.0;
    NormTriple err;
    double rate_l2 = kNoValue;
    double rate_curl = kNoValue;
    double rate_curl2 = kNoValue;
    long unknowns = 0;
    double seconds = 0.0;
};

struct EnergyRow {
    double h = 0.0;
    NormTriple norms;
    double energy_err = kNoValue;
    double rate = kNoValue;
    long unknowns = 0;
    double seconds = 0.0;
};

/// Example 1's exact solution as a symbolic field.
[[nodiscard]] std::shared_ptr<sym::SymbolicField> example1_solution();

/// Galerkin errors for Example 1 on cube_mesh(N), N in config.sizes.
[[nodiscard]] std::vector<ErrorRow> run_example1(const ExperimentConfig& config);

/// Interpolation errors of Example 1's u on cube_mesh(N).
[[nodiscard]] std::vector<ErrorRow> run_interp_study(const ExperimentConfig& config);

struct EnergyStudy {
    std::vector<EnergyRow> rows;
    std::vector<DiscreteField> solutions;
    std::vector<std::unique_ptr<Discretization>> discretizations;
    bool monotone = true;        // |||u_h||| nondecreasing along the sequence
    std::string negative_note;   // set when a radicand was negative
};

/// f = (1, 1, 1) on the cube (example2) or the L-shape (example3).
[[nodiscard]] EnergyStudy run_energy_study(const ExperimentConfig& config, bool lshape);

void write_error_csv(const std::vector<ErrorRow>& rows, std::ostream& out);
void write_energy_csv(const std::vector<EnergyRow>& rows, std::ostream& out);
void print_error_table(const std::vector<ErrorRow>& rows, std::ostream& out);
void print_energy_table(const std::vector<EnergyRow>& rows, std::ostream& out);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationOptions {
    int random_tets = 10;
    bool rebuild_exact = true;   // rerun the exact rational construction
    bool perturb_e_row = false;  // negative control: corrupt one row of E
};

/// Unisolvence, DOF counts, space decomposition, derivative reconstruction identities,
/// transform oracle tests, and two-element conformity.
[[nodiscard]] std::vector<CheckResult> run_verification(const VerificationOptions& options = {});

struct ConformityReport {
    double max_tangential_jump = 0.0;  // relative
    double max_curl_jump = 0.0;        // relative
    std::size_t faces = 0;
    std::size_t functions = 0;
};

/// Jumps of u x nu and curl u across interior faces for every global basis function,
/// relative to the function's max norm on the two elements.
[[nodiscard]] ConformityReport conformity_jumps(const Discretization& disc);

/// Jumps of u x nu and curl u of one discrete field, relative to its max norm.
[[nodiscard]] ConformityReport field_jumps(const DiscreteField& fh);

/// Max of |u x n| and |curl u| at boundary face quadrature points, relative to the field's max norm.
struct TraceReport {
    double tangential = 0.0;
    double curl = 0.0;
};
[[nodiscard]] TraceReport boundary_traces(const DiscreteField& fh);

/// Interpolates the coarse piecewise field into the fine space and returns the max pointwise
/// difference at fine quadrature points, relative to the coarse field's max norm.
[[nodiscard]] double nestedness_defect(const DiscreteField& coarse, const Discretization& fine);

[[nodiscard]] std::vector<CheckResult> run_conformity(const ExperimentConfig& config);

void print_checks(const std::vector<CheckResult>& checks, std::ostream& out);

}  // namespace quadcurl
