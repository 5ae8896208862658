#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace gfde::cli {

enum ExitCode : int {
    kSuccess = 0,
    kHypothesisFailure = 2,
    kDiagnosticFailure = 3,
    kInputError = 4,
};

struct SolveFlags {
    std::optional<double> tol;
    std::optional<std::size_t> max_iter;
    std::string out_csv;
    bool force = false;
    bool keep_iterates = false;
    bool require_ek = false;
    bool timing = false;
};

struct EkFlags {
    std::vector<double> A{0.1, 0.5, 0.9};
    std::size_t p_max = 100;
    std::size_t density = 512;  // boundary points per piece; interior gets twice as many
};

struct GevreyFlags {
    std::size_t n_max = 12;
    bool force = false;
    bool selftest = false;
};

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_solve(const std::string& path, const SolveFlags& flags, std::ostream& out, std::ostream& err);
int cmd_ek(const std::string& path, const EkFlags& flags, std::ostream& out, std::ostream& err);
int cmd_gevrey(const std::string& path, const GevreyFlags& flags, std::ostream& out, std::ostream& err);
int cmd_reproduce(const std::string& which, std::ostream& out, std::ostream& err);
int cmd_example(const std::string& name, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace gfde::cli
