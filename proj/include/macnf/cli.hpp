#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "macnf/normalform.hpp"

namespace macnf::cli {

enum ExitCode : int {
    kOk = 0,
    kInternal = 1,
    kUsage = 2,
    kParse = 3,
    kGenericity = 4,
    kExtraction = 5,
};

enum class Basis { Qr, Block };

struct SolveArgs {
    std::string system_file;
    Basis basis = Basis::Qr;
    std::uint64_t seed = 0;
    double tol = 1e-8;
    bool refine = false;
    std::string output;        // empty: stdout
    std::string csv;           // structured output
    std::string dump_macaulay; // Macaulay matrix CSV
};

struct GenArgs {
    std::size_t n = 2;
    std::vector<unsigned> degrees;
    std::uint64_t seed = 0;
    std::string output;  // empty: stdout
};

struct BenchArgs {
    std::size_t n = 2;
    unsigned min_degree = 1;
    unsigned max_degree = 10;
    std::vector<std::uint64_t> seeds;
    std::vector<Basis> strategies{Basis::Qr, Basis::Block};
    double tol = 1e-8;
    bool refine = false;
    std::string csv;  // empty: stdout
};

struct EvalArgs {
    std::string system_file;
    std::string expression;
    Basis basis = Basis::Qr;
    std::uint64_t seed = 0;
};

/// One benchmark case (seed set) or per-degree mean (seed unset).
struct BenchRecord {
    std::size_t n = 0;
    std::vector<unsigned> degrees;
    std::optional<std::uint64_t> seed;
    Basis basis = Basis::Qr;
    double condition = 0.0;
    std::optional<double> max_residual;
    double n_solutions = 0.0;
    double wall_time_seconds = 0.0;
    std::string error;
};

BasisStrategy make_strategy(Basis basis, const std::vector<unsigned>& degrees);
const char* basis_name(Basis basis);

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);
int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err);
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

/// Runs the benchmark sweep without writing anything. Rows are sorted by
/// (degree, strategy, seed) with one mean row closing each (degree, strategy)
/// group.
std::vector<BenchRecord> run_bench(const BenchArgs& args);
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

/// Full command-line entry point (subcommands solve, gen, bench, eval).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace macnf::cli
