#include "macnf/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "macnf/errors.hpp"
#include "macnf/macaulay.hpp"
#include "macnf/parse.hpp"
#include "macnf/rootfind.hpp"

namespace macnf::cli {

namespace {

std::string sci(double x) {
    if (std::isinf(x)) {
        return "inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

std::string join_degrees(const std::vector<unsigned>& degrees, char sep) {
    std::string out;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (i > 0) {
            out += sep;
        }
        out += std::to_string(degrees[i]);
    }
    return out;
}

// Maps library exceptions onto exit codes; anything else propagates.
template <typename F>
int guarded(std::ostream& err, F&& body) {
    try {
        return body();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kParse;
    } catch (const InvalidBasisError& e) {
        err << "invalid basis: " << e.what() << '\n';
        return kUsage;
    } catch (const InvalidArgument& e) {
        err << "invalid input: " << e.what() << '\n';
        return kParse;
    } catch (const GenericityError& e) {
        err << "genericity violation: " << e.what() << '\n';
        return kGenericity;
    } catch (const ExtractionError& e) {
        err << "extraction failure: " << e.what() << '\n';
        return kExtraction;
    } catch (const ConvergenceError& e) {
        err << "extraction failure: " << e.what() << '\n';
        return kExtraction;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kParse;
    }
}

class OutputTarget {
public:
    OutputTarget(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw Error("cannot open '" + path + "' for writing");
            }
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

}  // namespace

const char* basis_name(Basis basis) { return basis == Basis::Qr ? "qr" : "block"; }

BasisStrategy make_strategy(Basis basis, const std::vector<unsigned>& degrees) {
    return basis == Basis::Qr ? BasisStrategy::qr_pivot()
                              : BasisStrategy::fixed(block_basis(degrees));
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const PolySystem system = read_system_file(args.system_file);
        if (!args.dump_macaulay.empty()) {
            OutputTarget dump(args.dump_macaulay, out);
            write_macaulay_csv(dump.get(), build_macaulay(system));
        }
        const QuotientSystem qs =
            compute_quotient_system(system, make_strategy(args.basis, system.degrees()));
        SolveOptions options;
        options.seed = args.seed;
        SolutionSet sols = extract_solutions(system, qs, options);
        if (args.refine) {
            sols = refine_solutions(system, sols, 1);
        }
        const VerificationReport report = verify_solutions(system, sols, args.tol);

        err << "t = " << qs.t << ", N = " << qs.dimension() << ", basis = "
            << basis_name(args.basis) << '\n'
            << "inverted block condition = " << sci(qs.inverted_block_condition) << '\n'
            << "eigenvector condition = " << sci(sols.extraction_condition)
            << ", retries = " << sols.retries << '\n'
            << "max residual = " << sci(sols.max_residual) << '\n'
            << report.passed << "/" << report.total << " solutions with residual <= "
            << sci(args.tol) << (report.complete ? " (complete)" : " (incomplete)") << '\n';
        if (qs.dropped_rows_suspicious) {
            err << "warning: dropped syzygy rows reach " << sci(qs.dropped_row_max) << '\n';
        }

        OutputTarget target(args.output, out);
        write_solutions(target.get(), sols);
        if (!args.csv.empty()) {
            OutputTarget csv(args.csv, out);
            write_solutions_csv(csv.get(), sols);
        }
        return static_cast<int>(kOk);
    });
}

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        std::vector<unsigned> degrees = args.degrees;
        if (degrees.size() == 1 && args.n > 1) {
            degrees.assign(args.n, degrees.front());
        }
        const PolySystem system = random_dense_system(args.n, degrees, args.seed);
        OutputTarget target(args.output, out);
        target.get() << "# random dense system, degrees " << join_degrees(degrees, ',')
                     << ", seed " << args.seed << '\n'
                     << format_system(system);
        if (!target.get()) {
            throw Error("write failed");
        }
        return static_cast<int>(kOk);
    });
}

int cmd_eval(const EvalArgs& args, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const PolySystem system = read_system_file(args.system_file);
        const Polynomial f = parse_polynomial(args.expression, system.nvars());
        const QuotientSystem qs =
            compute_quotient_system(system, make_strategy(args.basis, system.degrees()));
        std::vector<Complex> values = evaluate_on_variety(f, qs);
        std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
            return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
        });
        char buf[96];
        for (const Complex& v : values) {
            std::snprintf(buf, sizeof buf, "%.17g%+.17g*i", v.real(), v.imag());
            out << buf << '\n';
        }
        for (std::size_t i = 0; i < qs.nvars; ++i) {
            for (std::size_t j = i + 1; j < qs.nvars; ++j) {
                err << "commutator(x" << i + 1 << ",x" << j + 1
                    << ") = " << sci(commutator_metric(qs, i, j)) << '\n';
            }
        }
        return static_cast<int>(kOk);
    });
}

std::vector<BenchRecord> run_bench(const BenchArgs& args) {
    if (args.seeds.empty()) {
        throw InvalidArgument("bench: empty seed list");
    }
    if (args.n == 0 || args.min_degree == 0 || args.min_degree > args.max_degree) {
        throw InvalidArgument("bench: invalid size or degree range");
    }
    if (args.strategies.empty()) {
        throw InvalidArgument("bench: no basis strategy selected");
    }
    std::vector<BenchRecord> records;
    for (unsigned d = args.min_degree; d <= args.max_degree; ++d) {
        const std::vector<unsigned> degrees(args.n, d);
        for (Basis basis : args.strategies) {
            std::vector<BenchRecord> group;
            for (std::uint64_t seed : args.seeds) {
                BenchRecord rec;
                rec.n = args.n;
                rec.degrees = degrees;
                rec.seed = seed;
                rec.basis = basis;
                rec.condition = std::numeric_limits<double>::infinity();
                const PolySystem system = random_dense_system(args.n, degrees, seed);
                const auto start = std::chrono::steady_clock::now();
                try {
                    const QuotientSystem qs =
                        compute_quotient_system(system, make_strategy(basis, degrees));
                    rec.condition = qs.inverted_block_condition;
                    SolveOptions options;
                    options.seed = seed;
                    SolutionSet sols = extract_solutions(system, qs, options);
                    rec.wall_time_seconds = std::chrono::duration<double>(
                                                std::chrono::steady_clock::now() - start)
                                                .count();
                    if (args.refine) {
                        sols = refine_solutions(system, sols, 1);
                    }
                    rec.max_residual = sols.max_residual;
                    rec.n_solutions = static_cast<double>(sols.size());
                } catch (const Error& e) {
                    rec.wall_time_seconds = std::chrono::duration<double>(
                                                std::chrono::steady_clock::now() - start)
                                                .count();
                    rec.error = e.what();
                }
                group.push_back(std::move(rec));
            }
            BenchRecord mean;
            mean.n = args.n;
            mean.degrees = degrees;
            mean.basis = basis;
            double cond = 0.0;
            double res = 0.0;
            double sols = 0.0;
            double time = 0.0;
            bool all_residuals = true;
            for (const auto& r : group) {
                cond += r.condition;
                sols += r.n_solutions;
                time += r.wall_time_seconds;
                if (r.max_residual) {
                    res += *r.max_residual;
                } else {
                    all_residuals = false;
                }
            }
            const double count = static_cast<double>(group.size());
            mean.condition = cond / count;
            if (all_residuals) {
                mean.max_residual = res / count;
            }
            mean.n_solutions = sols / count;
            mean.wall_time_seconds = time / count;
            records.insert(records.end(), group.begin(), group.end());
            records.push_back(std::move(mean));
        }
    }
    return records;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << "n,degrees,seed,basis,condition,max_residual,n_solutions,wall_time_seconds\n";
    char buf[64];
    for (const auto& r : records) {
        out << r.n << ',' << join_degrees(r.degrees, ';') << ','
            << (r.seed ? std::to_string(*r.seed) : std::string("mean")) << ','
            << basis_name(r.basis) << ',';
        if (std::isinf(r.condition)) {
            out << "inf";
        } else {
            std::snprintf(buf, sizeof buf, "%.6e", r.condition);
            out << buf;
        }
        out << ',';
        if (r.max_residual) {
            std::snprintf(buf, sizeof buf, "%.6e", *r.max_residual);
            out << buf;
        }
        std::snprintf(buf, sizeof buf, ",%g,%.6f\n", r.n_solutions, r.wall_time_seconds);
        out << buf;
    }
}

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
    if (args.seeds.empty()) {
        err << "usage error: bench needs at least one seed\n";
        return kUsage;
    }
    if (args.strategies.empty() || args.min_degree == 0 || args.min_degree > args.max_degree ||
        args.n == 0) {
        err << "usage error: invalid degree range, size or strategy list\n";
        return kUsage;
    }
    return guarded(err, [&] {
        const auto records = run_bench(args);
        OutputTarget target(args.csv, out);
        write_bench_csv(target.get(), records);
        for (const auto& r : records) {
            if (!r.error.empty()) {
                err << "degree " << join_degrees(r.degrees, ',') << " seed " << *r.seed << " "
                    << basis_name(r.basis) << ": " << r.error << '\n';
            }
        }
        return static_cast<int>(kOk);
    });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Solve generic dense polynomial systems with Macaulay-matrix normal forms"};
    app.require_subcommand(1);

    const std::map<std::string, Basis> basis_map{{"qr", Basis::Qr}, {"block", Basis::Block}};

    SolveArgs solve;
    auto* solve_cmd = app.add_subcommand("solve", "Solve the system in a file");
    solve_cmd->add_option("system", solve.system_file, "System file")->required();
    solve_cmd->add_option("--basis", solve.basis, "Basis choice: qr (pivoted QR) or block")
        ->transform(CLI::CheckedTransformer(basis_map, CLI::ignore_case));
    solve_cmd->add_option("--seed", solve.seed, "Seed for the random eigenvalue combination");
    solve_cmd->add_option("--tol", solve.tol, "Residual threshold for the summary");
    solve_cmd->add_flag("--refine", solve.refine, "Apply one Newton step to every solution");
    solve_cmd->add_option("-o,--output", solve.output, "Solution file (default stdout)");
    solve_cmd->add_option("--csv", solve.csv, "Also write solutions as CSV");
    solve_cmd->add_option("--dump-macaulay", solve.dump_macaulay,
                          "Write the Macaulay matrix as labeled CSV");

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Write a random dense system with N(0,1) coefficients");
    gen_cmd->add_option("-n,--nvars", gen.n, "Number of variables")->required();
    gen_cmd->add_option("-d,--degrees", gen.degrees, "Degrees (one value is repeated n times)")
        ->required()
        ->delimiter(',');
    gen_cmd->add_option("--seed", gen.seed, "Random seed");
    gen_cmd->add_option("-o,--output", gen.output, "Output file (default stdout)");

    BenchArgs bench;
    std::size_t seed_count = 5;
    std::vector<std::uint64_t> seed_list;
    std::vector<Basis> bench_bases;
    auto* bench_cmd = app.add_subcommand(
        "bench",
        "Sweep random systems of equal degrees and report conditioning, residuals and timing.\n"
        "Wall time covers the normal-form computation and root extraction only.");
    bench_cmd->add_option("-n,--nvars", bench.n, "Number of variables");
    bench_cmd->add_option("--dmin", bench.min_degree, "Smallest degree");
    bench_cmd->add_option("--dmax", bench.max_degree, "Largest degree");
    auto* count_opt = bench_cmd->add_option("--seeds", seed_count, "Use seeds 0..count-1");
    auto* list_opt =
        bench_cmd->add_option("--seed-list", seed_list, "Explicit seeds")->delimiter(',');
    count_opt->excludes(list_opt);
    bench_cmd->add_option("--basis", bench_bases, "Strategies (default qr,block)")
        ->delimiter(',')
        ->transform(CLI::CheckedTransformer(basis_map, CLI::ignore_case));
    bench_cmd->add_option("--tol", bench.tol, "Residual threshold");
    bench_cmd->add_flag("--refine", bench.refine, "Apply one Newton step before measuring residuals");
    bench_cmd->add_option("--csv", bench.csv, "CSV output (default stdout)");

    EvalArgs eval;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a polynomial on the solution set");
    eval_cmd->add_option("system", eval.system_file, "System file")->required();
    eval_cmd->add_option("expression", eval.expression, "Polynomial in x1..xn")->required();
    eval_cmd->add_option("--basis", eval.basis, "Basis choice: qr or block")
        ->transform(CLI::CheckedTransformer(basis_map, CLI::ignore_case));
    eval_cmd->add_option("--seed", eval.seed, "Unused; accepted for symmetry with solve");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? static_cast<int>(kOk) : static_cast<int>(kUsage);
    }

    if (*solve_cmd) {
        return cmd_solve(solve, out, err);
    }
    if (*gen_cmd) {
        return cmd_gen(gen, out, err);
    }
    if (*bench_cmd) {
        if (*list_opt) {
            bench.seeds = seed_list;
        } else {
            bench.seeds.resize(seed_count);
            std::iota(bench.seeds.begin(), bench.seeds.end(), std::uint64_t{0});
        }
        if (!bench_bases.empty()) {
            bench.strategies = bench_bases;
        }
        return cmd_bench(bench, out, err);
    }
    return cmd_eval(eval, out, err);
}

}  // namespace macnf::cli
