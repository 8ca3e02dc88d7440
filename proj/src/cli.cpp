// SPDX-License-Identifier: MIT
#include "mfk/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mfk/csv.hpp"
#include "mfk/errors.hpp"
#include "mfk/harness.hpp"
#include "mfk/mic.hpp"
#include "mfk/model_io.hpp"

namespace mfk {

namespace {

namespace fs = std::filesystem;

std::vector<Strategy> parse_strategies(const std::string& name) {
    if (name == "both") return {Strategy::conventional, Strategy::hd};
    return {parse_strategy(name)};
}

Eigen::VectorXd parse_bounds(const std::string& text) {
    std::vector<double> values;
    std::string field;
    std::istringstream in(text);
    while (std::getline(in, field, ',')) values.push_back(std::stod(field));
    return Eigen::Map<const Eigen::VectorXd>(values.data(),
                                             static_cast<Eigen::Index>(values.size()));
}

Domain domain_from_flags(const std::string& lower, const std::string& upper,
                         const Eigen::MatrixXd& lf_points, const Eigen::MatrixXd& hf_points) {
    if (!lower.empty() != !upper.empty())
        throw InputError("--lower and --upper must be given together");
    if (!lower.empty()) {
        Domain d{parse_bounds(lower), parse_bounds(upper)};
        if (d.dimension() != lf_points.cols())
            throw InputError("--lower/--upper dimension does not match the data");
        return d;
    }
    // fall back to the joint data extent, padded where degenerate
    Eigen::VectorXd lo = lf_points.colwise().minCoeff().cwiseMin(hf_points.colwise().minCoeff());
    Eigen::VectorXd hi = lf_points.colwise().maxCoeff().cwiseMax(hf_points.colwise().maxCoeff());
    for (Eigen::Index j = 0; j < lo.size(); ++j) {
        if (!(lo[j] < hi[j])) {
            lo[j] -= 0.5;
            hi[j] += 0.5;
        }
    }
    return Domain{std::move(lo), std::move(hi)};
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
}

void emit_stage_lines(const BenchReport& report, std::ostream& os) {
    // one JSON line per tuning stage, prefixed with its row identity
    for (const auto& row : report.rows) {
        if (row.failed) continue;
        auto emit = [&](const char* level, const StageRecord& s) {
            std::ostringstream line;
            line << "{\"problem\":\"" << row.problem << "\",\"strategy\":\""
                 << to_string(row.strategy) << "\",\"repeat\":" << row.repeat << ",\"level\":\""
                 << level << "\",\"stage\":\"" << s.stage << "\",\"evals\":" << s.evals
                 << ",\"objective_before\":"
                 << (std::isfinite(s.objective_before) ? format_g17(s.objective_before) : "null")
                 << ",\"objective_after\":"
                 << (std::isfinite(s.objective_after) ? format_g17(s.objective_after) : "null")
                 << ",\"theta\":[";
            for (Eigen::Index i = 0; i < s.theta.size(); ++i) {
                if (i) line << ",";
                line << format_g17(s.theta[i]);
            }
            line << "]}";
            os << line.str() << "\n";
        };
        for (const auto& s : row.lf_stages) emit("lf", s);
        for (const auto& s : row.hf_stages) emit("hf", s);
    }
}

struct BenchArgs {
    std::string problem;
    std::string strategy = "both";
    int repeats = 10;
    std::uint64_t seed = 0;
    int n_lf = 0;
    int n_hf = 0;
    int validation = 0;
    std::vector<int> sizes;
    std::string out_dir = ".";
    bool no_time = false;
    bool parallel = false;
    bool verbose = false;
};

int run_bench(const BenchArgs& args) {
    const BiFidelityProblem problem = get_problem(args.problem);
    RunSpec spec;
    spec.problem = args.problem;
    spec.strategies = parse_strategies(args.strategy);
    spec.repeats = args.repeats;
    spec.seed = args.seed;
    spec.n_lf = args.n_lf;
    spec.n_hf = args.n_hf;
    spec.validation_count = args.validation;
    spec.record_time = !args.no_time;
    spec.parallel = args.parallel;

    fs::create_directories(args.out_dir);

    auto run_one = [&](const RunSpec& s, const std::string& suffix) {
        const BenchReport report = run_benchmark(s);
        write_text(fs::path(args.out_dir) / ("report" + suffix + ".csv"), report.to_csv());
        write_text(fs::path(args.out_dir) / ("report" + suffix + ".json"), report.to_json());
        if (args.verbose) emit_stage_lines(report, std::cout);
        if (report.failed_count > 0)
            std::cerr << "warning: " << report.failed_count << " run(s) failed tuning\n";
        for (Strategy st : s.strategies) {
            std::cout << s.problem << suffix << " " << to_string(st)
                      << ": mean r2=" << report.aggregate_mean(st, "r2")
                      << " rmse=" << report.aggregate_mean(st, "rmse")
                      << " time=" << report.aggregate_mean(st, "fit_time_s") << "s\n";
        }
    };

    if (args.sizes.empty()) {
        run_one(spec, "");
    } else {
        for (int mult : args.sizes) {
            if (mult < 1) throw InputError("--sizes entries must be positive");
            RunSpec sized = spec;
            sized.n_lf = mult * problem.d;
            sized.n_hf = std::max(mult * problem.d / 2, 2);
            run_one(sized, "_size" + std::to_string(mult));
        }
    }
    return 0;
}

int run_fit(const std::string& lf_csv, const std::string& hf_csv, const std::string& lower,
            const std::string& upper, const std::string& strategy, std::uint64_t seed,
            const std::string& out_dir) {
    const DatasetCsv lf_data = read_dataset_csv(lf_csv);
    const DatasetCsv hf_data = read_dataset_csv(hf_csv);
    if (lf_data.dimension() != hf_data.dimension())
        throw DataFormatError("LF and HF datasets disagree on dimension");
    const Domain domain = domain_from_flags(lower, upper, lf_data.points, hf_data.points);

    std::pair<int, int> dropped{lf_data.dropped_rows, hf_data.dropped_rows};
    const SampleSet lf = SampleSet::from_raw(lf_data.points, lf_data.responses, domain, Fidelity::low);
    const SampleSet hf =
        SampleSet::from_raw(hf_data.points, hf_data.responses, domain, Fidelity::high);
    if (dropped.first > 0 || dropped.second > 0)
        std::cerr << "dropped non-finite rows: lf=" << dropped.first << " hf=" << dropped.second
                  << "\n";

    TuningConfig cfg;
    cfg.strategy = parse_strategy(strategy);
    cfg.seed = seed;
    const TuneResult tuned = tune(lf, hf, cfg);

    fs::create_directories(out_dir);
    const fs::path model_path = fs::path(out_dir) / "model.json";
    save_model(tuned.model, model_path.string());
    std::cout << "model written to " << model_path.string() << " (beta_star="
              << tuned.model.beta_star() << ", evals=" << tuned.likelihood_evals() << ")\n";
    return 0;
}

Eigen::MatrixXd read_query_csv(const std::string& path, int d) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw DataFormatError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    std::string expected;
    for (int j = 1; j <= d; ++j) expected += (j > 1 ? ",x" : "x") + std::to_string(j);
    const bool with_y = line == expected + ",y";
    if (!with_y && line != expected)
        throw DataFormatError(path + ": header must be " + expected + " (optionally ,y)");

    std::vector<std::vector<double>> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::string field;
        std::istringstream fields(line);
        while (std::getline(fields, field, ',')) row.push_back(std::stod(field));
        if (static_cast<int>(row.size()) != d + (with_y ? 1 : 0))
            throw DataFormatError(path + ":" + std::to_string(line_no) + ": wrong field count");
        row.resize(static_cast<std::size_t>(d));
        rows.push_back(std::move(row));
    }
    Eigen::MatrixXd queries(static_cast<Eigen::Index>(rows.size()), d);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < d; ++j) queries(static_cast<Eigen::Index>(i), j) = rows[i][static_cast<std::size_t>(j)];
    return queries;
}

int run_predict(const std::string& model_path, const std::string& queries_path,
                const std::string& out_dir) {
    std::ifstream in(model_path, std::ios::binary);
    if (!in) throw InputError("cannot open " + model_path);
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};

    Eigen::MatrixXd queries;
    Eigen::VectorXd predictions;
    if (is_hk_json(text)) {
        const HkModel model = hk_from_json(text);
        queries = read_query_csv(queries_path, model.dimension());
        predictions = model.predict(queries);
    } else {
        const KrigingModel model = kriging_from_json(text);
        queries = read_query_csv(queries_path, model.dimension());
        predictions = model.predict(queries);
    }

    fs::create_directories(out_dir);
    const fs::path out_path = fs::path(out_dir) / "predictions.csv";
    write_dataset_csv(out_path.string(), queries, predictions);
    std::cout << "predictions written to " << out_path.string() << "\n";
    return 0;
}

int run_mic(const std::string& data_csv, const std::string& lower, const std::string& upper,
            const std::string& out_dir) {
    const DatasetCsv data = read_dataset_csv(data_csv);
    const Domain domain = domain_from_flags(lower, upper, data.points, data.points);
    const SampleSet samples =
        SampleSet::from_raw(data.points, data.responses, domain, Fidelity::low);
    const MicResult mic = mic_screen(samples);

    fs::create_directories(out_dir);
    const fs::path out_path = fs::path(out_dir) / "mic.csv";
    std::ostringstream out;
    out << "variable,omega\n";
    for (Eigen::Index j = 0; j < mic.omega.size(); ++j)
        out << "x" << (j + 1) << "," << format_g17(mic.omega[j]) << "\n";
    write_text(out_path, out.str());
    std::cout << "mic screen written to " << out_path.string() << "\n";
    return 0;
}

int run_list_problems() {
    std::cout << "id,d,domain\n";
    for (const auto& id : problem_ids()) {
        const BiFidelityProblem p = get_problem(id);
        std::cout << p.id << "," << p.d << ",";
        bool cube = true;
        for (int j = 1; j < p.d; ++j)
            cube = cube && p.domain.lower[j] == p.domain.lower[0] &&
                   p.domain.upper[j] == p.domain.upper[0];
        if (cube) {
            std::cout << "[" << p.domain.lower[0] << ";" << p.domain.upper[0] << "]^" << p.d;
        } else {
            for (int j = 0; j < p.d; ++j) {
                if (j) std::cout << " ";
                std::cout << "[" << p.domain.lower[j] << ";" << p.domain.upper[j] << "]";
            }
        }
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Multi-fidelity hierarchical Kriging benchmark tool"};
    app.require_subcommand(1);

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Run the benchmark protocol on a test problem");
    bench->add_option("--problem", bench_args.problem, "problem id (see list-problems)")
        ->required();
    bench->add_option("--strategy", bench_args.strategy, "conventional, hd, or both")
        ->check(CLI::IsMember({"conventional", "hd", "both"}));
    bench->add_option("--repeats", bench_args.repeats, "independent repeats")
        ->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_args.seed, "base RNG seed");
    bench->add_option("--n-lf", bench_args.n_lf, "low-fidelity sample count (default 10d)");
    bench->add_option("--n-hf", bench_args.n_hf, "high-fidelity sample count (default 5d)");
    bench->add_option("--validation", bench_args.validation,
                      "validation point count (default min(200d, 5000))");
    bench->add_option("--sizes", bench_args.sizes,
                      "sample-size sweep multipliers, e.g. --sizes 8 10 12 (LF:HF fixed 2:1)");
    bench->add_option("--out", bench_args.out_dir, "output directory");
    bench->add_flag("--no-time", bench_args.no_time,
                    "write fit_time_s as 0 for byte-reproducible reports");
    bench->add_flag("--parallel", bench_args.parallel,
                    "run repeats concurrently (do not combine with timing comparisons)");
    bench->add_flag("--verbose", bench_args.verbose, "emit per-stage tuning logs as JSON lines");

    std::string fit_lf, fit_hf, fit_lower, fit_upper, fit_strategy = "hd", fit_out = ".";
    std::uint64_t fit_seed = 0;
    auto* fit = app.add_subcommand("fit", "Fit a hierarchical model to CSV datasets");
    fit->add_option("--lf", fit_lf, "low-fidelity dataset CSV (x1..xd,y)")->required();
    fit->add_option("--hf", fit_hf, "high-fidelity dataset CSV (x1..xd,y)")->required();
    fit->add_option("--lower", fit_lower, "comma-separated domain lower bounds");
    fit->add_option("--upper", fit_upper, "comma-separated domain upper bounds");
    fit->add_option("--strategy", fit_strategy, "conventional or hd")
        ->check(CLI::IsMember({"conventional", "hd"}));
    fit->add_option("--seed", fit_seed, "RNG seed");
    fit->add_option("--out", fit_out, "output directory");

    std::string predict_model, predict_queries, predict_out = ".";
    auto* predict = app.add_subcommand("predict", "Evaluate a saved model on query points");
    predict->add_option("--model", predict_model, "model JSON file")->required();
    predict->add_option("--queries", predict_queries, "query CSV (x1..xd)")->required();
    predict->add_option("--out", predict_out, "output directory");

    std::string mic_data, mic_lower, mic_upper, mic_out = ".";
    auto* mic = app.add_subcommand("mic", "Screen variable importance of a dataset");
    mic->add_option("--data", mic_data, "dataset CSV (x1..xd,y)")->required();
    mic->add_option("--lower", mic_lower, "comma-separated domain lower bounds");
    mic->add_option("--upper", mic_upper, "comma-separated domain upper bounds");
    mic->add_option("--out", mic_out, "output directory");

    auto* list = app.add_subcommand("list-problems", "List the built-in test problems");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (bench->parsed()) return run_bench(bench_args);
        if (fit->parsed())
            return run_fit(fit_lf, fit_hf, fit_lower, fit_upper, fit_strategy, fit_seed, fit_out);
        if (predict->parsed()) return run_predict(predict_model, predict_queries, predict_out);
        if (mic->parsed()) return run_mic(mic_data, mic_lower, mic_upper, mic_out);
        if (list->parsed()) return run_list_problems();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace mfk
