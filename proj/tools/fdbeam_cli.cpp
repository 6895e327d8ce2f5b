// fdbeam command line: trace, converge, buckle, reference, cases, export
#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"
#include "fdbeam/benchmarks.hpp"
#include "fdbeam/commands.hpp"
#include "fdbeam/errors.hpp"

using namespace fdbeam;

namespace {

constexpr int kValidation = 2;
constexpr int kSolver = 3;

// --out or stdout
struct Output {
    std::ofstream file;
    std::ostream* os = &std::cout;
    explicit Output(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw InputError("cannot write '" + path + "'");
        os = &file;
    }
};

ModelFile model_from(const std::string& path, const std::string& case_id, int segments) {
    if (!path.empty() && !case_id.empty()) throw InputError("use either --model or --case");
    if (!path.empty()) return load_model(path);
    if (case_id.empty()) throw InputError("--model or --case is required");
    ModelFile mf;
    mf.model = bench::build_case(case_id, segments > 0 ? segments : bench::case_info(case_id).default_segments);
    mf.solver = bench::case_options(case_id);
    return mf;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite-difference geometrically exact planar beams"};
    app.require_subcommand(1);

    std::string model, out, case_id, mode = "compression", table, shape;
    std::vector<int> segs;
    int segments = 0;
    double increment = 0.0;

    auto* trace = app.add_subcommand("trace", "run a model, write the per-step history CSV");
    trace->add_option("--model", model, "JSON model file");
    trace->add_option("--case", case_id, "built-in case instead of a model file");
    trace->add_option("--segments", segments, "segments per element for --case");
    trace->add_option("--out", out, "CSV path (default stdout)");
    trace->add_option("--shape", shape, "also write the deformed-shape CSV of the final state here");

    auto* conv = app.add_subcommand("converge", "grid convergence study of a built-in case");
    conv->add_option("--case", case_id, "case id")->required();
    conv->add_option("--segments", segs, "segment counts")->required()->delimiter(',');
    conv->add_option("--out", out, "CSV path (default stdout)");

    auto* buckle = app.add_subcommand("buckle", "critical strain by sign change of the monitored stiffness");
    buckle->add_option("--model", model, "JSON model file");
    buckle->add_option("--case", case_id, "built-in case instead of a model file");
    buckle->add_option("--segments", segments, "segments per element for --case");
    buckle->add_option("--mode", mode, "compression or tension")->check(CLI::IsMember({"compression", "tension"}));
    buckle->add_option("--increment", increment, "strain increment per step");
    buckle->add_option("--out", out, "report path (default stdout)");

    auto* refc = app.add_subcommand("reference", "closed-form tables and curves");
    refc->add_option("--table", table, "table id")->required();
    refc->add_option("--out", out, "CSV path (default stdout)");

    auto* list = app.add_subcommand("cases", "list built-in cases");

    auto* exp = app.add_subcommand("export", "write a built-in case as a model file");
    exp->add_option("--case", case_id, "case id")->required();
    exp->add_option("--segments", segments, "segments per element");
    exp->add_option("--out", out, "JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kValidation;
    }

    try {
        Output o(out);
        if (*trace) {
            const auto mf = model_from(model, case_id, segments);
            std::unique_ptr<std::ofstream> sh;
            if (!shape.empty()) {
                sh = std::make_unique<std::ofstream>(shape);
                if (!*sh) throw InputError("cannot write '" + shape + "'");
            }
            cli::cmd_trace(mf, *o.os, sh.get());
        } else if (*conv) {
            cli::cmd_converge(case_id, segs, *o.os);
        } else if (*buckle) {
            const auto mf = model_from(model, case_id, segments);
            const auto r = cli::cmd_buckle(mf, mode == "tension" ? cli::BuckleMode::tension : cli::BuckleMode::compression,
                                           increment > 0.0 ? std::optional<double>(increment) : std::nullopt);
            cli::print_buckle(r, *o.os);
        } else if (*refc) {
            cli::cmd_reference(table, *o.os);
        } else if (*list) {
            for (const auto& c : bench::cases())
                *o.os << c.id << "," << c.default_segments << "," << c.description << '\n';
        } else if (*exp) {
            ModelFile mf;
            mf.model = bench::build_case(case_id, segments > 0 ? segments : bench::case_info(case_id).default_segments);
            mf.solver = bench::case_options(case_id);
            *o.os << serialize_model(mf) << '\n';
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const ContractViolation& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const NonConvergenceError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolver;
    } catch (const SingularMatrixError& e) {
        std::cerr << "solver failure: " << e.what() << '\n';
        return kSolver;
    }
    return 0;
}
