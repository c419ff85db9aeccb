// exhom: exact homological algebra engine over rationals and finite fields.
//
//   exhom verify --suite decompose --field gf:5 --d 3 --seed 7 --count 200
//   exhom gen    --field q --d 3 --seed 0 --count 10 --out instances
//   exhom report --in report.json --format csv --out report.csv
//
// Exit codes: 0 all checks passed, 1 at least one failed, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "exhom/suites.hpp"

namespace {

void write_or_print(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw exhom::FieldError("cannot open output file: " + out);
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact homological algebra engine"};
    app.require_subcommand(1);

    exhom::SuiteConfig cfg;
    std::string format = "text";
    std::string out;
    std::string in;
    bool no_timestamp = false;

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", cfg.suite, "suite name")
        ->required()
        ->check(CLI::IsMember(exhom::suite_names()));
    verify->add_option("--field", cfg.field, "field spec: q, gf:p or gf:p^n");
    verify->add_option("--d", cfg.d, "number of derivation operators");
    verify->add_option("--dim-max", cfg.dim_max, "largest module dimension generated");
    verify->add_option("--seed", cfg.seed, "instance generator seed");
    verify->add_option("--count", cfg.count, "number of random instances");
    verify->add_option("--n-max", cfg.n_max, "combinatorics depth");
    verify->add_flag("--include-counterexample", cfg.include_counterexample,
                     "add the truncated-polynomial counterexample instance");
    verify->add_option("--format", format, "report format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    verify->add_option("--out", out, "write the report to a file instead of stdout");
    verify->add_flag("--no-timestamp", no_timestamp, "omit the timestamp field from JSON");

    auto* gen = app.add_subcommand("gen", "generate seeded instance files");
    gen->add_option("--field", cfg.field, "field spec: q, gf:p or gf:p^n");
    gen->add_option("--d", cfg.d, "number of derivation operators");
    gen->add_option("--dim-max", cfg.dim_max, "largest module dimension generated");
    gen->add_option("--seed", cfg.seed, "instance generator seed");
    gen->add_option("--count", cfg.count, "number of instances");
    gen->add_option("--out", out, "output directory (default: instances)");

    auto* report = app.add_subcommand("report", "re-emit a JSON report in another format");
    report->add_option("--in", in, "report JSON file")->required();
    report->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    report->add_option("--out", out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (verify->parsed()) {
            const exhom::Report rep = exhom::run_suite(cfg);
            write_or_print(exhom::emit_report(rep, format, !no_timestamp), out);
            return rep.ok() ? 0 : 1;
        }
        if (gen->parsed()) {
            const auto instances = exhom::generate_instances(cfg);
            const std::filesystem::path dir = out.empty() ? "instances" : out;
            std::filesystem::create_directories(dir);
            for (std::size_t i = 0; i < instances.size(); ++i) {
                char name[32];
                std::snprintf(name, sizeof name, "instance_%04zu.json", i);
                std::ofstream f(dir / name, std::ios::binary);
                if (!f) throw exhom::FieldError("cannot write instance file");
                f << instances[i].dump(2) << "\n";
            }
            std::cout << "wrote " << instances.size() << " instances to " << dir << "\n";
            return 0;
        }
        if (report->parsed()) {
            std::ifstream f(in, std::ios::binary);
            if (!f) throw exhom::FieldError("cannot open report file: " + in);
            const auto j = exhom::ojson::parse(f);
            exhom::Report rep;
            rep.suite = j.at("suite").get<std::string>();
            rep.config = j.at("config");
            rep.records = j.at("records");
            rep.passed = j.at("summary").at("passed").get<int>();
            rep.failed = j.at("summary").at("failed").get<int>();
            write_or_print(exhom::emit_report(rep, format, false), out);
            return 0;
        }
    } catch (const exhom::FieldError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
