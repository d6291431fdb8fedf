#include <CLI11.hpp>

#include <conescore/cli.hpp>

int main(int argc, char** argv) {
    namespace cli = conescore::cli;
    cli::Options opt;

    CLI::App app{"Polyhedral cone ranks and minimal linear score design"};
    app.add_option("command", opt.command, "decompose | rank | design | verify")
        ->required()
        ->check(CLI::IsMember({"decompose", "rank", "design", "verify"}));
    app.add_option("--in", opt.in, "Problem file (JSON, or CSV samples with --csv)")->required();
    app.add_option("--out", opt.out, "Result file; stdout when omitted or '-'");
    app.add_option("--kind", opt.kind, "Rank kind for 'rank'")->check(CLI::IsMember({"csr", "cgr", "cr", "all"}));
    app.add_option("--objective", opt.objective, "improvement | optimality | both");
    app.add_option("--restriction", opt.restriction, "res-cs | res-lm | res-l");
    app.add_option("--tol-rank", opt.tol_rank, "Rank tolerance");
    app.add_option("--tol-feas", opt.tol_feas, "LP feasibility tolerance");
    app.add_option("--tol-cone", opt.tol_cone, "Cone membership tolerance");
    app.add_option("--max-lineality-dim", opt.max_lineality_dim, "Cap on the lineality dimension for subset search");
    app.add_flag("--csv", opt.csv, "Read metric samples as CSV, one sample per line");
    app.add_flag("--reproducible", opt.reproducible, "Omit the timestamp from the result");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::exit_input;
    }
    return cli::run(opt);
}
