#include <rainbow/cli.hpp>
#include <rainbow/io.hpp>
#include <rainbow/reductions.hpp>
#include <rainbow/verify.hpp>

#include <CLI11.hpp>

#include <ostream>

namespace rainbow::cli {

using nlohmann::json;

bool RoundtripReport::ok() const
{
    if (inconclusive || !agreement || !failure.empty())
        return false;
    if (extracted_satisfies && !*extracted_satisfies)
        return false;
    return p2_verified.value_or(true) && p1_verified.value_or(true);
}

std::size_t p1_vertex_count(std::size_t vertices, std::size_t pairs, int k)
{
    std::size_t block = static_cast<std::size_t>(k + 1) * static_cast<std::size_t>(k + 1);
    std::size_t non_pairs = vertices * (vertices - 1) / 2 - pairs;
    return vertices + block * (vertices + non_pairs);
}

RoundtripReport run_roundtrip(const CnfFormula &phi, int k, const RoundtripOptions &options)
{
    RoundtripReport report;
    report.k = k;
    report.truth_table = solve_by_truth_table(phi);
    SatReduction sat = reduce_sat_to_p3(phi, k);
    const ReducedInstance &p3 = sat.target;
    report.extension = decide_extension(p3.graph, p3.pairs, p3.partial, k, options.search);

    const bool satisfiable = report.truth_table.has_value();
    switch (report.extension.status) {
    case SearchStatus::Exhausted:
        report.inconclusive = true;
        break;
    case SearchStatus::Found:
        report.agreement = satisfiable;
        report.extracted = coloring_to_assignment(sat, *report.extension.coloring);
        report.extracted_satisfies = evaluate(phi, *report.extracted);
        break;
    case SearchStatus::Impossible:
        report.agreement = !satisfiable;
        break;
    }
    if (!satisfiable)
        return report;

    TotalColoring p3_coloring = report.extension.coloring ? *report.extension.coloring
                                                          : assignment_to_coloring(sat, *report.truth_table);
    try {
        P3ToP2Reduction p2 = reduce_p3_to_p2(p3);
        TotalColoring p2_coloring = lift_coloring_p3_to_p2(p2, p3_coloring);
        report.p2_verified = true;
        report.p1_vertices = p1_vertex_count(static_cast<std::size_t>(p2.target.graph.num_vertices()),
                                             p2.target.pairs.size(), k);
        if (report.p1_vertices <= options.p1_vertex_limit) {
            P2ToP1Reduction p1 = reduce_p2_to_p1(p2.target);
            VerifyOptions verify;
            verify.workers = options.search.workers;
            lift_coloring_p2_to_p1(p1, p2_coloring, verify);
            report.p1_verified = true;
        }
    }
    catch (const ReductionFalsified &e) {
        if (!report.p2_verified)
            report.p2_verified = false;
        else
            report.p1_verified = false;
        report.failure = e.what();
    }
    return report;
}

json to_json(const RoundtripReport &report)
{
    json out = {{"k", report.k},
                {"satisfiable", report.truth_table.has_value()},
                {"extension", to_string(report.extension.status)},
                {"nodes", report.extension.nodes},
                {"inconclusive", report.inconclusive},
                {"agreement", report.agreement}};
    if (report.truth_table)
        out["truth_table_assignment"] = io::to_json(*report.truth_table);
    if (report.extracted) {
        out["extracted_assignment"] = io::to_json(*report.extracted);
        out["extracted_satisfies"] = *report.extracted_satisfies;
    }
    auto stage = [](const std::optional<bool> &v) -> json {
        if (!v)
            return "skipped";
        return *v ? "verified" : "falsified";
    };
    out["p2_lift"] = stage(report.p2_verified);
    out["p1_lift"] = stage(report.p1_verified);
    if (report.p1_vertices > 0)
        out["p1_vertices"] = report.p1_vertices;
    if (!report.failure.empty())
        out["failure"] = report.failure;
    return out;
}

namespace {

struct Request {
    std::string graph;
    std::string coloring;
    std::string pairs;
    std::string input;
    std::string assignment;
    std::string out;
    std::string mode = "total";
    std::string param = "trc";
    std::string from;
    std::string to;
    std::string direction;
    int k = 1;
    std::optional<int> t;
    std::optional<long long> budget_ms;
    std::optional<unsigned long long> budget_nodes;
    int workers = 1;
    bool timing = false;
    bool exact = false;
};

int stage_rank(const std::string &name)
{
    if (name == "sat")
        return 0;
    return 1 + static_cast<int>(parse_stage(name));
}

std::string stage_name(int rank)
{
    return rank == 0 ? "sat" : to_string(static_cast<Stage>(rank - 1));
}

SearchOptions search_options(const Request &req)
{
    SearchOptions opts;
    if (req.budget_ms)
        opts.budget.max_time = std::chrono::milliseconds(*req.budget_ms);
    if (req.budget_nodes)
        opts.budget.max_nodes = *req.budget_nodes;
    opts.workers = req.workers;
    return opts;
}

int status_code(SearchStatus status)
{
    switch (status) {
    case SearchStatus::Found:
        return ExitPass;
    case SearchStatus::Impossible:
        return ExitFail;
    case SearchStatus::Exhausted:
        break;
    }
    return ExitExhausted;
}

class Runner {
public:
    Runner(const Request &req, std::ostream &out) : req_(req), out_(out) {}

    int verify();
    int solve();
    int reduce();
    int witness();
    int roundtrip();
    int bounds();

private:
    void emit(const json &j);
    CnfFormula load_cnf() const { return parse_dimacs(io::read_file(req_.input)); }
    ReducedInstance load_instance() const { return io::instance_from_json(io::read_json_file(req_.input)); }
    TotalColoring load_coloring(const Graph &g) const
    {
        if (req_.coloring.empty())
            throw InvalidInput("--coloring is required");
        return io::coloring_from_json(g, io::read_json_file(req_.coloring));
    }
    void require_input() const
    {
        if (req_.input.empty())
            throw InvalidInput("--input is required");
    }
    int lift();
    int restrict_witness();
    int extract();

    const Request &req_;
    std::ostream &out_;
};

void Runner::emit(const json &j)
{
    std::string text = j.dump(2) + "\n";
    if (req_.out.empty())
        out_ << text;
    else
        io::write_file(req_.out, text);
}

int Runner::verify()
{
    Graph g = io::graph_from_json(io::read_json_file(req_.graph));
    TotalColoring c = load_coloring(g);
    ColoringMode mode = parse_mode(req_.mode);
    VerifyOptions opts;
    opts.workers = req_.workers;
    std::optional<PairList> pairs;
    if (!req_.pairs.empty())
        pairs = io::pairs_from_json(g, io::read_json_file(req_.pairs), false);
    ConnectivityVerdict verdict = pairs ? check_rainbow_k_connected(g, c, req_.k, mode, *pairs, opts)
                                        : check_rainbow_k_connected(g, c, req_.k, mode, opts);
    json out = {{"verdict", verdict.connected ? "pass" : "fail"},
                {"k", req_.k},
                {"mode", to_string(mode)},
                {"pairs_checked", pairs ? pairs->size() : all_pairs(g).size()}};
    if (verdict.first_failure)
        out["first_failure"] = io::pairs_to_json(g, {*verdict.first_failure})[0];
    emit(out);
    return verdict.connected ? ExitPass : ExitFail;
}

int Runner::solve()
{
    SearchOptions search = search_options(req_);
    if (!req_.input.empty()) {
        ReducedInstance inst = load_instance();
        const Graph &g = inst.graph;
        SearchOutcome outcome;
        switch (inst.stage) {
        case Stage::P3:
            outcome = decide_extension(g, inst.pairs, inst.partial, inst.k, search);
            break;
        case Stage::P2:
            outcome = decide_subset_trc3(g, inst.pairs, inst.k, search);
            break;
        case Stage::P1:
            outcome = decide_colorable(g, ColoringProblem{inst.k, 3, ColoringMode::Total, std::nullopt, {}, {}}, search);
            break;
        }
        json out = io::to_json(g, outcome, req_.timing);
        out["stage"] = to_string(inst.stage);
        out["k"] = inst.k;
        emit(out);
        return status_code(outcome.status);
    }

    if (req_.graph.empty())
        throw InvalidInput("solve needs --graph or --input");
    Graph g = io::graph_from_json(io::read_json_file(req_.graph));
    if (req_.t) {
        ColoringProblem problem;
        problem.k = req_.k;
        problem.palette = *req_.t;
        problem.mode = parse_mode(req_.mode);
        if (!req_.pairs.empty())
            problem.pairs = io::pairs_from_json(g, io::read_json_file(req_.pairs), false);
        SearchOutcome outcome = decide_colorable(g, problem, search);
        json out = io::to_json(g, outcome, req_.timing);
        out["k"] = req_.k;
        out["t"] = *req_.t;
        out["mode"] = to_string(problem.mode);
        emit(out);
        return status_code(outcome.status);
    }

    Parameter param = req_.param == "rc" ? Parameter::Rc : req_.param == "rvc" ? Parameter::Rvc : Parameter::Trc;
    SolveOptions opts;
    opts.search = search;
    ParameterResult result = connection_number(g, req_.k, param, opts);
    json out = io::to_json(g, result);
    out["bounds"] = io::to_json(bounds_report(g, req_.k, false));
    if (req_.timing)
        out["elapsed_ms"] = result.elapsed_ms;
    emit(out);
    return result.exact ? ExitPass : ExitExhausted;
}

int Runner::reduce()
{
    int from = stage_rank(req_.from);
    int to = stage_rank(req_.to);
    if (from >= to || to == 0)
        throw InvalidInput("reduction must go forward: --from " + req_.from + " --to " + req_.to);

    ReducedInstance current;
    if (from == 0) {
        require_input();
        current = reduce_sat_to_p3(load_cnf(), req_.k).target;
    }
    else if (!req_.input.empty()) {
        current = load_instance();
        if (current.stage != static_cast<Stage>(from - 1))
            throw InvalidInput("bundle is a " + to_string(current.stage) + " instance, not " + req_.from);
    }
    else if (from == 2 && !req_.graph.empty() && !req_.pairs.empty()) {
        Graph g = io::graph_from_json(io::read_json_file(req_.graph));
        PairList p = io::pairs_from_json(g, io::read_json_file(req_.pairs), true);
        current = make_instance(Stage::P2, std::move(g), std::move(p), {}, req_.k);
    }
    else {
        throw InvalidInput("reduce needs --input (or --graph and --pairs for p2)");
    }

    for (int stage = std::max(from, 1); stage < to; ++stage) {
        if (stage == 1)
            current = reduce_p3_to_p2(current).target;
        else
            current = reduce_p2_to_p1(current).target;
    }
    emit(io::to_json(current));
    return ExitPass;
}

int Runner::lift()
{
    int from = stage_rank(req_.from);
    int to = req_.to.empty() ? from + 1 : stage_rank(req_.to);
    if (from >= to || from > 2)
        throw InvalidInput("lift must go forward from sat, p3 or p2");
    require_input();

    ReducedInstance current;
    TotalColoring chi;
    if (from == 0) {
        CnfFormula phi = load_cnf();
        std::optional<Assignment> a;
        if (!req_.assignment.empty())
            a = io::assignment_from_json(io::read_json_file(req_.assignment));
        else
            a = solve_by_truth_table(phi);
        if (!a) {
            emit({{"stage", "p3"}, {"verified", false}, {"reason", "formula is unsatisfiable"}});
            return ExitFail;
        }
        if (a->values.size() != static_cast<std::size_t>(phi.num_variables))
            throw InvalidInput("assignment does not cover every variable");
        if (!evaluate(phi, *a)) {
            emit({{"stage", "p3"}, {"verified", false}, {"reason", "assignment does not satisfy the formula"}});
            return ExitFail;
        }
        SatReduction sat = reduce_sat_to_p3(phi, req_.k);
        chi = assignment_to_coloring(sat, *a);
        current = std::move(sat.target);
    }
    else {
        current = load_instance();
        if (current.stage != static_cast<Stage>(from - 1))
            throw InvalidInput("bundle is a " + to_string(current.stage) + " instance, not " + req_.from);
        chi = load_coloring(current.graph);
        bool valid = from == 1 ? satisfies_problem3(current.graph, current.pairs, current.partial, chi, current.k)
                               : chi.palette <= 3 &&
                                     is_rainbow_k_connected(current.graph, chi, current.k, ColoringMode::Total,
                                                            current.pairs);
        if (!valid) {
            emit({{"stage", req_.from}, {"verified", false}, {"reason", "input coloring fails its own stage"}});
            return ExitFail;
        }
    }

    VerifyOptions verify;
    verify.workers = req_.workers;
    for (int stage = std::max(from, 1); stage < to; ++stage) {
        if (stage == 1) {
            P3ToP2Reduction r = reduce_p3_to_p2(current);
            chi = lift_coloring_p3_to_p2(r, chi, verify);
            current = std::move(r.target);
        }
        else {
            P2ToP1Reduction r = reduce_p2_to_p1(current);
            chi = lift_coloring_p2_to_p1(r, chi, verify);
            current = std::move(r.target);
        }
    }
    emit({{"stage", stage_name(to)}, {"verified", true}, {"coloring", io::to_json(current.graph, chi)}});
    return ExitPass;
}

int Runner::restrict_witness()
{
    require_input();
    ReducedInstance source = load_instance();
    VerifyOptions verify;
    verify.workers = req_.workers;
    if (req_.from == "p1") {
        if (source.stage != Stage::P2)
            throw InvalidInput("restricting a P1 coloring needs the P2 bundle it was reduced from");
        P2ToP1Reduction r = reduce_p2_to_p1(source);
        TotalColoring chi = restrict_coloring_p1_to_p2(r, load_coloring(r.target.graph), verify);
        emit({{"stage", "p2"}, {"verified", true}, {"coloring", io::to_json(source.graph, chi)}});
        return ExitPass;
    }
    if (req_.from == "p2") {
        if (source.stage != Stage::P3)
            throw InvalidInput("restricting a P2 coloring needs the P3 bundle it was reduced from");
        P3ToP2Reduction r = reduce_p3_to_p2(source);
        RestrictedP3Coloring res = restrict_coloring_p2_to_p3(r, load_coloring(r.target.graph), verify);
        emit({{"stage", "p3"},
              {"verified", true},
              {"class1_color", res.class1_color},
              {"class2_color", res.class2_color},
              {"coloring", io::to_json(source.graph, res.coloring)},
              {"normalized", io::to_json(source.graph, res.normalized)}});
        return ExitPass;
    }
    throw InvalidInput("restrict works --from p1 or --from p2");
}

int Runner::extract()
{
    require_input();
    CnfFormula phi = load_cnf();
    SatReduction sat = reduce_sat_to_p3(phi, req_.k);
    TotalColoring chi = load_coloring(sat.target.graph);
    const ReducedInstance &p3 = sat.target;
    Problem3Verdict verdict = check_problem3(p3.graph, p3.pairs, p3.partial, chi, req_.k);
    if (!verdict.ok) {
        emit({{"verified", false}, {"reason", verdict.reason}});
        return ExitFail;
    }
    Assignment a = coloring_to_assignment(sat, chi);
    bool satisfies = evaluate(phi, a);
    emit({{"verified", true}, {"assignment", io::to_json(a)}, {"satisfies", satisfies}});
    return satisfies ? ExitPass : ExitFail;
}

int Runner::witness()
{
    if (req_.direction == "lift")
        return lift();
    if (req_.direction == "restrict")
        return restrict_witness();
    return extract();
}

int Runner::roundtrip()
{
    require_input();
    RoundtripOptions opts;
    opts.search = search_options(req_);
    RoundtripReport report = run_roundtrip(load_cnf(), req_.k, opts);
    emit(to_json(report));
    if (report.inconclusive)
        return ExitExhausted;
    return report.ok() ? ExitPass : ExitFail;
}

int Runner::bounds()
{
    Graph g = io::graph_from_json(io::read_json_file(req_.graph));
    SolveOptions opts;
    opts.search = search_options(req_);
    emit(io::to_json(bounds_report(g, req_.k, req_.exact, opts)));
    return ExitPass;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    Request req;
    CLI::App app{"Total rainbow k-connection toolkit"};
    app.require_subcommand(1);

    auto common = [&](CLI::App *cmd) {
        cmd->add_option("--k", req.k, "Number of disjoint paths")->check(CLI::PositiveNumber);
        cmd->add_option("--out", req.out, "Write JSON here instead of stdout");
        cmd->add_option("--workers", req.workers, "Worker threads")->check(CLI::PositiveNumber);
    };
    auto budget = [&](CLI::App *cmd) {
        cmd->add_option("--budget-ms", req.budget_ms, "Wall-clock limit")->check(CLI::NonNegativeNumber);
        cmd->add_option("--budget-nodes", req.budget_nodes, "Search node limit");
        cmd->add_flag("--timing", req.timing, "Include elapsed time in the output");
    };
    const std::vector<std::string> modes{"edge", "vertex", "total"};
    const std::vector<std::string> stages{"sat", "p3", "p2", "p1"};

    auto *verify = app.add_subcommand("verify", "Check a coloring for rainbow k-connectivity");
    common(verify);
    verify->add_option("--graph", req.graph)->required()->check(CLI::ExistingFile);
    verify->add_option("--coloring", req.coloring)->required()->check(CLI::ExistingFile);
    verify->add_option("--mode", req.mode)->check(CLI::IsMember(modes));
    verify->add_option("--pairs", req.pairs)->check(CLI::ExistingFile);

    auto *solve = app.add_subcommand("solve", "Compute a connection number or decide a fixed palette");
    common(solve);
    budget(solve);
    solve->add_option("--graph", req.graph)->check(CLI::ExistingFile);
    solve->add_option("--input", req.input, "Instance bundle (p3, p2 or p1)")->check(CLI::ExistingFile);
    solve->add_option("--param", req.param)->check(CLI::IsMember({"trc", "rc", "rvc"}));
    solve->add_option("--t", req.t, "Decide this palette size instead")->check(CLI::PositiveNumber);
    solve->add_option("--mode", req.mode)->check(CLI::IsMember(modes));
    solve->add_option("--pairs", req.pairs)->check(CLI::ExistingFile);

    auto *reduce = app.add_subcommand("reduce", "Build a reduced instance bundle");
    common(reduce);
    reduce->add_option("--from", req.from)->required()->check(CLI::IsMember({"sat", "p3", "p2"}));
    reduce->add_option("--to", req.to)->required()->check(CLI::IsMember({"p3", "p2", "p1"}));
    reduce->add_option("--input", req.input, "DIMACS file or instance bundle")->check(CLI::ExistingFile);
    reduce->add_option("--graph", req.graph)->check(CLI::ExistingFile);
    reduce->add_option("--pairs", req.pairs)->check(CLI::ExistingFile);

    auto *witness = app.add_subcommand("witness", "Lift, restrict or extract witnesses");
    common(witness);
    witness->add_option("--direction", req.direction)->required()->check(
        CLI::IsMember({"lift", "restrict", "extract"}));
    witness->add_option("--from", req.from)->check(CLI::IsMember(stages));
    witness->add_option("--to", req.to)->check(CLI::IsMember(stages));
    witness->add_option("--input", req.input, "DIMACS file or source instance bundle")->check(CLI::ExistingFile);
    witness->add_option("--coloring", req.coloring)->check(CLI::ExistingFile);
    witness->add_option("--assignment", req.assignment)->check(CLI::ExistingFile);

    auto *roundtrip = app.add_subcommand("roundtrip", "Cross-check a formula against its reduced instance");
    common(roundtrip);
    budget(roundtrip);
    roundtrip->add_option("--input", req.input, "DIMACS file")->required()->check(CLI::ExistingFile);

    auto *bounds = app.add_subcommand("bounds", "Structural lower bounds on trc_k");
    common(bounds);
    budget(bounds);
    bounds->add_option("--graph", req.graph)->required()->check(CLI::ExistingFile);
    bounds->add_flag("--exact", req.exact, "Also compute rc_k and rvc_k");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? ExitPass : ExitInput;
    }

    Runner runner(req, out);
    try {
        if (verify->parsed())
            return runner.verify();
        if (solve->parsed())
            return runner.solve();
        if (reduce->parsed())
            return runner.reduce();
        if (witness->parsed())
            return runner.witness();
        if (roundtrip->parsed())
            return runner.roundtrip();
        return runner.bounds();
    }
    catch (const InvalidInput &e) {
        err << "error: " << e.what() << '\n';
        return ExitInput;
    }
    catch (const ReductionFalsified &e) {
        err << "reduction falsified: " << e.what() << '\n';
        return ExitFail;
    }
}

} // namespace rainbow::cli
