#include "rentdiv/app.hpp"
#include "rentdiv/stochastic.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace rentdiv;

namespace {

constexpr int kSolved = 0, kError = 1, kNone = 2, kUnknown = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

Instance load_instance(const std::string& path) {
    try {
        return io::parse_instance(read_file(path));
    } catch (const io::ParseError& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

// "5", "1:8" or "1,2,3,5".
std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::size_t> out;
    if (auto colon = text.find(':'); colon != std::string::npos) {
        const auto lo = std::stoul(text.substr(0, colon)), hi = std::stoul(text.substr(colon + 1));
        if (lo > hi) throw std::invalid_argument("empty range " + text);
        for (auto v = lo; v <= hi; ++v) out.push_back(v);
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoul(item));
    if (out.empty()) throw std::invalid_argument("no sizes in '" + text + "'");
    return out;
}

void print_ledger(std::ostream& out, const Instance& inst, const NegotiationLedger& ledger) {
    out << "ledger: " << ledger.steps.size() << " negotiation(s)\n";
    for (const auto& s : ledger.steps)
        out << "  " << inst.player_names[s.i1] << " pays " << format_money(s.delta) << " more in "
            << inst.apartment_names[s.j1] << " and less in " << inst.apartment_names[s.j2] << "; "
            << inst.player_names[s.i2] << " the reverse\n";
}

int cmd_solve(const std::string& in, const std::string& out, const std::string& notion, const std::string& objective) {
    const Instance inst = load_instance(in);
    const auto doc = app::solve(inst, app::parse_notion(notion), app::parse_objective(objective));
    write_output(out, io::solution_to_json(inst, doc).dump(2) + "\n");
    if (!out.empty() && out != "-") {
        if (!doc.solved()) {
            std::cout << "status: none exists\n";
        } else {
            std::cout << "status: solved, chosen " << inst.apartment_names[doc.solution->chosen] << "\nutilities:";
            for (const auto& u : doc.utilities) std::cout << ' ' << format_money(u);
            std::cout << '\n';
            if (doc.ledger) print_ledger(std::cout, inst, *doc.ledger);
        }
    }
    return doc.solved() ? kSolved : kNone;
}

int cmd_check(const std::string& in, const std::string& solution, const std::string& notion) {
    const Instance inst = load_instance(in);
    io::SolutionDocument doc;
    try {
        doc = io::parse_solution(read_file(solution), inst);
    } catch (const io::ParseError& e) {
        throw std::runtime_error(solution + ": " + e.what());
    }
    const auto report = app::check(inst, doc, app::parse_notion(notion));
    std::cout << report.to_json().dump(2) << '\n';
    switch (report.verdict) {
        case Certainty::Holds: return kSolved;
        case Certainty::Fails: return kNone;
        case Certainty::Unknown: return kUnknown;
    }
    return kError;
}

struct SimulateArgs {
    std::string mode = "estimate";
    std::size_t n = 2;
    std::string m = "1";
    std::string spec = "uniform01";
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    std::string rent = "1";
    std::size_t m0 = 1;
    std::size_t r_steps = 0;
    std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
    using namespace stochastic;
    if (a.trials == 0 && a.mode != "closed-form") throw std::invalid_argument("--trials must be at least 1");
    const auto sizes = parse_sizes(a.m);
    const Money rent = parse_money(a.rent);
    std::ostringstream csv;
    csv << csv_header() << '\n';
    if (a.mode == "closed-form") {
        std::vector<Money> rs;
        if (a.r_steps > 0) {
            for (std::size_t t = 0; t <= a.r_steps; ++t) rs.push_back(Money(t, a.r_steps));
        } else {
            const auto spec = DistributionSpec::parse(a.spec);
            if (spec.kind != DistributionSpec::Kind::CorrelatedBernoulli)
                throw std::invalid_argument("closed-form needs --spec corr:<r> or --r-steps");
            rs.push_back(spec.r);
        }
        for (std::size_t m : sizes)
            for (auto& r : rs) {
                r.canonicalize();
                const double p = closed_form_uef_prob(m, r).get_d();
                TrialReport rep;
                rep.estimate = rep.ci_low = rep.ci_high = p;
                rep.seed = a.seed;
                csv << csv_row(2, m, DistributionSpec::correlated_bernoulli(r), rep) << '\n';
            }
    } else {
        const auto spec = DistributionSpec::parse(a.spec);
        for (std::size_t m : sizes) {
            TrialReport rep;
            if (a.mode == "estimate")
                rep = estimate_uef_prob(a.n, m, spec, rent, a.trials, a.seed);
            else if (a.mode == "event-f")
                rep = estimate_event_f_prob(a.n, m, spec, rent, a.trials, a.seed);
            else if (a.mode == "stopping")
                rep = run_trials(a.trials, a.seed, [&](std::uint64_t s) {
                    return !sequential_stopping(a.n, spec, rent, a.m0, m, s).cap_hit();
                });
            else
                throw std::invalid_argument("unknown mode '" + a.mode + "'");
            csv << csv_row(a.n, m, spec, rep) << '\n';
        }
    }
    write_output(a.out, csv.str());
    return kSolved;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App cli{"Multi-apartment rent division: solve, check and simulate."};
    cli.require_subcommand(1);

    std::string in, out, solution, notion = "nef", objective = "none";
    auto* solve = cli.add_subcommand("solve", "Solve an instance file for a fairness notion");
    solve->add_option("--in", in, "Instance file (JSON)")->required();
    solve->add_option("--out", out, "Solution file (default: stdout)");
    solve->add_option("--notion", notion, "uef, nef, strong-nef or def");
    solve->add_option("--objective", objective, "maximin, equitability or none");

    auto* check = cli.add_subcommand("check", "Check a solution file against an instance");
    check->add_option("--in", in, "Instance file (JSON)")->required();
    check->add_option("--solution", solution, "Solution file (JSON)")->required();
    check->add_option("--notion", notion, "uef, nef, strong-nef or def");

    SimulateArgs sim;
    auto* simulate = cli.add_subcommand("simulate", "Monte Carlo and closed-form experiments, CSV output");
    simulate->add_option("--mode", sim.mode, "estimate, stopping, event-f or closed-form");
    simulate->add_option("--n", sim.n, "Players");
    simulate->add_option("--m", sim.m, "Apartments: 5, 1:8 or 1,2,3,5 (the cap in stopping mode)");
    simulate->add_option("--spec", sim.spec, "uniform01, corr:<r> or discrete:<values>@<probabilities>");
    simulate->add_option("--trials", sim.trials, "Trials per row");
    simulate->add_option("--seed", sim.seed, "Master seed");
    simulate->add_option("--rent", sim.rent, "Rent of every apartment");
    simulate->add_option("--m0", sim.m0, "First apartment count in stopping mode");
    simulate->add_option("--r-steps", sim.r_steps, "closed-form: sweep r over 0..1 in this many steps");
    simulate->add_option("--out", sim.out, "CSV file (default: stdout)");

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return cli.exit(e) == 0 ? 0 : kError;
    }
    try {
        if (*solve) return cmd_solve(in, out, notion, objective);
        if (*check) return cmd_check(in, solution, notion);
        return cmd_simulate(sim);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kError;
    }
}
