#include <cmath>
#include <stdexcept>

#include "paramctl/algorithms.hpp"
#include "paramctl/operators.hpp"
#include "run_context.hpp"

namespace paramctl {

namespace {

std::vector<std::vector<int>> build_topology(Topology topology, int islands) {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(islands));
    switch (topology) {
    case Topology::Ring:
        // unidirectional ring
        for (int i = 0; i < islands; ++i)
            out[static_cast<std::size_t>(i)].push_back((i + 1) % islands);
        break;
    case Topology::Complete:
        for (int i = 0; i < islands; ++i)
            for (int j = 0; j < islands; ++j)
                if (i != j) out[static_cast<std::size_t>(i)].push_back(j);
        break;
    case Topology::Grid:
    case Topology::Torus: {
        const int side = static_cast<int>(std::round(std::sqrt(static_cast<double>(islands))));
        if (side * side != islands)
            throw std::invalid_argument("island model: grid/torus needs a square island count");
        const bool wrap = topology == Topology::Torus;
        const auto id = [&](int r, int c) { return r * side + c; };
        for (int r = 0; r < side; ++r) {
            for (int c = 0; c < side; ++c) {
                auto& nb = out[static_cast<std::size_t>(id(r, c))];
                const int dr[4] = {-1, 1, 0, 0};
                const int dc[4] = {0, 0, -1, 1};
                for (int d = 0; d < 4; ++d) {
                    int rr = r + dr[d], cc = c + dc[d];
                    if (wrap) {
                        rr = (rr + side) % side;
                        cc = (cc + side) % side;
                    } else if (rr < 0 || rr >= side || cc < 0 || cc >= side) {
                        continue;
                    }
                    if (id(rr, cc) != id(r, c)) nb.push_back(id(rr, cc));
                }
            }
        }
        break;
    }
    }
    return out;
}

} // namespace

RunOutcome run_island_model(const BitProblem& problem, int islands, Topology topology,
                            MigrationScheme scheme, std::uint64_t budget, RandomSource& rng,
                            const RunOptions& opts) {
    if (islands < 2) throw std::invalid_argument("island model: need at least two islands");
    const auto neighbors = build_topology(topology, islands);
    const int n = problem.dimension();
    RunContext ctx(problem, budget, opts);

    struct Island {
        BitString genotype;
        double fitness = 0.0;
        std::uint64_t interval = 1; // current migration interval tau_i
        std::uint64_t phase = 0;    // generations since the interval began
        bool event = false;         // improved or received during the interval
        bool improved_now = false;
        bool pending_interval_end = false;
        double incoming = 0.0; // best broadcast fitness this generation
        BitString incoming_genotype;
        bool has_incoming = false;
    };
    std::vector<Island> pop(static_cast<std::size_t>(islands));
    std::uint64_t communication = 0;
    for (auto& isl : pop) {
        isl.genotype = initial_point(problem, opts, rng);
        isl.fitness = ctx.eval_full(isl.genotype);
        if (ctx.reached_goal()) break;
    }

    const auto broadcast = [&](int from) {
        const auto& src = pop[static_cast<std::size_t>(from)];
        for (int to : neighbors[static_cast<std::size_t>(from)]) {
            auto& dst = pop[static_cast<std::size_t>(to)];
            ++communication;
            if (!dst.has_incoming || problem.better(src.fitness, dst.incoming)) {
                dst.has_incoming = true;
                dst.incoming = src.fitness;
                dst.incoming_genotype = src.genotype;
            }
        }
    };
    const auto deliver = [&]() {
        for (auto& isl : pop) {
            if (isl.has_incoming && problem.better(isl.incoming, isl.fitness)) {
                isl.genotype = isl.incoming_genotype;
                isl.fitness = isl.incoming;
                isl.event = true; // received a superior migrant
            }
            isl.has_incoming = false;
        }
    };

    // Initial exchange: every island announces its start point, so islands
    // begin their first interval from a common information state.
    if (!ctx.reached_goal()) {
        for (int i = 0; i < islands; ++i) broadcast(i);
        deliver();
        for (auto& isl : pop) isl.event = false;
    }

    std::vector<int> flips;
    const double p = 1.0 / n;
    while (!ctx.should_stop()) {
        ctx.begin_generation();
        ctx.record_param(static_cast<double>(pop.front().interval));
        // one (1+1) EA step per island
        for (auto& isl : pop) {
            sample_standard_mutation(n, p, rng, flips);
            const double fy = ctx.eval_flips(isl.genotype, isl.fitness, flips);
            if (ctx.reached_goal()) break;
            const bool improved = problem.better(fy, isl.fitness);
            if (problem.at_least_as_good(fy, isl.fitness)) {
                apply_flips(isl.genotype, flips);
                isl.fitness = fy;
            }
            if (improved) isl.event = true;
            isl.improved_now = improved;
        }
        if (ctx.reached_goal()) break;

        // instant broadcasts of improvements under (2tau, 1)
        if (scheme == MigrationScheme::DoubleOrOne) {
            for (int i = 0; i < islands; ++i)
                if (pop[static_cast<std::size_t>(i)].improved_now) broadcast(i);
        }
        // end-of-interval broadcasts
        for (int i = 0; i < islands; ++i) {
            auto& isl = pop[static_cast<std::size_t>(i)];
            ++isl.phase;
            if (isl.phase >= isl.interval) isl.pending_interval_end = true;
        }
        for (int i = 0; i < islands; ++i) {
            const auto& isl = pop[static_cast<std::size_t>(i)];
            if (isl.pending_interval_end &&
                !(scheme == MigrationScheme::DoubleOrOne && isl.improved_now))
                broadcast(i);
        }
        deliver();
        for (auto& isl : pop) {
            if (isl.pending_interval_end) {
                isl.interval = migration_interval_update(isl.interval, isl.event, scheme);
                isl.phase = 0;
                isl.event = false;
                isl.pending_interval_end = false;
            } else if (scheme == MigrationScheme::DoubleOrOne && isl.event) {
                // improvements and superior migrants reset the interval
                // immediately under (2tau, 1)
                isl.interval = 1;
                isl.phase = 0;
                isl.event = false;
            }
        }
    }
    RunOutcome out = ctx.finish(rng.mixed_seed());
    out.communication_effort = communication;
    return out;
}

} // namespace paramctl
