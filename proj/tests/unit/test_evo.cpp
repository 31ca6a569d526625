#include "doctest.h"

#include "helpers.hpp"

#include "cyberevo/evo/evolution.hpp"
#include "cyberevo/ge/program_text.hpp"

#include <algorithm>
#include <cmath>
#include <map>

using namespace cyberevo;
using namespace cyberevo::evo;

namespace {

EvoConfig small_config(std::uint64_t seed = 7) {
    EvoConfig c;
    c.population = 6;
    c.iterations = 4;
    c.steps = 20;
    c.seed = seed;
    return c;
}

std::shared_ptr<const sim::TeamPolicy> program_team(Side side, const std::string& body) {
    const auto& g = ge::controller_grammar(side, ge::GrammarVariant::Baseline);
    const std::string code = "def select_action_and_target(observation, name):\n#Select action\n" + body +
                             "\n#Select target\ntarget_heuristic = first_target\nreturn action, target_heuristic\n";
    const auto tree = ge::parse_program(code, g);
    REQUIRE(tree.has_value());
    return std::make_shared<ctrl::TeamController>(
        side, std::vector<std::shared_ptr<const ctrl::AgentController>>{
                  std::make_shared<ctrl::RuleController>(ge::build_ast(*tree, side))});
}

} // namespace

TEST_CASE("config validation") {
    EvoConfig c;
    CHECK_NOTHROW(c.validate());
    CHECK(c.length_for(Algorithm::GA) == 180);
    CHECK(c.length_for(Algorithm::GELLM) == 1000);
    c.elite = 11;
    CHECK_THROWS_AS(c.validate(), Error);
    c = EvoConfig{};
    c.mutation_prob = 1.5;
    CHECK_THROWS_AS(c.validate(), Error);
    c = EvoConfig{};
    c.population = 0;
    CHECK_THROWS_AS(c.validate(), Error);
    CHECK(parse_algorithm("GE-LLM") == Algorithm::GELLM);
    CHECK_FALSE(parse_algorithm("PSO").has_value());
}

TEST_CASE("tournament selection examples") {
    Rng rng(1);
    const std::vector<std::optional<double>> one{-3.0};
    for (int i = 0; i < 20; ++i) CHECK(tournament_select(one, 2, rng) == 0);

    const std::vector<std::optional<double>> pair{-5.0, -1.0};
    for (std::uint64_t s = 0; s < 200; ++s) {
        Rng a(s), b(s);
        const auto i = b.index(2), j = b.index(2);
        const auto got = tournament_select(pair, 2, a);
        if (i != j) CHECK(got == 1);
        else CHECK(got == i);
    }
    const std::vector<std::optional<double>> unevaluated{1.0, std::nullopt};
    CHECK_THROWS_AS(
        [&] {
            for (int i = 0; i < 50; ++i) tournament_select(unevaluated, 2, rng);
        }(),
        Error);
}

TEST_CASE("tournament selection distribution") {
    const int n = 10000;
    const double q = 0.1;
    const double sigma = std::sqrt(n * q * (1 - q));
    Rng rng(3);
    // Equal fitness: the first draw wins, so each slot is chosen uniformly.
    std::vector<std::optional<double>> flat(10, -2.0);
    std::vector<int> counts(10, 0);
    for (int i = 0; i < n; ++i) ++counts[tournament_select(flat, 2, rng)];
    for (int c : counts) CHECK(std::abs(c - n * q) <= 3 * sigma);
    // Distinct fitness: rank r (1 = worst) wins a binary tournament with
    // probability (r^2 - (r-1)^2) / 100.
    std::vector<std::optional<double>> ranked;
    for (int i = 0; i < 10; ++i) ranked.push_back(-static_cast<double>(10 - i));
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < n; ++i) ++counts[tournament_select(ranked, 2, rng)];
    for (int r = 1; r <= 10; ++r) {
        const double p = (r * r - (r - 1) * (r - 1)) / 100.0;
        CHECK(std::abs(counts[static_cast<std::size_t>(r - 1)] - n * p) <= 3 * std::sqrt(n * p * (1 - p)) + 1);
    }
}

TEST_CASE("one point crossover") {
    const Genome a{0, 0, 0, 0}, b{1, 1, 1, 1};
    const auto [x, y] = crossover_at(a, b, 2);
    CHECK(x == Genome{0, 0, 1, 1});
    CHECK(y == Genome{1, 1, 0, 0});
    Rng rng(9);
    for (std::size_t cut = 0; cut <= 4; ++cut) {
        const auto [p, q] = crossover_at(a, a, cut);
        CHECK(p == a);
        CHECK(q == a);
    }
    CHECK_THROWS_AS(crossover_at(a, Genome{1, 1}, 1), Error);
    CHECK_THROWS_AS(one_point_crossover(a, Genome{1}, 0.5, rng), Error);
    const auto [c0, d0] = one_point_crossover(a, b, 0.0, rng);
    CHECK(c0 == a);
    CHECK(d0 == b);
    for (int t = 0; t < 500; ++t) {
        const Genome u = random_genome(Encoding::Codon, 2 + rng.index(30), rng);
        const Genome v = random_genome(Encoding::Codon, u.size(), rng);
        const auto [c, d] = one_point_crossover(u, v, 1.0, rng);
        std::vector<double> before(u), after(c);
        before.insert(before.end(), v.begin(), v.end());
        after.insert(after.end(), d.begin(), d.end());
        std::sort(before.begin(), before.end());
        std::sort(after.begin(), after.end());
        CHECK(before == after);
        // Child c is a prefix of u followed by a suffix of v, cut within [1, len-1].
        std::size_t cut = 0;
        while (cut < u.size() && c[cut] == u[cut]) ++cut;
        std::size_t cut_from_back = u.size();
        while (cut_from_back > 0 && c[cut_from_back - 1] == v[cut_from_back - 1]) --cut_from_back;
        CHECK(cut_from_back <= cut);
        CHECK(c.front() == u.front());
        CHECK(c.back() == v.back());
    }
}

TEST_CASE("mutation") {
    Rng rng(5);
    const Genome g = random_genome(Encoding::Continuous, 50, rng);
    CHECK(mutate(g, Encoding::Continuous, 0.0, 0.1, rng) == g);
    for (int i = 0; i < 200; ++i) {
        const Genome m = mutate(Genome{1.0}, Encoding::Continuous, 1.0, 1e9, rng);
        CHECK((m[0] == 0.0 || m[0] == 1.0));
    }
    for (int i = 0; i < 200; ++i) {
        const Genome m = mutate(g, Encoding::Continuous, 0.5, 0.1, rng);
        for (double x : m) CHECK((x >= 0.0 && x <= 1.0));
    }
    const std::size_t len = 20;
    const int trials = 10000;
    const double p = 0.5;
    // A redraw lands on the old value a quarter of the time.
    const double q = p * 0.75;
    long changed = 0;
    for (int t = 0; t < trials; ++t) {
        const Genome d = random_genome(Encoding::Discrete4, len, rng);
        const Genome m = mutate(d, Encoding::Discrete4, p, 0.1, rng);
        for (std::size_t i = 0; i < len; ++i) {
            changed += m[i] != d[i];
            CHECK((m[i] == 0 || m[i] == 1 || m[i] == 2 || m[i] == 3));
        }
    }
    const double n = static_cast<double>(len) * trials;
    CHECK(std::abs(changed - n * q) <= 3 * std::sqrt(n * q * (1 - q)));
    const Genome codons = mutate(random_genome(Encoding::Codon, 500, rng), Encoding::Codon, 1.0, 0.1, rng);
    for (double c : codons) CHECK((c >= 0 && c <= 255 && c == std::floor(c)));
}

TEST_CASE("matrix genomes decode to normalized rows") {
    Representation rep{Side::Red, Algorithm::GA, TeamMode::One};
    CHECK(rep.min_genome_length() == 22);
    Representation many{Side::Blue, Algorithm::ES, TeamMode::Many};
    CHECK(many.controllers() == 5);
    CHECK(many.min_genome_length() == 130);

    Individual ind;
    ind.genome.assign(180, 0.0);
    // Row K has three live cells: DRS, ASD, SSD.
    ind.genome[0] = 3;
    ind.genome[1] = 1;
    ind.genome[2] = 0;
    REQUIRE(decode(ind, rep));
    const auto& team = dynamic_cast<const ctrl::TeamController&>(*ind.team);
    REQUIRE(team.size() == 1);
    const auto& fsm = dynamic_cast<const ctrl::FsmController&>(team.controller(0));
    const auto& probs = fsm.matrix().probabilities(0);
    CHECK(probs[0] == doctest::Approx(0.75));
    CHECK(probs[1] == doctest::Approx(0.25));
    CHECK(probs[2] == 0.0);
    // Row KD is all zero, which falls back to uniform.
    CHECK(fsm.matrix().probabilities(1)[1] == doctest::Approx(0.5));

    Individual short_genome;
    short_genome.genome.assign(10, 0.0);
    CHECK_THROWS_AS(decode(short_genome, rep), Error);
}

TEST_CASE("codon genomes decode per controller segment") {
    Representation rep{Side::Blue, Algorithm::GE, TeamMode::Many, ge::GrammarVariant::TR};
    Rng rng(3);
    int valid = 0;
    for (int t = 0; t < 50; ++t) {
        Individual ind = random_individual(rep, 1000, rng);
        if (!decode(ind, rep)) {
            CHECK(ind.invalid);
            CHECK(ind.programs.empty());
            CHECK_FALSE(ind.decoded());
            continue;
        }
        ++valid;
        REQUIRE(ind.programs.size() == 5);
        for (std::size_t c = 0; c < 5; ++c) {
            std::vector<ge::Codon> seg;
            for (std::size_t i = 0; i < 200; ++i) seg.push_back(static_cast<ge::Codon>(ind.genome[c * 200 + i]));
            const auto tree = ge::map_genome(seg, rep.grammar(), rep.max_wraps);
            REQUIRE(tree.has_value());
            CHECK(*tree == *ind.programs[c]);
        }
        const auto texts = render_programs(ind, rep);
        CHECK(texts.size() == 5);
        CHECK(texts[0].find("def select_action_and_target") != std::string::npos);
    }
    CHECK(valid > 0);
}

TEST_CASE("evaluation against a fixed adversary") {
    const auto& scenario = sim::ScenarioConfig::defaults();
    const auto blue_sleep = ctrl::sleep_team(Side::Blue);
    const auto red_sleep = ctrl::sleep_team(Side::Red);
    auto e = evaluate_vs_fixed(*blue_sleep, *red_sleep, scenario, 2, 11);
    CHECK(e.fitness == 0.0);
    CHECK(e.episodes == 2);
    CHECK_FALSE(e.faulted);
    // A hand-written blue program that keeps every service up scores the ceiling.
    const auto monitor = program_team(Side::Blue, "action = Monitor");
    for (std::uint64_t s = 0; s < 5; ++s) CHECK(evaluate_vs_fixed(*monitor, *red_sleep, scenario, 2, s).fitness == 0.0);

    const auto red_fsm = ctrl::fsm_adversary(Side::Red);
    const auto blue_fsm = ctrl::fsm_adversary(Side::Blue);
    const auto a = evaluate_vs_fixed(*blue_fsm, *red_fsm, scenario, 2, 4);
    const auto b = evaluate_vs_fixed(*blue_fsm, *red_fsm, scenario, 2, 4);
    CHECK(a.fitness == b.fitness);
    CHECK(a.fitness <= 0.0);
    const auto r = evaluate_vs_fixed(*red_fsm, *blue_fsm, scenario, 2, 4);
    CHECK(r.fitness == -a.fitness);

    const test_support::ThrowingPolicy broken(Side::Blue);
    const auto f = evaluate_vs_fixed(broken, *red_fsm, scenario, 2, 4);
    CHECK(f.faulted);
    CHECK(f.episodes == 1);
    const test_support::ThrowingPolicy broken_adversary(Side::Red);
    CHECK_THROWS_AS(evaluate_vs_fixed(*blue_fsm, broken_adversary, scenario, 2, 4), sim::ControllerFault);
    CHECK_THROWS_AS(evaluate_vs_fixed(*blue_fsm, *blue_fsm, scenario, 2, 4), Error);
}

TEST_CASE("fault policy") {
    const std::vector<std::optional<double>> raw{-3.0, std::nullopt, -1.0};
    CHECK(resolve_faults(raw, 10.0) == std::vector<double>{-3.0, -13.0, -1.0});
    const std::vector<std::optional<double>> none(2);
    CHECK(resolve_faults(none, 10.0) == std::vector<double>{-10.0, -10.0});
}

TEST_CASE("one-sided evolution invariants") {
    for (auto alg : {Algorithm::GA, Algorithm::ES, Algorithm::GE}) {
        for (auto side : {Side::Blue, Side::Red}) {
            CAPTURE(algorithm_name(alg));
            CAPTURE(to_string(side));
            const EvoConfig cfg = small_config();
            const Representation rep{side, alg, TeamMode::Many};
            const auto adversary = ctrl::fsm_adversary(opposite(side));
            std::vector<std::vector<double>> seen_fitness;
            std::vector<Genome> elites;
            std::size_t replacements = 0;
            RunOptions opts;
            opts.observer = [&](const Generation& g) {
                const auto& members = g.population->individuals();
                CHECK(members.size() == cfg.population);
                std::vector<double> f;
                for (const auto& m : members) f.push_back(*m.fitness);
                seen_fitness.push_back(f);
                elites.push_back(members[g.population->best_index()].genome);
                replacements += g.replacements;
            };
            const auto trace = evolve_one_sided(cfg, rep, *adversary, opts);
            REQUIRE(trace.size() == static_cast<std::size_t>(cfg.iterations));
            for (std::size_t it = 0; it < trace.size(); ++it) {
                const auto& row = trace[it];
                CHECK(row.iteration == static_cast<int>(it));
                CHECK(row.side == side);
                CHECK(row.mean <= row.best + 1e-12);
                CHECK(row.wall_time == 0.0);
                if (side == Side::Blue) CHECK(row.best <= 0.0);
                if (it > 0) {
                    CHECK(row.best >= trace[it - 1].best);
                    // The previous best genome survives as member 0.
                    CHECK(seen_fitness[it][0] == trace[it - 1].best);
                    CHECK(std::find(elites.begin(), elites.end(), elites[it - 1]) != elites.end());
                }
                const double best = *std::max_element(seen_fitness[it].begin(), seen_fitness[it].end());
                double mean = 0.0;
                for (double f : seen_fitness[it]) mean += f;
                CHECK(row.best == best);
                CHECK(row.mean == doctest::Approx(mean / cfg.population));
                if (alg != Algorithm::GE) {
                    const std::size_t evaluated = it == 0 ? cfg.population : cfg.population - cfg.elite;
                    CHECK(row.episodes == evaluated * static_cast<std::size_t>(cfg.repetitions));
                } else {
                    CHECK(row.episodes <= cfg.population * static_cast<std::size_t>(cfg.repetitions));
                }
            }
            if (alg != Algorithm::GE) CHECK(replacements == 0);
        }
    }
}

TEST_CASE("one-sided evolution is deterministic and schedule independent") {
    EvoConfig cfg = small_config(21);
    const Representation rep{Side::Blue, Algorithm::GE, TeamMode::One, ge::GrammarVariant::OE};
    const auto adversary = ctrl::fsm_adversary(Side::Red);
    cfg.threads = 1;
    const auto a = evolve_one_sided(cfg, rep, *adversary);
    cfg.threads = 4;
    const auto b = evolve_one_sided(cfg, rep, *adversary);
    CHECK(a == b);
    cfg.seed = 22;
    const auto c = evolve_one_sided(cfg, rep, *adversary);
    bool differs = false;
    for (std::size_t i = 0; i < a.size(); ++i) differs |= a[i].mean != c[i].mean;
    CHECK(differs);
}

TEST_CASE("invalid decodes are replaced under the retry cap") {
    EvoConfig cfg = small_config();
    cfg.iterations = 2;
    cfg.retry_cap = 5;
    cfg.max_wraps = 0;
    cfg.genome_length = 1;
    // One codon, no wrapping: no program of the grammar can be derived.
    const Representation rep{Side::Red, Algorithm::GE, TeamMode::One};
    std::vector<std::size_t> replaced;
    RunOptions opts;
    opts.observer = [&](const Generation& g) {
        replaced.push_back(g.replacements);
        for (const auto& m : g.population->individuals()) {
            CHECK_FALSE(m.decoded());
            CHECK(*m.fitness == -cfg.fault_margin);
        }
    };
    const auto trace = evolve_one_sided(cfg, rep, *ctrl::fsm_adversary(Side::Blue), opts);
    REQUIRE(replaced.size() == 2);
    CHECK(replaced[0] == cfg.population * 5);
    CHECK(trace[0].episodes == 0);
    CHECK(trace[0].best == -cfg.fault_margin);

    // A short genome with wrapping disabled is mostly invalid but regenerates
    // into an evaluable population.
    cfg.genome_length = 12;
    cfg.retry_cap = 100;
    std::size_t total = 0;
    opts.observer = [&](const Generation& g) {
        total += g.replacements;
        for (const auto& m : g.population->individuals()) CHECK(m.decoded());
    };
    const auto ok = evolve_one_sided(cfg, rep, *ctrl::fsm_adversary(Side::Blue), opts);
    CHECK(ok.size() == 2);
    CHECK(total > 0);
}

TEST_CASE("genome length below the controller layout is rejected") {
    EvoConfig cfg = small_config();
    cfg.genome_length = 100;
    const Representation rep{Side::Red, Algorithm::GA, TeamMode::Many};
    CHECK_THROWS_AS(evolve_one_sided(cfg, rep, *ctrl::fsm_adversary(Side::Blue)), Error);
    const Representation llm{Side::Red, Algorithm::GELLM, TeamMode::One};
    CHECK_THROWS_AS(evolve_one_sided(small_config(), llm, *ctrl::fsm_adversary(Side::Blue)), Error);
    CHECK_THROWS_AS(evolve_one_sided(small_config(), llm, *ctrl::fsm_adversary(Side::Red)), Error);
}
