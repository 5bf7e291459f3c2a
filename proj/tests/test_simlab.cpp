#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "animalab/encoding.hpp"
#include "animalab/enumeration.hpp"
#include "animalab/json_io.hpp"
#include "animalab/simlab.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <map>

using namespace animalab;

namespace {

double binom_z(std::uint64_t hits, std::uint64_t n, const Rat& p_exact) {
    const double p = rat_to_double(p_exact);
    const double se = std::sqrt(p * (1 - p) / static_cast<double>(n));
    return (static_cast<double>(hits) / static_cast<double>(n) - p) / se;
}

} // namespace

TEST_CASE("Boltzmann half-pyramid: size law and pointwise law") {
    RngStream rng(31, 0);
    const std::uint64_t trials = 60000;
    std::map<std::size_t, std::uint64_t> sizes;
    std::uint64_t hits_single = 0, hits_pair = 0, hits_elbow = 0;
    const Animal pair({{0, 0}, {1, 1}});
    const Animal elbow({{0, 0}, {1, 1}, {0, 2}});
    for (std::uint64_t t = 0; t < trials; ++t) {
        try {
            const Animal a = sample_bhp(rng, 100000);
            ++sizes[a.size()];
            if (a.size() == 1) ++hits_single;
            if (a == pair) ++hits_pair;
            if (a == elbow) ++hits_elbow;
        } catch (const StepCapExceeded&) {
        }
    }
    CHECK(std::abs(binom_z(hits_single, trials, Rat(1, 3))) < 4.8);
    // P(A = C) = 3^-|C| for fixed C
    CHECK(std::abs(binom_z(hits_pair, trials, Rat(1, 9))) < 4.8);
    CHECK(std::abs(binom_z(hits_elbow, trials, Rat(1, 27))) < 4.8);
    // size law = excursion length law
    const auto law = excursion_law(8);
    for (int n = 1; n <= 8; ++n)
        CHECK(std::abs(binom_z(sizes[static_cast<std::size_t>(n)], trials, law.a(n))) < 4.8);
}

TEST_CASE("BHP conditioned on its size is uniform") {
    RngStream rng(32, 0);
    const auto catalog = enumerate_animals(CountKind::HalfPyramid, 4);
    REQUIRE(catalog.size() == 4);
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t n4 = 0;
    const std::uint64_t trials = 150000;
    for (std::uint64_t t = 0; t < trials; ++t) {
        try {
            const Animal a = sample_bhp(rng, 100000);
            if (a.size() == 4) {
                ++n4;
                ++counts[ball_config_key(a.vertices())];
            }
        } catch (const StepCapExceeded&) {
        }
    }
    for (const auto& c : catalog) {
        const auto key = ball_config_key(c.vertices());
        CHECK(std::abs(binom_z(counts[key], n4, Rat(1, 4))) < 4.8);
    }
}

TEST_CASE("UIP ball law") {
    RngStream rng(33, 0);
    const std::uint64_t trials = 120000;
    for (std::int64_t r : {1, 2}) {
        std::map<std::string, std::uint64_t> counts;
        std::uint64_t completed = 0;
        for (std::uint64_t t = 0; t < trials; ++t) {
            try {
                ++counts[ball_config_key(sample_uip_ball(r, rng, 1000000))];
                ++completed;
            } catch (const StepCapExceeded&) {
            }
        }
        CHECK(completed > trials * 99 / 100);
        std::uint64_t seen = 0;
        for (const auto& [trace, p] : ball_law(KernelKind::UIP, r)) {
            const auto key = ball_config_key(trace);
            CHECK(std::abs(binom_z(counts[key], completed, p)) < 4.8);
            seen += counts[key];
        }
        CHECK(seen == completed);
    }
}

TEST_CASE("UIP ball truncation consistency") {
    RngStream rng(34, 0);
    const std::uint64_t trials = 150000;
    std::map<std::string, std::uint64_t> direct, restricted;
    std::uint64_t n1 = 0, n2 = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        try {
            ++direct[ball_config_key(sample_uip_ball(1, rng, 1000000))];
            ++n1;
        } catch (const StepCapExceeded&) {
        }
    }
    for (std::uint64_t t = 0; t < trials; ++t) {
        try {
            auto trace = sample_uip_ball(2, rng, 1000000);
            std::erase_if(trace, [](const Vertex& v) { return !Ball{1}.contains(v); });
            ++restricted[ball_config_key(trace)];
            ++n2;
        } catch (const StepCapExceeded&) {
        }
    }
    for (const auto& [trace, p] : ball_law(KernelKind::UIP, 1)) {
        const auto key = ball_config_key(trace);
        CHECK(std::abs(binom_z(direct[key], n1, p)) < 4.8);
        CHECK(std::abs(binom_z(restricted[key], n2, p)) < 4.8);
    }
}

TEST_CASE("UIP- and UIP+ ball laws") {
    RngStream rng(35, 0);
    const std::uint64_t trials = 150000;
    std::map<std::string, std::uint64_t> minus_counts, plus_counts;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto m = sample_uip_minus_ball(2, rng);
        for (const auto& v : m) CHECK(v.x <= 0);
        auto mirrored = m;
        for (auto& v : mirrored) v.x = -v.x;
        ++minus_counts[ball_config_key(mirrored)];
        const auto p = sample_uip_plus_ball(2, rng);
        for (const auto& v : p) CHECK(v.x >= 0);
        ++plus_counts[ball_config_key(p)];
    }
    for (const auto& [trace, p] : ball_law(KernelKind::UIP_PLUS, 2)) {
        const auto key = ball_config_key(trace);
        CHECK(std::abs(binom_z(minus_counts[key], trials, p)) < 4.8);
        CHECK(std::abs(binom_z(plus_counts[key], trials, p)) < 4.8);
    }
}

TEST_CASE("uniform pyramid sampler is uniform") {
    RngStream rng(36, 0);
    {
        std::uint64_t left = 0;
        const std::uint64_t trials = 100000;
        for (std::uint64_t t = 0; t < trials; ++t)
            if (sample_uniform_pyramid(2, rng).contains({-1, 1})) ++left;
        CHECK(std::abs(binom_z(left, trials, Rat(1, 2))) < 4.8);
    }
    {
        const auto catalog = enumerate_animals(CountKind::Pyramid, 4);
        REQUIRE(catalog.size() == 13);
        std::map<std::string, std::uint64_t> counts;
        const std::uint64_t trials = 130000;
        for (std::uint64_t t = 0; t < trials; ++t)
            ++counts[ball_config_key(sample_uniform_pyramid(4, rng).vertices())];
        std::uint64_t seen = 0;
        for (const auto& c : catalog) {
            const auto key = ball_config_key(c.vertices());
            CHECK(std::abs(binom_z(counts[key], trials, Rat(1, 13))) < 4.8);
            seen += counts[key];
        }
        CHECK(seen == trials);
    }
}

TEST_CASE("uniform half-pyramid sampler") {
    RngStream rng(37, 0);
    const auto catalog = enumerate_animals(CountKind::HalfPyramid, 4);
    std::map<std::string, std::uint64_t> counts;
    const std::uint64_t trials = 80000;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const Animal a = sample_uniform_half_pyramid(4, 0, rng);
        REQUIRE(a.size() == 4);
        CHECK(classify_animal(a.vertices()).nonneg_pyramid);
        ++counts[ball_config_key(a.vertices())];
    }
    for (const auto& c : catalog)
        CHECK(std::abs(binom_z(counts[ball_config_key(c.vertices())], trials, Rat(1, 4))) < 4.8);
    // a window widens the accepted sizes
    for (int t = 0; t < 200; ++t) {
        const Animal a = sample_uniform_half_pyramid(6, 3, rng);
        CHECK(a.size() >= 6);
        CHECK(a.size() <= 9);
    }
}

TEST_CASE("blue/red UIP+ sampler basics") {
    RngStream rng(38, 0);
    for (int t = 0; t < 300; ++t) {
        const auto trace = sample_uip_plus_bluered(1, rng);
        for (const auto& v : trace) {
            CHECK(v.x >= 0);
            CHECK(Ball{1}.contains(v));
        }
        CHECK(std::find(trace.begin(), trace.end(), Vertex{0, 0}) != trace.end());
    }
}

TEST_CASE("experiments produce sane reports and are reproducible") {
    ExperimentConfig cfg;
    cfg.id = "width";
    cfg.trials = 40000;
    cfg.seed = 99;
    cfg.streams = 3;
    const auto rep1 = run_experiment(cfg);
    const auto rep2 = run_experiment(cfg);
    CHECK(rep1.to_csv() == rep2.to_csv()); // identical config, identical bytes
    CHECK(rep1.max_abs_z() < 4.8);
    CHECK(rep1.rows.size() == 6);
    for (const auto& row : rep1.rows) CHECK(row.trials == cfg.trials);

    ExperimentConfig other = cfg;
    other.seed = 100;
    CHECK(run_experiment(other).to_csv() != rep1.to_csv());

    cfg.id = "exit";
    cfg.trials = 20000;
    CHECK(run_experiment(cfg).max_abs_z() < 4.8);

    cfg.id = "cherry";
    cfg.trials = 30000;
    CHECK(run_experiment(cfg).max_abs_z() < 4.8);

    cfg.id = "extremes";
    CHECK(run_experiment(cfg).max_abs_z() < 4.8);

    cfg.id = "marginal";
    cfg.model = "uip";
    cfg.r = 1;
    cfg.trials = 30000;
    const auto marg = run_experiment(cfg);
    CHECK(marg.max_abs_z() < 4.8);
    // a few capped trials are fine; nothing may fall outside the enumeration
    for (const auto& note : marg.notes) CHECK(note.find("WARNING") == std::string::npos);
}

TEST_CASE("martingale and sausaging experiments") {
    ExperimentConfig cfg;
    cfg.id = "martingale";
    cfg.trials = 4000;
    cfg.height = 60;
    cfg.seed = 41;
    CHECK(std::abs(run_experiment(cfg).rows.at(0).z) < 4.8);

    cfg.id = "sausaging";
    cfg.trials = 2000;
    cfg.height = 1000;
    const auto rep = run_experiment(cfg);
    REQUIRE(rep.rows.size() >= 5);
    CHECK(rep.rows[0].empirical <= rep.rows[1].empirical);
    CHECK(rep.rows[1].empirical <= rep.rows[2].empirical);
    CHECK(rep.rows[0].empirical > 0.9); // almost every run pinches early
}

TEST_CASE("general-source TV distances decrease (exact, no MC)") {
    ExperimentConfig cfg;
    cfg.id = "source";
    const auto rep = run_experiment(cfg);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].empirical > rep.rows[1].empirical);
    CHECK(rep.rows[1].empirical > rep.rows[2].empirical);
}

TEST_CASE("blue/red cross-check experiment") {
    ExperimentConfig cfg;
    cfg.id = "bluered";
    cfg.r = 1;
    cfg.trials = 3000;
    cfg.seed = 8;
    cfg.streams = 4;
    const auto rep = run_experiment(cfg);
    // cut-column rows carry exact 1/(x+2) columns; the two-sample row reports
    REQUIRE(rep.rows.size() == 6);
    CHECK(rep.max_abs_z() < 4.8);
    CHECK(rep.rows.back().empirical < 4.8);
}

TEST_CASE("local limit experiment at small sizes") {
    ExperimentConfig cfg;
    cfg.id = "locallimit";
    cfg.n = 40;
    cfg.trials = 20000;
    cfg.seed = 5;
    const auto rep = run_experiment(cfg);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].empirical < 0.2);
}

TEST_CASE("report serialization") {
    McReport rep;
    rep.add_binomial("demo", "event", 333, 1000, Rat(1, 3));
    const auto csv = rep.to_csv();
    CHECK(csv.find("experiment,event,trials,empirical,exact_num,exact_den,stderr,z") !=
          std::string::npos);
    CHECK(csv.find("demo,event,1000,0.333,1,3,") != std::string::npos);
    const auto j = nlohmann::json::parse(rep.to_json());
    CHECK(j["rows"][0]["exact_num"] == "1");
    CHECK(j["rows"][0]["exact_den"] == "3");
}

TEST_CASE("animal JSON round trip") {
    const Animal a({{0, 0}, {1, 1}, {-1, 1}, {0, 2}});
    const auto j = animal_to_json(a);
    CHECK(animal_from_json(j) == a);
    const auto shuffled = nlohmann::json::parse(R"({"vertices":[[0,2],[1,1],[0,0],[-1,1]]})");
    CHECK(animal_from_json(shuffled) == a);
    CHECK_THROWS(animal_from_json(nlohmann::json::parse(R"({"vertices":[[1,1]]})")));
    CHECK_THROWS(animal_from_json(nlohmann::json::parse(R"({"vertices":[[0,0],[0,0]]})")));
    const auto p = path_from_json(nlohmann::json::parse("[0,1,-1]"));
    CHECK(p == std::vector<std::int64_t>{0, 1, -1});
}

TEST_CASE("svg rendering is deterministic") {
    const Animal a({{0, 0}, {1, 1}, {-1, 1}});
    const auto squares = render_svg(a, RenderStyle::Squares);
    CHECK(squares == render_svg(a, RenderStyle::Squares));
    CHECK(squares.find("<polygon") != std::string::npos);
    const auto single = render_svg(Animal({{0, 0}}), RenderStyle::Squares);
    std::size_t polys = 0, at = 0;
    while ((at = single.find("<polygon", at)) != std::string::npos) {
        ++polys;
        at += 8;
    }
    CHECK(polys == 1);
    const auto dominoes = render_svg(a, RenderStyle::Dominoes, true);
    CHECK(dominoes.find("<rect x=") != std::string::npos);
    CHECK(dominoes == render_svg(a, RenderStyle::Dominoes, true));
}
