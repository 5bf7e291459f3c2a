#pragma once

#include "animalab/core.hpp"
#include "animalab/kernels.hpp"
#include "animalab/rng.hpp"
#include "animalab/walks.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace animalab {

/// Boltzmann half-pyramid: decode of one positive excursion. P(A = C) = 3^-|C|.
/// cap = 0 uses step_cap(); the size law has a t^{-1/2} tail, so bulk
/// sampling wants an explicit cap with StepCapExceeded handled.
Animal sample_bhp(RngStream& rng, std::uint64_t cap = 0);

/// Trace of the named infinite (or Boltzmann) object inside B(r), exactly
/// distributed. Walk-built models stop at the ladder time tau_{-(r+1)} or as
/// soon as every column of the ball is buried above height r, whichever
/// comes first; ladder times have infinite mean, so the saturation stop is
/// what keeps the expected cost finite.
std::vector<Vertex> sample_uip_ball(std::int64_t r, RngStream& rng, std::uint64_t cap = 0);
std::vector<Vertex> sample_bhp_ball(std::int64_t r, RngStream& rng, std::uint64_t cap = 0);
std::vector<Vertex> sample_uip_minus_ball(std::int64_t r, RngStream& rng);
std::vector<Vertex> sample_uip_plus_ball(std::int64_t r, RngStream& rng);

struct RejectionBudgetExceeded : std::runtime_error {
    RejectionBudgetExceeded(std::uint64_t attempts, double acceptance)
        : std::runtime_error("rejection budget exceeded after " + std::to_string(attempts) +
                             " attempts (acceptance ~ " + std::to_string(acceptance) + ")"),
          attempts(attempts) {}
    std::uint64_t attempts;
};

/// Uniform pyramid with n vertices by rejection on the shaved walk (strict
/// min at time n); acceptance ~ 1/sqrt(3 pi n).
Animal sample_uniform_pyramid(int n, RngStream& rng, std::uint64_t max_attempts = 0);

/// Uniform half-pyramid; size accepted in [n, n + window] to tame the
/// n^{-3/2} acceptance rate (window = 0 samples the exact size, uniformly).
Animal sample_uniform_half_pyramid(int n, int window, RngStream& rng,
                                   std::uint64_t max_attempts = 0);

/// Experimental alternative UIP+ ball sampler from the blue/red
/// decomposition: a non-negative conditioned walk builds the blue animal,
/// then independent BHPs are dropped on columns in decreasing order with
/// probability 1/2 each. blue_horizon is the heuristic escape level after
/// which the blue walk is assumed not to return.
std::vector<Vertex> sample_uip_plus_bluered(std::int64_t r, RngStream& rng,
                                            std::int64_t blue_horizon = 500);

struct ExperimentConfig {
    std::string id;
    std::string model = "uip"; // bhp | uip | uipm | uipp
    std::int64_t r = 1;
    int n = 0;
    std::int64_t height = 0;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 1;
    unsigned streams = 4;
    std::string out;           // empty = stdout only
    std::string format = "csv";
};

struct McRow {
    std::string experiment;
    std::string event;
    std::uint64_t trials = 0;
    double empirical = 0;
    std::optional<Rat> exact; // absent for exploratory rows
    double stderr_ = 0;
    double z = 0;
};

struct McReport {
    std::vector<McRow> rows;
    std::vector<std::string> notes;

    void add_binomial(const std::string& exp, const std::string& event, std::uint64_t hits,
                      std::uint64_t trials, const std::optional<Rat>& exact);
    void add_value(const std::string& exp, const std::string& event, double value,
                   std::uint64_t trials, const std::optional<Rat>& exact, double stderr_);
    double max_abs_z() const;
    std::string to_csv() const;
    std::string to_json() const;
};

/// Runs the named experiment, fanning trials out over `streams` independent
/// RNG streams and folding the per-stream tallies in stream order; the
/// report depends only on the config, never on scheduling.
McReport run_experiment(const ExperimentConfig& config);

/// All pyramids of height exactly r inside B(r) (resp. non-negative ones,
/// resp. every possible BHP trace) together with their exact ball-law
/// probabilities. Probabilities sum to 1; used as MC oracles.
std::vector<std::pair<std::vector<Vertex>, Rat>> ball_law(KernelKind model, std::int64_t r);

std::string ball_config_key(const std::vector<Vertex>& trace);

enum class RenderStyle { Squares, Dominoes };

/// Deterministic SVG of the animal on the rotated lattice; optional
/// construction-order coloring (blue to red along the total order).
std::string render_svg(const Animal& a, RenderStyle style, bool color_order = false);

} // namespace animalab
