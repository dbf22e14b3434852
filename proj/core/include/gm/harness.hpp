#ifndef GM_HARNESS_HPP
#define GM_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gm/generate.hpp"
#include "gm/graph.hpp"
#include "gm/reductions.hpp"

namespace gm {

/// Monte Carlo experiment description, parsed from a key = value file.
struct ExperimentConfig {
    enum class Generator { Bush, Gnp, Reduction };

    Generator generator = Generator::Bush;
    int instances = 10;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 0;
    bool seedSet = false;
    std::vector<std::string> algorithms; // rgma | mrg | greedy-random | rgma-decomposed
    bool exact = true;
    std::uint64_t budget = 2'000'000;

    // bush generator
    int bushes = 3;
    int maxBushEdges = 3;
    BushWeightScheme weightScheme = BushWeightScheme::Linear;

    // gnp generator
    int vertices = 8;
    int edgePercent = 40;
    std::vector<Rational> weights{Rational(1)};

    // reduction generator
    ReductionRequest reduction;
    int cnfVariables = 3;
    int cnfClauses = 5;
};

/// Parses the TOML-like `key = value` format ('#' comments, comma lists).
ExperimentConfig parseExperimentConfig(const std::string& text);

struct RatioEstimate {
    int instanceIndex = 0;
    std::string instance; // generator descriptor
    std::string algorithm;
    std::uint64_t trials = 0;
    Rational opt;
    std::optional<Rational> meanRatio;
    double stdError = 0.0;
    std::optional<Rational> minRatio;
    std::optional<Rational> exactExpectation;
    std::optional<Rational> exactRatio;
    std::string status = "ok"; // ok | budget_exceeded | undefined
};

/// Runs the whole experiment. Deterministic given the config (instances may
/// be processed concurrently; GREEDY_THREADS caps the workers). Every
/// per-run ratio is checked against the universal 1/2 lower bound; a
/// violation aborts loudly.
std::vector<RatioEstimate> estimateRatio(const ExperimentConfig& cfg);

/// Stable column order, rationals as "p/q", decimals presentation-only.
std::string writeEstimatesCsv(const std::vector<RatioEstimate>& estimates);
std::string writeEstimatesJson(const std::vector<RatioEstimate>& estimates);

} // namespace gm

#endif
