#include "gm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

#include "gm/blossom.hpp"
#include "gm/bush.hpp"
#include "gm/errors.hpp"
#include "gm/exact.hpp"
#include "gm/greedy.hpp"
#include "gm/mrg.hpp"
#include "gm/rng.hpp"

#include "json.hpp"

namespace gm {

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

std::vector<std::string> splitList(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

long long parseInt(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ParseError("config key '" + key + "' expects an integer, got '" + value + "'");
    }
}

std::string formatDouble(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

ExperimentConfig parseExperimentConfig(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected 'key = value'", lineNo);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key == "generator") {
            if (value == "bush")
                cfg.generator = ExperimentConfig::Generator::Bush;
            else if (value == "gnp")
                cfg.generator = ExperimentConfig::Generator::Gnp;
            else if (value == "reduction")
                cfg.generator = ExperimentConfig::Generator::Reduction;
            else
                throw ParseError("unknown generator '" + value + "'", lineNo);
        } else if (key == "instances") {
            cfg.instances = static_cast<int>(parseInt(key, value));
        } else if (key == "trials") {
            cfg.trials = static_cast<std::uint64_t>(parseInt(key, value));
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(parseInt(key, value));
            cfg.seedSet = true;
        } else if (key == "algorithms") {
            cfg.algorithms = splitList(value);
        } else if (key == "exact") {
            cfg.exact = value == "true" || value == "1";
        } else if (key == "budget") {
            cfg.budget = static_cast<std::uint64_t>(parseInt(key, value));
        } else if (key == "bushes") {
            cfg.bushes = static_cast<int>(parseInt(key, value));
        } else if (key == "max_bush_edges") {
            cfg.maxBushEdges = static_cast<int>(parseInt(key, value));
        } else if (key == "weight_scheme") {
            if (value == "linear")
                cfg.weightScheme = BushWeightScheme::Linear;
            else if (value == "harmonic")
                cfg.weightScheme = BushWeightScheme::Harmonic;
            else if (value == "geometric")
                cfg.weightScheme = BushWeightScheme::Geometric;
            else
                throw ParseError("unknown weight_scheme '" + value + "'", lineNo);
        } else if (key == "vertices") {
            cfg.vertices = static_cast<int>(parseInt(key, value));
        } else if (key == "edge_percent") {
            cfg.edgePercent = static_cast<int>(parseInt(key, value));
        } else if (key == "weights") {
            cfg.weights.clear();
            for (const auto& item : splitList(value)) cfg.weights.push_back(Rational::parse(item));
        } else if (key == "variant") {
            cfg.reduction.variant = variantFromName(value);
        } else if (key == "x") {
            cfg.reduction.x = static_cast<int>(parseInt(key, value));
        } else if (key == "cnf_variables") {
            cfg.cnfVariables = static_cast<int>(parseInt(key, value));
        } else if (key == "cnf_clauses") {
            cfg.cnfClauses = static_cast<int>(parseInt(key, value));
        } else {
            throw ParseError("unknown config key '" + key + "'", lineNo);
        }
    }
    if (!cfg.seedSet) throw ParseError("config must set a seed");
    if (cfg.algorithms.empty()) throw ParseError("config must list algorithms");
    for (const auto& algo : cfg.algorithms) {
        bool known = algo == "rgma" || algo == "mrg" || algo == "greedy-random" ||
                     algo == "rgma-decomposed";
        if (!known) throw ParseError("unknown algorithm '" + algo + "'");
        bool needsUnit = algo == "mrg" || algo == "rgma-decomposed";
        if (needsUnit) {
            bool unit = cfg.generator == ExperimentConfig::Generator::Gnp &&
                        cfg.weights.size() == 1 && cfg.weights[0] == Rational(1);
            if (!unit)
                throw ParseError("algorithm '" + algo + "' needs generator gnp with unit weights");
        }
        if (algo == "rgma" && cfg.generator != ExperimentConfig::Generator::Bush)
            throw ParseError("algorithm 'rgma' needs the bush generator");
    }
    return cfg;
}

namespace {

struct InstanceJob {
    WeightedGraph graph;
    std::string descriptor;
};

InstanceJob makeInstance(const ExperimentConfig& cfg, int index) {
    Rng rng(deriveSeed(cfg.seed, {static_cast<std::uint64_t>(index)}));
    InstanceJob job;
    std::ostringstream desc;
    switch (cfg.generator) {
    case ExperimentConfig::Generator::Bush:
        job.graph = randomBushGraph(rng, cfg.bushes, cfg.maxBushEdges, cfg.weightScheme);
        desc << "bush(b=" << cfg.bushes << ",max=" << cfg.maxBushEdges << ",i=" << index << ")";
        break;
    case ExperimentConfig::Generator::Gnp:
        job.graph = randomGnp(rng, cfg.vertices, cfg.edgePercent, cfg.weights);
        desc << "gnp(n=" << cfg.vertices << ",p=" << cfg.edgePercent << "%,i=" << index << ")";
        break;
    case ExperimentConfig::Generator::Reduction: {
        CnfFormula f = randomNormalizedFormula(
            rng, cfg.cnfVariables, cfg.cnfClauses,
            cfg.reduction.variant == ReductionVariant::GreedyEdge ? 3 : 2);
        job.graph = buildReduction(f, cfg.reduction).graph;
        desc << "reduction(" << variantName(cfg.reduction.variant) << ",n=" << cfg.cnfVariables
             << ",i=" << index << ")";
        break;
    }
    }
    job.descriptor = desc.str();
    return job;
}

std::uint64_t trialSeed(const ExperimentConfig& cfg, int instance, std::uint64_t trial,
                        std::uint64_t algoOrdinal) {
    return deriveSeed(cfg.seed, {static_cast<std::uint64_t>(instance) + 1, trial + 1, algoOrdinal});
}

std::vector<RatioEstimate> runInstance(const ExperimentConfig& cfg, int index) {
    InstanceJob job = makeInstance(cfg, index);
    std::vector<RatioEstimate> rows;
    for (std::size_t ai = 0; ai < cfg.algorithms.size(); ++ai) {
        const std::string& algo = cfg.algorithms[ai];
        RatioEstimate row;
        row.instanceIndex = index;
        row.instance = job.descriptor;
        row.algorithm = algo;
        row.trials = cfg.trials;
        try {
            bool cardinalityDenominator = algo == "mrg" || algo == "rgma-decomposed";
            Rational opt;
            if (cardinalityDenominator) {
                opt = Rational(static_cast<long long>(maxCardinalityMatching(job.graph).size()));
            } else {
                opt = solveExact(job.graph, cfg.budget).optWeight;
            }
            row.opt = opt;
            if (opt.isZero() || cfg.trials == 0) {
                row.status = "undefined";
                rows.push_back(std::move(row));
                continue;
            }

            std::optional<BushGraph> bush;
            if (algo == "rgma") bush = validateBush(job.graph);

            Rational sum = 0;
            double sq = 0.0;
            Rational minRatio;
            for (std::uint64_t t = 0; t < cfg.trials; ++t) {
                std::uint64_t seed = trialSeed(cfg, index, t, ai);
                Rational value;
                if (algo == "rgma") {
                    value = matchingWeight(job.graph, rgma(*bush, seed));
                } else if (algo == "greedy-random") {
                    value = matchingWeight(job.graph,
                                           runGreedy(job.graph, TieBreaker::random(), seed).matching);
                } else if (algo == "mrg") {
                    value = Rational(static_cast<long long>(mrg(job.graph, seed).size()));
                } else { // rgma-decomposed
                    auto d = bushDecompose(job.graph, PickPolicy::random(), deriveSeed(seed, {1}));
                    value = Rational(
                        static_cast<long long>(rgma(d.bushGraph, deriveSeed(seed, {2})).size()));
                }
                Rational ratio = value / opt;
                if (ratio * Rational(2) < Rational(1))
                    throw Error("universal 1/2 bound violated by " + algo + " on " + job.descriptor);
                sum += ratio;
                sq += ratio.toDouble() * ratio.toDouble();
                if (t == 0 || ratio < minRatio) minRatio = ratio;
            }
            row.meanRatio = sum / Rational(static_cast<long long>(cfg.trials));
            row.minRatio = minRatio;
            if (cfg.trials > 1) {
                double m = row.meanRatio->toDouble();
                double var = (sq - static_cast<double>(cfg.trials) * m * m) /
                             static_cast<double>(cfg.trials - 1);
                row.stdError = var > 0 ? std::sqrt(var / static_cast<double>(cfg.trials)) : 0.0;
            }
            if (cfg.exact) {
                if (algo == "rgma") {
                    row.exactExpectation = rgmaExpectedWeightExact(*bush, cfg.budget);
                    row.exactRatio = *row.exactExpectation / opt;
                } else if (algo == "mrg") {
                    row.exactExpectation = mrgExpectedCardinalityExact(job.graph, cfg.budget);
                    row.exactRatio = *row.exactExpectation / opt;
                }
            }
        } catch (const BudgetExceededError&) {
            row.status = "budget_exceeded";
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

int workerCount(int instances) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("GREEDY_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) hw = static_cast<unsigned>(v);
    }
    return static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(std::max(instances, 1))));
}

} // namespace

std::vector<RatioEstimate> estimateRatio(const ExperimentConfig& cfg) {
    std::vector<std::vector<RatioEstimate>> byInstance(static_cast<std::size_t>(cfg.instances));
    std::atomic<int> next{0};
    std::exception_ptr firstError;
    std::mutex errorMutex;
    auto work = [&] {
        for (;;) {
            int i = next.fetch_add(1);
            if (i >= cfg.instances) return;
            try {
                byInstance[static_cast<std::size_t>(i)] = runInstance(cfg, i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(errorMutex);
                if (!firstError) firstError = std::current_exception();
                return;
            }
        }
    };
    int workers = workerCount(cfg.instances);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) threads.emplace_back(work);
        for (auto& t : threads) t.join();
    }
    if (firstError) std::rethrow_exception(firstError);
    std::vector<RatioEstimate> out;
    for (auto& rows : byInstance) out.insert(out.end(), rows.begin(), rows.end());
    return out;
}

std::string writeEstimatesCsv(const std::vector<RatioEstimate>& estimates) {
    std::string out = "instance_index,instance,algorithm,trials,opt,mean_ratio,mean_ratio_decimal,"
                      "std_error,min_ratio,exact_expectation,exact_ratio,status\n";
    for (const auto& e : estimates) {
        out += std::to_string(e.instanceIndex) + "," + e.instance + "," + e.algorithm + "," +
               std::to_string(e.trials) + "," + e.opt.str() + ",";
        out += (e.meanRatio ? e.meanRatio->str() : "") + ",";
        out += (e.meanRatio ? formatDouble(e.meanRatio->toDouble()) : "") + ",";
        out += formatDouble(e.stdError) + ",";
        out += (e.minRatio ? e.minRatio->str() : "") + ",";
        out += (e.exactExpectation ? e.exactExpectation->str() : "") + ",";
        out += (e.exactRatio ? e.exactRatio->str() : "") + ",";
        out += e.status + "\n";
    }
    return out;
}

std::string writeEstimatesJson(const std::vector<RatioEstimate>& estimates) {
    nlohmann::json root;
    root["schema_version"] = 1;
    auto& list = root["estimates"] = nlohmann::json::array();
    for (const auto& e : estimates) {
        nlohmann::json row;
        row["instance_index"] = e.instanceIndex;
        row["instance"] = e.instance;
        row["algorithm"] = e.algorithm;
        row["trials"] = e.trials;
        row["opt"] = e.opt.str();
        if (e.meanRatio) {
            row["mean_ratio"] = e.meanRatio->str();
            row["mean_ratio_decimal"] = e.meanRatio->toDouble();
        }
        row["std_error"] = e.stdError;
        if (e.minRatio) row["min_ratio"] = e.minRatio->str();
        if (e.exactExpectation) row["exact_expectation"] = e.exactExpectation->str();
        if (e.exactRatio) row["exact_ratio"] = e.exactRatio->str();
        row["status"] = e.status;
        list.push_back(std::move(row));
    }
    return root.dump(2) + "\n";
}

} // namespace gm
