#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gm/blossom.hpp"
#include "gm/bush.hpp"
#include "gm/enumerate.hpp"
#include "gm/errors.hpp"
#include "gm/exact.hpp"
#include "gm/graph_io.hpp"
#include "gm/greedy.hpp"
#include "gm/harness.hpp"
#include "gm/mrg.hpp"
#include "gm/poly.hpp"
#include "gm/reductions.hpp"

namespace gm::cli {

namespace {

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void writeFile(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

WeightedGraph loadGraph(const std::string& path) { return parseGraph(readFile(path)); }

TieBreaker tieBreakerFrom(const std::string& spec) {
    if (spec == "random") return TieBreaker::random();
    if (spec == "lex") return TieBreaker::lexicographic();
    if (spec.rfind("priority:", 0) == 0) {
        auto m = parseMatchingFile(readFile(spec.substr(9)));
        return TieBreaker::priorityList(m.edges);
    }
    throw Error("unknown tie-break '" + spec + "' (random | lex | priority:FILE)");
}

nlohmann::json matchingJson(const WeightedGraph& g, const Matching& m) {
    nlohmann::json j;
    j["edges"] = nlohmann::json::array();
    for (auto [u, v] : m.edges) j["edges"].push_back({u, v});
    j["size"] = m.size();
    j["weight"] = matchingWeight(g, m).str();
    return j;
}

std::string matchingText(const Matching& m) { return writeMatchingFile(m); }

VertexPair parseEdgeArg(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw Error("--edge expects 'U,V'");
    return orderedPair(std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1)));
}

struct CommonArgs {
    std::string graphPath;
    bool json = false;
    std::uint64_t budget = kDefaultSolveBudget;
};

int cmdRun(const CommonArgs& c, const std::string& tieBreak, std::uint64_t seed, bool trace,
           std::ostream& out) {
    auto g = loadGraph(c.graphPath);
    auto run = runGreedy(g, tieBreakerFrom(tieBreak), seed);
    if (c.json) {
        auto j = matchingJson(g, run.matching);
        if (trace) {
            j["trace"] = nlohmann::json::array();
            for (const auto& step : run.trace)
                j["trace"].push_back({{"edge", {step.edge.first, step.edge.second}},
                                      {"class", step.weightClassIndex},
                                      {"candidates", step.candidateCount}});
        }
        out << j.dump(2) << "\n";
    } else {
        out << matchingText(run.matching);
        out << "# weight " << matchingWeight(g, run.matching).str() << "\n";
        if (trace)
            for (const auto& step : run.trace)
                out << "# pick " << step.edge.first << " " << step.edge.second << " class "
                    << step.weightClassIndex << " of " << step.candidateCount << " candidates\n";
    }
    return 0;
}

int cmdVerify(const CommonArgs& c, const std::string& matchingPath, std::ostream& out) {
    auto g = loadGraph(c.graphPath);
    auto m = parseMatchingFile(readFile(matchingPath));
    validateMatching(g, m);
    bool greedy = isGreedy(g, m);
    bool maximal = isMaximalMatching(g, m);
    if (c.json) {
        nlohmann::json j = matchingJson(g, m);
        j["greedy"] = greedy;
        j["maximal"] = maximal;
        out << j.dump(2) << "\n";
    } else {
        out << (greedy ? "greedy" : "not-greedy") << " maximal=" << (maximal ? "yes" : "no")
            << " weight=" << matchingWeight(g, m).str() << "\n";
    }
    return 0;
}

int cmdEnumerate(const CommonArgs& c, std::uint64_t limit, std::ostream& out) {
    auto g = loadGraph(c.graphPath);
    auto all = enumerateGreedyMatchings(g, limit);
    if (c.json) {
        nlohmann::json j;
        j["count"] = all.size();
        j["matchings"] = nlohmann::json::array();
        for (const auto& m : all) j["matchings"].push_back(matchingJson(g, m));
        out << j.dump(2) << "\n";
    } else {
        out << "# " << all.size() << " greedy matchings\n";
        for (const auto& m : all) {
            out << "matching weight=" << matchingWeight(g, m).str() << ":";
            for (auto [u, v] : m.edges) out << " " << u << "-" << v;
            out << "\n";
        }
    }
    return 0;
}

int cmdSolve(const CommonArgs& c, bool withCount, std::ostream& out) {
    auto g = loadGraph(c.graphPath);
    auto res = solveExact(g, c.budget, withCount);
    if (c.json) {
        nlohmann::json j;
        j["opt_weight"] = res.optWeight.str();
        j["witness"] = matchingJson(g, res.witness);
        j["explored_states"] = res.exploredStates;
        j["exact"] = res.exact;
        if (res.distinctGreedyCount) j["distinct_greedy_matchings"] = *res.distinctGreedyCount;
        out << j.dump(2) << "\n";
    } else {
        out << "opt " << res.optWeight.str() << "\n" << matchingText(res.witness);
        if (res.distinctGreedyCount) out << "# distinct greedy matchings: " << *res.distinctGreedyCount << "\n";
    }
    return 0;
}

int cmdSolvePoly(const CommonArgs& c, std::ostream& out) {
    auto g = loadGraph(c.graphPath);
    std::vector<RepairStep> log;
    auto res = solveLambda0Ge2(g, &log);
    if (c.json) {
        nlohmann::json j;
        j["opt_weight"] = res.optWeight.str();
        j["witness"] = matchingJson(g, res.witness);
        j["repairs"] = nlohmann::json::array();
        for (const auto& step : log)
            j["repairs"].push_back({{"edge", {step.problematicEdge.first, step.problematicEdge.second}},
                                    {"replaced", step.replacedEdges.size()}});
        out << j.dump(2) << "\n";
    } else {
        out << "opt " << res.optWeight.str() << " repairs " << log.size() << "\n"
            << matchingText(res.witness);
    }
    return 0;
}

int cmdDecide(const CommonArgs& c, bool vertexMode, int vertex, const std::string& edgeArg,
              std::ostream& out) {
    auto g = loadGraph(c.graphPath);
    DecisionResult res;
    if (vertexMode) {
        res = decideGreedyVertex(g, vertex, c.budget);
    } else {
        auto [u, v] = parseEdgeArg(edgeArg);
        res = decideGreedyEdge(g, u, v, c.budget);
    }
    if (c.json) {
        nlohmann::json j;
        j["answer"] = res.answer;
        j["explored_states"] = res.exploredStates;
        if (res.witness) j["witness"] = matchingJson(g, *res.witness);
        out << j.dump(2) << "\n";
    } else {
        out << (res.answer ? "yes" : "no") << "\n";
        if (res.witness) out << matchingText(*res.witness);
    }
    return 0;
}

int cmdRgma(const CommonArgs& c, std::uint64_t seed, std::uint64_t trials, std::ostream& out) {
    auto g = loadGraph(c.graphPath);
    auto bush = validateBush(g);
    if (trials == 0) {
        auto m = rgma(bush, seed);
        if (c.json)
            out << matchingJson(g, m).dump(2) << "\n";
        else
            out << matchingText(m) << "# weight " << matchingWeight(g, m).str() << "\n";
        return 0;
    }
    Rational sum = 0;
    Rational minW, maxW;
    for (std::uint64_t t = 0; t < trials; ++t) {
        Rational w = matchingWeight(g, rgma(bush, deriveSeed(seed, {t})));
        sum += w;
        if (t == 0 || w < minW) minW = w;
        if (t == 0 || w > maxW) maxW = w;
    }
    Rational mean = sum / Rational(static_cast<long long>(trials));
    if (c.json) {
        nlohmann::json j;
        j["trials"] = trials;
        j["mean_weight"] = mean.str();
        j["min_weight"] = minW.str();
        j["max_weight"] = maxW.str();
        out << j.dump(2) << "\n";
    } else {
        out << "trials " << trials << " mean " << mean.str() << " min " << minW.str() << " max "
            << maxW.str() << "\n";
    }
    return 0;
}

int cmdRgmaExact(const CommonArgs& c, std::ostream& out) {
    auto g = loadGraph(c.graphPath);
    auto value = rgmaExpectedWeightExact(validateBush(g), c.budget);
    if (c.json) {
        nlohmann::json j;
        j["expected_weight"] = value.str();
        j["expected_weight_decimal"] = value.toDouble();
        out << j.dump(2) << "\n";
    } else {
        out << value.str() << "\n";
    }
    return 0;
}

int cmdBushDecompose(const CommonArgs& c, const std::string& order, std::uint64_t seed,
                     const std::string& outPath, std::ostream& out) {
    auto g = loadGraph(c.graphPath);
    PickPolicy policy = PickPolicy::random();
    if (order.rfind("given:", 0) == 0) {
        std::vector<int> vs;
        std::istringstream in(readFile(order.substr(6)));
        int v;
        while (in >> v) vs.push_back(v);
        policy = PickPolicy::given(std::move(vs));
    } else if (order != "random") {
        throw Error("unknown --order '" + order + "' (random | given:FILE)");
    }
    auto d = bushDecompose(g, policy, seed);
    writeFile(outPath, writeGraph(d.bushGraph.graph));
    out << "# epsilon " << d.epsilon.str() << ", " << d.bushGraph.bushes.size() << " bushes\n";
    return 0;
}

int cmdMrg(const CommonArgs& c, std::uint64_t seed, std::uint64_t trials, std::ostream& out) {
    auto g = loadGraph(c.graphPath);
    if (trials == 0) {
        auto m = mrg(g, seed);
        if (c.json)
            out << matchingJson(g, m).dump(2) << "\n";
        else
            out << matchingText(m);
        return 0;
    }
    std::uint64_t sum = 0;
    for (std::uint64_t t = 0; t < trials; ++t) sum += mrg(g, deriveSeed(seed, {t})).size();
    Rational mean(static_cast<long long>(sum), static_cast<long long>(trials));
    if (c.json) {
        nlohmann::json j;
        j["trials"] = trials;
        j["mean_size"] = mean.str();
        out << j.dump(2) << "\n";
    } else {
        out << "trials " << trials << " mean size " << mean.str() << "\n";
    }
    return 0;
}

int cmdCompare(const CommonArgs& c, std::uint64_t trials, std::uint64_t seed,
               const std::string& csvPath, std::ostream& out) {
    auto g = loadGraph(c.graphPath);
    auto rep = compareRgmaMrg(g, trials, seed);
    std::string csv = "algorithm,trials,opt_cardinality,mean_ratio,mean_ratio_decimal,std_error,"
                      "min_ratio,defined\n";
    auto row = [&](const std::string& algo, const Rational& mean, double se, const Rational& minR) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.12g", mean.toDouble());
        std::string line = algo + "," + std::to_string(trials) + "," +
                           std::to_string(rep.optCardinality) + "," + mean.str() + "," + buf + ",";
        std::snprintf(buf, sizeof(buf), "%.12g", se);
        line += std::string(buf) + "," + minR.str() + "," + (rep.defined ? "yes" : "no") + "\n";
        return line;
    };
    if (rep.defined) {
        csv += row("mrg", rep.mrgMeanRatio, rep.mrgStdError, rep.mrgMinRatio);
        csv += row("rgma-decomposed", rep.rgmaMeanRatio, rep.rgmaStdError, rep.rgmaMinRatio);
    }
    if (!csvPath.empty()) writeFile(csvPath, csv);
    if (c.json) {
        nlohmann::json j;
        j["trials"] = trials;
        j["opt_cardinality"] = rep.optCardinality;
        j["defined"] = rep.defined;
        if (rep.defined) {
            j["mrg"] = {{"mean_ratio", rep.mrgMeanRatio.str()},
                        {"std_error", rep.mrgStdError},
                        {"min_ratio", rep.mrgMinRatio.str()}};
            j["rgma_decomposed"] = {{"mean_ratio", rep.rgmaMeanRatio.str()},
                                    {"std_error", rep.rgmaStdError},
                                    {"min_ratio", rep.rgmaMinRatio.str()}};
        }
        out << j.dump(2) << "\n";
    } else {
        out << csv;
    }
    return 0;
}

int cmdReduce(const std::string& cnfPath, const std::string& variant, int x, bool integerWeights,
              const std::string& outPath, const std::string& rolesPath, const std::string& bundleDir,
              std::ostream& out) {
    auto input = parseDimacs(readFile(cnfPath));
    ReductionRequest req{variantFromName(variant), x, integerWeights};
    auto r = buildReduction(input, req);
    if (!outPath.empty()) writeFile(outPath, writeGraph(r.graph));
    if (!rolesPath.empty()) writeFile(rolesPath, writeRoles(r));
    if (!bundleDir.empty()) writeReductionBundle(bundleDir, r, input, req);
    out << "# variables " << r.numVariables() << " clauses " << r.numClauses() << " vertices "
        << r.graph.numVertices() << " edges " << r.graph.numEdges() << "\n";
    if (r.designatedEdge)
        out << "# designated edge " << r.designatedEdge->first << " " << r.designatedEdge->second
            << "\n";
    return 0;
}

std::vector<bool> parseAssignmentFile(const std::string& text, int numVariables) {
    std::vector<bool> tau(static_cast<std::size_t>(numVariables) + 1, false);
    std::istringstream in(text);
    int lit;
    while (in >> lit) {
        if (lit == 0) continue;
        int v = std::abs(lit);
        if (v < 1 || v > numVariables)
            throw Error("assignment literal out of range: " + std::to_string(lit));
        tau[static_cast<std::size_t>(v)] = lit > 0;
    }
    return tau;
}

int cmdCertify(const std::string& direction, const std::string& reductionDir,
               const std::string& inputPath, bool json, std::ostream& out) {
    auto [r, req] = readReductionBundle(reductionDir);
    if (direction == "a2m") {
        auto tau = parseAssignmentFile(readFile(inputPath), r.numVariables());
        auto m = assignmentToMatching(r, tau);
        if (json) {
            auto j = matchingJson(r.graph, m);
            j["satisfied_clauses"] = satisfiedClauses(r.formula, tau);
            out << j.dump(2) << "\n";
        } else {
            out << matchingText(m);
            out << "# weight " << matchingWeight(r.graph, m).str() << " satisfied "
                << satisfiedClauses(r.formula, tau) << "\n";
        }
        return 0;
    }
    if (direction == "m2a") {
        auto m = parseMatchingFile(readFile(inputPath));
        auto tau = matchingToAssignment(r, m);
        int satisfied = satisfiedClauses(r.formula, tau);
        if (json) {
            nlohmann::json j;
            auto literals = nlohmann::json::array();
            for (int v = 1; v <= r.numVariables(); ++v)
                literals.push_back(tau[static_cast<std::size_t>(v)] ? v : -v);
            j["assignment"] = literals;
            j["satisfied_clauses"] = satisfied;
            j["weight"] = matchingWeight(r.graph, m).str();
            out << j.dump(2) << "\n";
        } else {
            for (int v = 1; v <= r.numVariables(); ++v)
                out << (tau[static_cast<std::size_t>(v)] ? v : -v) << " ";
            out << "\n# satisfied " << satisfied << " of " << r.numClauses() << "\n";
        }
        return 0;
    }
    throw Error("unknown --direction '" + direction + "' (a2m | m2a)");
}

int cmdExperiment(const std::string& configPath, const std::string& outDir, std::ostream& out) {
    auto cfg = parseExperimentConfig(readFile(configPath));
    auto estimates = estimateRatio(cfg);
    std::filesystem::create_directories(outDir);
    writeFile((std::filesystem::path(outDir) / "report.csv").string(), writeEstimatesCsv(estimates));
    writeFile((std::filesystem::path(outDir) / "report.json").string(),
              writeEstimatesJson(estimates));
    out << "# " << estimates.size() << " estimates written to " << outDir << "\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"weighted greedy matching toolkit"};
    app.require_subcommand(1);

    CommonArgs c;
    std::string tieBreak = "random", matchingPath, edgeArg, order = "random", outPath, rolesPath;
    std::string bundleDir, cnfPath, variant = "main", direction, reductionDir, inputPath;
    std::string configPath, csvPath, outDir;
    std::uint64_t seed = 0, trials = 0, limit = 100000;
    int vertex = 0, x = 2;
    bool trace = false, withCount = false, integerWeights = false;

    auto addGraph = [&](CLI::App* sub) {
        sub->add_option("--graph", c.graphPath, "graph file")->required();
    };
    auto addJson = [&](CLI::App* sub) { sub->add_flag("--json", c.json, "JSON output"); };
    auto addBudget = [&](CLI::App* sub) {
        sub->add_option("--budget", c.budget, "state budget for exact searches");
    };

    auto* sRun = app.add_subcommand("run", "run the greedy procedure once");
    addGraph(sRun);
    addJson(sRun);
    sRun->add_option("--tie-break", tieBreak, "random | lex | priority:FILE");
    sRun->add_option("--seed", seed, "random tie-break seed");
    sRun->add_flag("--trace", trace, "include the pick trace");

    auto* sVerify = app.add_subcommand("verify", "check a matching for greediness");
    addGraph(sVerify);
    addJson(sVerify);
    sVerify->add_option("--matching", matchingPath, "matching file")->required();

    auto* sEnum = app.add_subcommand("enumerate", "list every greedy matching");
    addGraph(sEnum);
    addJson(sEnum);
    sEnum->add_option("--limit", limit, "abort past this many matchings");

    auto* sSolve = app.add_subcommand("solve", "maximum weight greedy matching, exact");
    addGraph(sSolve);
    addJson(sSolve);
    addBudget(sSolve);
    sSolve->add_flag("--count", withCount, "also count distinct greedy matchings");

    auto* sPoly = app.add_subcommand("solve-poly", "polynomial solver for lambda0 >= 2");
    addGraph(sPoly);
    addJson(sPoly);

    auto* sDv = app.add_subcommand("decide-vertex", "can a greedy matching match this vertex");
    addGraph(sDv);
    addJson(sDv);
    addBudget(sDv);
    sDv->add_option("--vertex", vertex, "vertex id")->required();

    auto* sDe = app.add_subcommand("decide-edge", "can a greedy matching contain this edge");
    addGraph(sDe);
    addJson(sDe);
    addBudget(sDe);
    sDe->add_option("--edge", edgeArg, "edge as U,V")->required();

    auto* sRgma = app.add_subcommand("rgma", "randomized greedy on a bush graph");
    addGraph(sRgma);
    addJson(sRgma);
    sRgma->add_option("--seed", seed, "seed")->required();
    sRgma->add_option("--trials", trials, "aggregate over this many runs");

    auto* sRgmaExact = app.add_subcommand("rgma-exact", "exact rgma expectation");
    addGraph(sRgmaExact);
    addJson(sRgmaExact);
    addBudget(sRgmaExact);

    auto* sBush = app.add_subcommand("bush-decompose", "convert to a weighted bush graph");
    addGraph(sBush);
    sBush->add_option("--order", order, "random | given:FILE");
    sBush->add_option("--seed", seed, "seed for the random order");
    sBush->add_option("--out", outPath, "output graph file")->required();

    auto* sMrg = app.add_subcommand("mrg", "randomized greedy cardinality matching");
    addGraph(sMrg);
    addJson(sMrg);
    sMrg->add_option("--seed", seed, "seed")->required();
    sMrg->add_option("--trials", trials, "aggregate over this many runs");

    auto* sCompare = app.add_subcommand("compare", "mrg vs rgma-on-decomposition");
    addGraph(sCompare);
    addJson(sCompare);
    sCompare->add_option("--trials", trials, "trials")->required();
    sCompare->add_option("--seed", seed, "seed")->required();
    sCompare->add_option("--csv", csvPath, "write the report as CSV");

    auto* sReduce = app.add_subcommand("reduce", "build a hardness-reduction graph from CNF");
    sReduce->add_option("--cnf", cnfPath, "DIMACS input")->required();
    sReduce->add_option("--variant", variant, "main | bipartite | mu2 | greedy-edge");
    sReduce->add_option("--x", x, "weight parameter (main variant)");
    sReduce->add_flag("--integer-weights", integerWeights, "scale greedy-edge weights by 4");
    sReduce->add_option("--out", outPath, "output graph file");
    sReduce->add_option("--roles", rolesPath, "output roles file");
    sReduce->add_option("--bundle", bundleDir, "write the full certify bundle here");

    auto* sCertify = app.add_subcommand("certify", "convert certificates through a reduction");
    sCertify->add_option("--direction", direction, "a2m | m2a")->required();
    sCertify->add_option("--reduction", reductionDir, "bundle directory from reduce --bundle")
        ->required();
    sCertify->add_option("--input", inputPath, "assignment (a2m) or matching (m2a) file")
        ->required();
    sCertify->add_flag("--json", c.json, "JSON output");

    auto* sExp = app.add_subcommand("experiment", "seeded ratio-estimation experiment");
    sExp->add_option("--config", configPath, "key = value config file")->required();
    sExp->add_option("--out", outDir, "output directory")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (sRun->parsed()) return cmdRun(c, tieBreak, seed, trace, out);
        if (sVerify->parsed()) return cmdVerify(c, matchingPath, out);
        if (sEnum->parsed()) return cmdEnumerate(c, limit, out);
        if (sSolve->parsed()) return cmdSolve(c, withCount, out);
        if (sPoly->parsed()) return cmdSolvePoly(c, out);
        if (sDv->parsed()) return cmdDecide(c, true, vertex, edgeArg, out);
        if (sDe->parsed()) return cmdDecide(c, false, vertex, edgeArg, out);
        if (sRgma->parsed()) return cmdRgma(c, seed, trials, out);
        if (sRgmaExact->parsed()) return cmdRgmaExact(c, out);
        if (sBush->parsed()) return cmdBushDecompose(c, order, seed, outPath, out);
        if (sMrg->parsed()) return cmdMrg(c, seed, trials, out);
        if (sCompare->parsed()) return cmdCompare(c, trials, seed, csvPath, out);
        if (sReduce->parsed())
            return cmdReduce(cnfPath, variant, x, integerWeights, outPath, rolesPath, bundleDir, out);
        if (sCertify->parsed()) return cmdCertify(direction, reductionDir, inputPath, c.json, out);
        if (sExp->parsed()) return cmdExperiment(configPath, outDir, out);
        err << "no subcommand\n";
        return 1;
    } catch (const BudgetExceededError& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return 3;
    } catch (const LimitExceededError& e) {
        err << "limit exceeded: " << e.what() << " (count " << e.partialCount() << ")\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace gm::cli
