#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "gm/graph_io.hpp"

namespace {

namespace fs = std::filesystem;

struct Workspace {
    fs::path dir;
    Workspace() : dir(fs::temp_directory_path() / "gm_cli_test") {
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    ~Workspace() { fs::remove_all(dir); }
    std::string file(const std::string& name, const std::string& content) const {
        auto p = dir / name;
        std::ofstream out(p);
        out << content;
        return p.string();
    }
    std::string path(const std::string& name) const { return (dir / name).string(); }
};

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = gm::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST_CASE("cli run, verify and solve") {
    Workspace ws;
    auto graph = ws.file("g.txt", "graph 4\n0 1 2\n1 2 3\n2 3 2\n");
    auto run = cli({"run", "--graph", graph, "--tie-break", "lex", "--seed", "0"});
    CHECK(run.code == 0);
    CHECK(run.out.find("1 2") != std::string::npos);

    auto matching = ws.file("m.txt", "1 2\n");
    auto verify = cli({"verify", "--graph", graph, "--matching", matching});
    CHECK(verify.code == 0);
    CHECK(verify.out.find("greedy") == 0);

    auto bad = ws.file("bad.txt", "0 1\n2 3\n");
    auto verifyBad = cli({"verify", "--graph", graph, "--matching", bad});
    CHECK(verifyBad.code == 0);
    CHECK(verifyBad.out.find("not-greedy") == 0);

    auto solve = cli({"solve", "--graph", graph, "--json"});
    CHECK(solve.code == 0);
    CHECK(solve.out.find("\"opt_weight\": \"3\"") != std::string::npos);

    auto poly = cli({"solve-poly", "--graph", graph});
    CHECK(poly.code == 2); // lambda0 = 3/2 < 2 is an input error
    CHECK(poly.err.find("lambda0") != std::string::npos);
}

TEST_CASE("cli exit codes") {
    Workspace ws;
    CHECK(cli({"solve", "--graph", ws.path("missing.txt")}).code == 2);
    CHECK(cli({"nosuch"}).code == 1);
    CHECK(cli({"solve"}).code == 1); // missing required option
    CHECK(cli({"--help"}).code == 0);

    // A long forced chain with a tiny budget exhausts: exit code 3.
    std::string text = "graph 18\n";
    for (int i = 0; i < 17; ++i)
        text += std::to_string(i) + " " + std::to_string(i + 1) + " " + std::to_string(40 - i) + "\n";
    auto graph = ws.file("chain.txt", text);
    CHECK(cli({"solve", "--graph", graph, "--budget", "2"}).code == 3);
}

TEST_CASE("cli reduce, certify round trip") {
    Workspace ws;
    auto cnf = ws.file("f.cnf", "p cnf 2 2\n1 -2 0\n-1 2 0\n");
    auto bundle = ws.path("bundle");
    auto reduce = cli({"reduce", "--cnf", cnf, "--variant", "main", "--out", ws.path("red.txt"),
                       "--roles", ws.path("roles.txt"), "--bundle", bundle});
    CHECK(reduce.code == 0);
    std::ifstream roles(ws.path("roles.txt"));
    std::string firstRole;
    std::getline(roles, firstRole);
    CHECK(firstRole.rfind("role 0 ", 0) == 0);

    auto assignment = ws.file("tau.txt", "1 2\n");
    auto a2m = cli({"certify", "--direction", "a2m", "--reduction", bundle, "--input", assignment});
    CHECK(a2m.code == 0);
    std::string matchingText;
    for (const auto& line : {a2m.out}) {
        std::istringstream in(line);
        std::string l;
        while (std::getline(in, l))
            if (!l.empty() && l[0] != '#') matchingText += l + "\n";
    }
    auto matchingFile = ws.file("cert.txt", matchingText);
    auto m2a = cli({"certify", "--direction", "m2a", "--reduction", bundle, "--input", matchingFile,
                    "--json"});
    CHECK(m2a.code == 0);
    CHECK(m2a.out.find("satisfied_clauses") != std::string::npos);
}

TEST_CASE("cli experiment is byte deterministic") {
    Workspace ws;
    auto cfg = ws.file("exp.cfg", "generator = bush\ninstances = 2\ntrials = 50\nseed = 3\n"
                                  "algorithms = rgma\nbushes = 2\nmax_bush_edges = 2\n");
    auto r1 = cli({"experiment", "--config", cfg, "--out", ws.path("o1")});
    auto r2 = cli({"experiment", "--config", cfg, "--out", ws.path("o2")});
    CHECK(r1.code == 0);
    CHECK(r2.code == 0);
    auto slurp = [](const std::string& p) {
        std::ifstream in(p);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    CHECK(slurp(ws.path("o1") + "/report.csv") == slurp(ws.path("o2") + "/report.csv"));
    CHECK(slurp(ws.path("o1") + "/report.json") == slurp(ws.path("o2") + "/report.json"));
}

TEST_CASE("cli bush tools") {
    Workspace ws;
    auto graph = ws.file("star.txt", "graph 4\n0 1 2\n0 2 2\n0 3 2\n");
    auto exact = cli({"rgma-exact", "--graph", graph});
    CHECK(exact.code == 0);
    CHECK(exact.out == "2\n");

    auto notBush = ws.file("path.txt", "graph 4\n0 1 2\n1 2 3\n2 3 2\n");
    CHECK(cli({"rgma-exact", "--graph", notBush}).code == 2);

    auto unit = ws.file("unit.txt", "graph 4\n0 1 1\n1 2 1\n2 3 1\n");
    auto dec = cli({"bush-decompose", "--graph", unit, "--order", "given:" +
                    ws.file("order.txt", "1 2 0 3\n"), "--seed", "0", "--out", ws.path("bush.txt")});
    CHECK(dec.code == 0);
    std::ifstream in(ws.path("bush.txt"));
    std::ostringstream buf;
    buf << in.rdbuf();
    auto g = gm::parseGraph(buf.str());
    CHECK(g.numEdges() == 3);
}
