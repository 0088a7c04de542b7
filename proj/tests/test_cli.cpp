#include <gtest/gtest.h>

#include <sstream>

#include <nlohmann/json.hpp>

#include "diagcubic/cli.hpp"

using json = nlohmann::ordered_json;

namespace {

struct CliResult {
    int code;
    std::string out, err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = diagcubic::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args, int expected_code = 0) {
    args.push_back("--json");
    CliResult r = run(args);
    EXPECT_EQ(r.code, expected_code) << r.err;
    return json::parse(r.out);
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({"selmer", "550"}).code, 0);
    EXPECT_EQ(run({"surface", "1", "10", "55", "22", "--form", "sum", "--criteria"}).code, 1);
    EXPECT_EQ(run({"surface", "5", "9", "10", "12", "--form", "sum", "--search", "4"}).code, 1);
    EXPECT_EQ(run({"surface", "21", "1", "2", "5", "--criteria"}).code, 0);
    for (const auto& bad : std::vector<std::vector<std::string>>{{},
                                                                 {"bogus"},
                                                                 {"selmer", "16"},
                                                                 {"selmer", "abc"},
                                                                 {"local", "1", "0", "5"},
                                                                 {"local", "1", "2", "5", "--prime", "4"},
                                                                 {"symbol", "3", "1-w"},
                                                                 {"theorem28", "2", "7", "5"},
                                                                 {"surface", "1", "2", "3", "--criteria"},
                                                                 {"surface", "1", "2", "3", "4", "--form", "diagonal"}}) {
        CliResult r = run(bad);
        EXPECT_EQ(r.code, 2) << (bad.empty() ? std::string("<none>") : bad[0]);
        EXPECT_TRUE(r.out.empty());
        EXPECT_FALSE(r.err.empty());
    }
}

TEST(Cli, SelmerEnvelope) {
    json j = run_json({"selmer", "550"});
    EXPECT_EQ(j["command"], "selmer");
    EXPECT_EQ(j["inputs"]["A"], 550);
    EXPECT_EQ(j["result"]["dimension"], 2);
    EXPECT_EQ(j["result"]["order"], 9);
    EXPECT_EQ(j["result"]["s"], 1);
    EXPECT_EQ(j["result"]["s0"], 1);
    EXPECT_EQ(j["result"]["root_sign"], -1);
    EXPECT_EQ(j["result"]["basis"].size(), 2u);
    EXPECT_FALSE(j["conditional_hypotheses"].empty());
    EXPECT_EQ(j["version"], diagcubic::cli::version);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"command", "inputs", "result", "conditional_hypotheses", "version"}));
}

TEST(Cli, LocalAtThree) {
    CliResult r = run({"local", "1", "2", "5", "--prime", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "insolvable"));
    EXPECT_TRUE(contains(r.out, "canonical form"));
    json j = run_json({"local", "1", "2", "5", "--prime", "3"});
    EXPECT_EQ(j["result"]["verdicts"][0]["solvable"], false);
    EXPECT_EQ(j["result"]["verdicts"][0]["certificate"], "classification");
}

TEST(Cli, NegativeCoefficients) {
    CliResult r = run({"local", "-2", "3", "5", "--all"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(contains(r.out, "-2*x^3"));
}

TEST(Cli, PrimeTripleReport) {
    CliResult r = run({"theorem28", "2", "11", "5"});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(contains(r.out, "Ш(E_550/Q)"));
    json j = run_json({"theorem28", "2", "11", "5"});
    ASSERT_EQ(j["conditional_hypotheses"].size(), 1u);
    EXPECT_TRUE(contains(j["conditional_hypotheses"][0].get<std::string>(), "E_550"));
    EXPECT_EQ(j["result"]["A"], 550);
    EXPECT_EQ(j["result"]["pattern"], "(2,2,5)");

    CliResult none = run({"theorem28", "2", "11", "29", "--torsor-bound", "20"});
    EXPECT_EQ(none.code, 0);
    EXPECT_TRUE(contains(none.out, "conditional on"));
    EXPECT_TRUE(contains(none.out, "Ш(E_407044/Q)"));
}

TEST(Cli, SmallCommands) {
    CliResult s = run({"symbol", "3", "2+3*w"});
    EXPECT_EQ(s.code, 0);
    EXPECT_TRUE(contains(s.out, "w^2"));
    json c = run_json({"oracle", "count", "1", "2", "5", "9"});
    EXPECT_EQ(c["result"]["nontrivial_solutions"], 0);
    json f = run_json({"oracle", "ffcount", "1", "1", "2", "--place", "5"});
    EXPECT_EQ(f["result"]["points"], 6);
    json b = run_json({"oracle", "brute", "1", "3", "9", "--place", "3", "--depth", "7"});
    EXPECT_EQ(b["result"]["outcome"], "insolvable");
}

TEST(Cli, JsonRoundTripIsByteIdentical) {
    const std::vector<std::vector<std::string>> cmds{{"selmer", "550", "--witness-bound", "5"},
                                                     {"selmer", "407044"},
                                                     {"local", "55", "10", "1", "--all"},
                                                     {"local", "1", "1", "w", "--prime", "3+w"},
                                                     {"symbol", "2", "5"},
                                                     {"surface", "21", "1", "2", "5", "--criteria", "--search", "3"},
                                                     {"surface", "5", "9", "10", "12", "--form", "sum", "--criteria"},
                                                     {"theorem28", "2", "11", "5"},
                                                     {"theorem28", "2", "2", "5"},
                                                     {"oracle", "count", "1", "1", "2", "9"},
                                                     {"oracle", "brute", "1", "1", "6", "--place", "3"}};
    for (auto args : cmds) {
        args.push_back("--json");
        CliResult r = run(args);
        ASSERT_LE(r.code, 1) << args[0] << ": " << r.err;
        ASSERT_FALSE(r.out.empty());
        std::string body = r.out;
        if (!body.empty() && body.back() == '\n') body.pop_back();
        EXPECT_EQ(json::parse(r.out).dump(2), body) << args[0];
    }
}

TEST(Cli, NoUnconditionalClaimWithoutPoint) {
    const std::vector<std::vector<std::string>> cmds{{"theorem28", "2", "11", "5"},
                                                     {"theorem28", "2", "11", "29", "--torsor-bound", "10"},
                                                     {"theorem28", "5", "2", "2"},
                                                     {"surface", "21", "1", "2", "5", "--criteria"},
                                                     {"surface", "1", "1", "2", "2", "--criteria"},
                                                     {"surface", "1", "1", "1", "1", "--form", "sum", "--search", "2"},
                                                     {"surface", "5", "9", "10", "12", "--form", "sum", "--criteria"}};
    for (const auto& args : cmds) {
        CliResult r = run(args);
        std::istringstream lines(r.out);
        std::string line;
        while (std::getline(lines, line))
            if (contains(line, "V(Q) is nonempty")) {
                bool hedged = contains(line, "conditional on") || contains(line, "exact point") || contains(line, "ratio");
                EXPECT_TRUE(hedged) << line;
            }
        json j = run_json(args, r.code);
        std::string conclusion = j["result"].value("conclusion", "");
        if (contains(conclusion, "conditional")) EXPECT_FALSE(j["conditional_hypotheses"].empty()) << args[0];
    }
}

TEST(Cli, Deterministic) {
    std::vector<std::string> args{"surface", "21", "1", "2", "5", "--criteria", "--search", "4", "--json"};
    CliResult a = run(args);
    args.insert(args.end(), {"--threads", "3"});
    CliResult b = run(args);
    EXPECT_EQ(a.out, b.out);
}
