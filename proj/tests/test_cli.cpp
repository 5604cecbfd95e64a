#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>

#include "kfree/forest.hpp"
#include "kfree/strata.hpp"

namespace {

struct CliResult {
    int status;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int g_counter = 0;

CliResult run_cli(const std::string& args) {
    std::string base = "/tmp/kfree_cli_" + std::to_string(getpid()) + "_" +
                       std::to_string(g_counter++);
    std::string out_path = base + ".out";
    std::string err_path = base + ".err";
    std::string cmd = std::string(KFREE_CLI_PATH) + " " + args + " > " +
                      out_path + " 2> " + err_path;
    int rc = std::system(cmd.c_str());
    CliResult res;
    res.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    res.out = slurp(out_path);
    res.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return res;
}

std::vector<std::uint64_t> parse_csv_numbers(const std::string& line) {
    std::vector<std::uint64_t> out;
    std::string token;
    std::istringstream ss(line);
    while (std::getline(ss, token, ','))
        if (!token.empty()) out.push_back(std::stoull(token));
    return out;
}

}  // namespace

TEST_CASE("rk golden value and byte-deterministic JSON") {
    auto r = run_cli("rk --k 15 --n 826875 --json");
    CHECK(r.status == 0);
    CHECK(r.out ==
          "{\"k\":15,\"n\":826875,\"rk\":775180,\"method\":\"forest\"}\n");
    auto again = run_cli("rk --k 15 --n 826875 --json");
    CHECK(again.out == r.out);

    auto plain = run_cli("rk --k 1 --n 100");
    CHECK(plain.status == 0);
    CHECK(plain.out == "0\n");
}

TEST_CASE("rk methods cross-check and validate their domains") {
    CHECK(run_cli("rk --k 2 --n 15 --method coprime").out == "7\n");
    CHECK(run_cli("rk --k 2 --n 15 --method coprime").status == 0);
    CHECK(run_cli("rk --k 2 --n 12 --method coprime").status == 2);
    CHECK(run_cli("rk --k 2 --n 6 --method km").out == "3\n");
    CHECK(run_cli("rk --k 2 --n 12 --method km").status == 2);
    CHECK(run_cli("rk --k 2 --n 12 --method k2m").out == "7\n");
    CHECK(run_cli("rk --k 2 --n 6 --method k2m").status == 2);
    CHECK(run_cli("rk --k 2 --n 8 --method thm5").out == "5\n");
    CHECK(run_cli("rk --k 6 --n 36 --method thm5").status == 2);
    CHECK(run_cli("rk --k 2 --n 12 --method oracle").out == "7\n");
    CHECK(run_cli("rk --k 2 --n 12 --check").out == "7\n");
    CHECK(run_cli("rk --k 15 --n 826875 --method auto").out == "775180\n");
}

TEST_CASE("verify reports the documented line") {
    auto r = run_cli("verify --k 2 --n 12 --set 1,3,4,5,7,9,11");
    CHECK(r.status == 0);
    CHECK(r.out == "k-free: true, size 7\n");
    auto bad = run_cli("verify --k 2 --n 12 --set 1,2");
    CHECK(bad.out == "k-free: false, size 2\n");
    CHECK(run_cli("verify --k 2 --n 12 --set 1,12").status == 2);
    CHECK(run_cli("verify --k 2 --n 12").status == 2);
}

TEST_CASE("construct output round-trips through verify") {
    auto con = run_cli("construct --k 2 --n 12");
    CHECK(con.status == 0);
    CHECK(con.out == "1,3,4,5,7,9,11\n");

    for (std::uint64_t k : {2, 3, 6, 10, 15}) {
        for (std::uint64_t n : {7, 12, 90, 256, 826, 1024}) {
            auto c = run_cli("construct --k " + std::to_string(k) + " --n " +
                             std::to_string(n));
            REQUIRE(c.status == 0);
            std::string set = c.out.substr(0, c.out.size() - 1);
            auto rk = run_cli("rk --k " + std::to_string(k) + " --n " +
                              std::to_string(n));
            std::uint64_t rk_value =
                std::stoull(rk.out.substr(0, rk.out.size() - 1));
            std::uint64_t size = parse_csv_numbers(set).size();
            REQUIRE(size == rk_value);
            if (set.empty()) continue;  // k = 1 mod n: the empty set is it
            auto v = run_cli("verify --k " + std::to_string(k) + " --n " +
                             std::to_string(n) + " --set " + set);
            REQUIRE(v.out == "k-free: true, size " + std::to_string(size) +
                                 "\n");
        }
    }
}

TEST_CASE("construct writes csv and json shapes") {
    auto csv = run_cli("construct --k 2 --n 7 --csv");
    CHECK(csv.out.substr(0, 8) == "element\n");
    auto js = run_cli("construct --k 2 --n 7 --json");
    CHECK(js.out.find("\"size\":2") != std::string::npos);
}

TEST_CASE("forest dot output for the worked example") {
    std::string dot_path = "/tmp/kfree_test_forest.dot";
    auto r = run_cli("forest --k 15 --n 826875 --dot " + dot_path +
                     " --boxed");
    CHECK(r.status == 0);
    CHECK(r.out == "trees=3 nodes=60 rk=775180\n");
    std::string dot = slurp(dot_path);
    std::remove(dot_path.c_str());
    CHECK(dot.find("label=\"root 3^3·5^4\";") != std::string::npos);
    CHECK(dot.find("label=\"root 3^3·5^4·7\";") != std::string::npos);
    CHECK(dot.find("label=\"root 3^3·5^4·7^2\";") !=
          std::string::npos);
    auto stdout_dot = run_cli("forest --k 2 --n 8 --dot -");
    CHECK(stdout_dot.status == 0);
    CHECK(stdout_dot.out.find("digraph divisor_forest") != std::string::npos);
    CHECK(run_cli("forest --k 12 --n 12 --dot -").status == 2);
}

TEST_CASE("tilde command with witness and json") {
    CHECK(run_cli("tilde --k 2 --n 10").out == "6\n");
    auto with_set = run_cli("tilde --k 2 --n 10 --construct");
    CHECK(with_set.out == "6\n1,6,7,8,9,10\n");
    auto js = run_cli("tilde --k 2 --n 10 --json");
    CHECK(js.out ==
          "{\"k\":2,\"n\":10,\"tilde_rk\":6,\"main_term\":\"40/7\","
          "\"error\":\"2/7\"}\n");
    CHECK(run_cli("tilde --k 1 --n 10").status == 2);
}

TEST_CASE("table emits ordered csv rows") {
    std::string path = "/tmp/kfree_test_table.csv";
    auto r = run_cli("table --k 2 --n-from 1 --n-to 12 --oracle-max 12 --out " +
                     path);
    CHECK(r.status == 0);
    std::string csv = slurp(path);
    std::remove(path.c_str());
    std::istringstream ss(csv);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "k,n,rk,method");
    std::uint64_t expect_n = 1;
    while (std::getline(ss, line)) {
        auto fields = parse_csv_numbers(line.substr(0, line.rfind(',')));
        REQUIRE(fields.size() == 3);
        CHECK(fields[0] == 2);
        CHECK(fields[1] == expect_n);
        ++expect_n;
    }
    CHECK(expect_n == 13);

    std::string tilde_path = "/tmp/kfree_test_table_tilde.csv";
    auto rt = run_cli(
        "table --k 2 --n-from 2 --n-to 10 --step 4 --tilde --oracle-max 18 "
        "--out " +
        tilde_path);
    CHECK(rt.status == 0);
    std::string tcsv = slurp(tilde_path);
    std::remove(tilde_path.c_str());
    CHECK(tcsv.substr(0, 28) == "k,n,tilde_rk,main_term,error");
    CHECK(tcsv.find("2,10,6,40/7,2/7") != std::string::npos);
}

TEST_CASE("sidon-bound output") {
    auto r = run_cli("sidon-bound --m 13 --json");
    CHECK(r.status == 0);
    CHECK(r.out.find("\"r2\":3780") != std::string::npos);
    CHECK(r.out.find("\"order_form_floor\":61") != std::string::npos);
    auto warn = run_cli("sidon-bound --m 2");
    CHECK(warn.status == 0);
    CHECK(warn.out.find("degenerate") != std::string::npos);
    CHECK(run_cli("sidon-bound --m 11").status == 2);
}

TEST_CASE("oracle subcommand ranges") {
    CHECK(run_cli("oracle --which rk-exhaustive --k 2 --n 12").out == "7\n");
    CHECK(run_cli("oracle --which rk-pseudoforest --k 2 --n 1024").out ==
          "682\n");
    CHECK(run_cli("oracle --which tilde-exhaustive --k 2 --n 10").out ==
          "6\n");
    CHECK(run_cli("oracle --which rk-exhaustive --k 2 --n 40").status == 2);
    CHECK(run_cli("oracle --which nonsense --k 2 --n 4").status == 2);
}

TEST_CASE("usage errors exit with status 2") {
    CHECK(run_cli("rk --k 2").status == 2);
    CHECK(run_cli("rk --k 2 --n 0").status == 2);
    CHECK(run_cli("bogus").status == 2);
    CHECK(run_cli("rk --k 2 --n 10 --method bogus").status == 2);
}
