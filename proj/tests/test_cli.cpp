#include <hbp/output_record.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>
#include <sys/wait.h>

#ifndef HBP_CLI_PATH
#error "HBP_CLI_PATH must name the hbp executable"
#endif

namespace {

struct Run {
    int code;
    std::string out;
};

Run run(const std::string &args, const std::string &env = "")
{
    const std::string cmd = env + (env.empty() ? "" : " ") + "'" HBP_CLI_PATH "' " + args + " 2>/dev/null";
    FILE *pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got = 0;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) {
        out.append(buf, got);
    }
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

hbp::ordered_json rows_of(const Run &r)
{
    return hbp::ordered_json::parse(r.out).at("rows");
}

} // namespace

TEST_CASE("numbers", "[cli]")
{
    const Run r = run("numbers --N 1 --n-max 2");
    REQUIRE(r.code == 0);
    const auto doc = hbp::ordered_json::parse(r.out);
    CHECK(doc.at("schema_version") == "1");
    CHECK(doc.at("command") == "numbers");
    CHECK(doc.at("status") == "n/a");
    CHECK(doc.at("rows") == hbp::ordered_json::parse(R"([{"n":0,"value":"1"},{"n":1,"value":"-1/2"},{"n":2,"value":"1/6"}])"));
    CHECK(run("numbers --N 2 --n-max 1 --format csv").out == "n,value\n0,1\n1,-1/3\n");
    CHECK(run("numbers --N 5 --n-max 0 --format tsv").out == "n\tvalue\n0\t1\n");
}

TEST_CASE("poly", "[cli]")
{
    CHECK(rows_of(run("poly --N 1 --n 1"))[0].at("coefficients") == hbp::ordered_json::parse(R"(["-1/2","1"])"));
    CHECK(rows_of(run("poly --N 2 --n 0"))[0].at("coefficients") == hbp::ordered_json::parse(R"(["1"])"));
    CHECK(rows_of(run("poly --N 2 --n 2"))[0].at("coefficients") ==
          hbp::ordered_json::parse(R"(["1/18","-2/3","1"])"));
}

TEST_CASE("sums agree across methods", "[cli]")
{
    const std::string expected = "n,value\n0,1\n1,-2/3\n";
    for (const char *m : {"brute", "recurrence", "closed"}) {
        CHECK(run(std::string("sums --N 2 --p 2 --n-max 1 --z 0 --format csv --method ") + m).out == expected);
    }
    const auto a = rows_of(run("sums --N 3 --p 4 --n-max 8 --z 22/7 --method brute"));
    const auto b = rows_of(run("sums --N 3 --p 4 --n-max 8 --z 22/7 --method closed"));
    const auto c = rows_of(run("sums --N 3 --p 4 --n-max 8 --points 1,2,1/7,0 --method brute"));
    CHECK(a == b);
    CHECK(a == c);
    const auto p1 = rows_of(run("sums --N 2 --p 1 --n-max 4 --z 0"));
    const auto nums = rows_of(run("numbers --N 2 --n-max 4"));
    CHECK(p1 == nums);
}

TEST_CASE("verify", "[cli]")
{
    const Run r = run("verify euler_linear --n 1..50");
    REQUIRE(r.code == 0);
    const auto doc = hbp::ordered_json::parse(r.out);
    CHECK(doc.at("status") == "pass");
    CHECK(doc.at("rows")[0].at("checked") == 50);
    CHECK(doc.at("rows")[0].at("failures").empty());
}

TEST_CASE("fault injection fails with counterexamples", "[cli]")
{
    const Run r = run("verify euler_linear kamano --n 0..10 --inject-fault 1,3,1/5");
    CHECK(r.code == 1);
    const auto doc = hbp::ordered_json::parse(r.out);
    CHECK(doc.at("status") == "fail");
    const auto &f = doc.at("rows")[0].at("failures");
    REQUIRE_FALSE(f.empty());
    CHECK(f[0].contains("lhs"));
    CHECK(f[0].contains("rhs"));
    CHECK(f[0].at("lhs") != f[0].at("rhs"));
    const Run csv = run("verify euler_linear --n 0..10 --inject-fault 1,3,1/5 --format csv");
    CHECK(csv.code == 1);
    CHECK(csv.out.find(",failure,") != std::string::npos);
}

TEST_CASE("usage errors exit 2", "[cli]")
{
    CHECK(run("verify not_an_id").code == 2);
    CHECK(run("numbers --N 0").code == 2);
    CHECK(run("numbers --format xml").code == 2);
    CHECK(run("sums --method fast").code == 2);
    CHECK(run("verify kamano --n 1..x").code == 2);
    CHECK(run("verify kamano --seed-panel 1,1").code == 2);
    CHECK(run("verify kamano --inject-fault 1,2").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("soft n cap from the environment", "[cli]")
{
    CHECK(run("numbers --N 1 --n-max 6", "HBP_MAX_N=5").code == 2);
    CHECK(run("numbers --N 1 --n-max 5", "HBP_MAX_N=5").code == 0);
    CHECK(run("numbers --N 1 --n-max 201").code == 2);
    CHECK(run("numbers --N 1 --n-max 201", "HBP_MAX_N=300").code == 0);
}

TEST_CASE("seed panel reaches the report", "[cli]")
{
    const Run r = run("verify convolution_constancy --N 2 --M 2 --n 0..4 --seed-panel 5/3,-1/9");
    REQUIRE(r.code == 0);
    const auto doc = hbp::ordered_json::parse(r.out);
    CHECK(doc.at("parameters").at("panel") == hbp::ordered_json::parse(R"(["5/3","-1/9"])"));
}

TEST_CASE("output is deterministic and round-trips", "[cli]")
{
    const std::string args = "verify kamano euler_even_quadratic main_multinomial --n 0..12";
    const Run a = run(args);
    const Run b = run(args + " --jobs 3");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    const auto rec = hbp::OutputRecord::from_json(hbp::ordered_json::parse(a.out));
    CHECK(rec.to_json().dump(2) + "\n" == a.out);
    const Run csv = run(args + " --format csv");
    CHECK(csv.out.rfind("id,kind,status,checked,failed,params,lhs,rhs,note\n", 0) == 0);
}
