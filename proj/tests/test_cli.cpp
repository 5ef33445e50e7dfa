#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

struct RunResult {
    int exit_code;
    std::string out;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    fs::path tmp = fs::temp_directory_path() / "vwx_cli_out.txt";
    std::string cmd = std::string(VWX_CLI_PATH) + " " + args + " > " +
                      tmp.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    r.out = slurp(tmp);
    return r;
}

fs::path write_temp(const std::string& name, const std::string& content) {
    fs::path p = fs::temp_directory_path() / name;
    std::ofstream(p, std::ios::binary | std::ios::trunc) << content;
    return p;
}

}  // namespace

TEST_CASE("detect exit codes") {
    CHECK(run("detect --p 11 --n 2").exit_code == 0);
    CHECK(run("detect --p 7 --n 2").exit_code == 1);
    auto bad = run("detect --p 8 --n 2");
    CHECK(bad.exit_code == 2);
    CHECK(bad.out.find("not prime") != std::string::npos);
    CHECK(run("detect --p 11 --n 3").exit_code == 2);  // 3 does not divide 10
}

TEST_CASE("detect reports the witness") {
    auto r = run("detect --p 11 --n 2 --json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"has_solution\":true") != std::string::npos);
    CHECK(r.out.find("\"witness\"") != std::string::npos);
}

TEST_CASE("vw basic run") {
    auto r = run("vw --n 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"p0\": 11") != std::string::npos);
    CHECK(r.out.find("UNCERTIFIED") == std::string::npos);
}

TEST_CASE("vw under-scan is labeled") {
    auto r = run("vw --n 2 --bound 7");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("UNCERTIFIED") != std::string::npos);
}

TEST_CASE("vw workers do not change the bytes") {
    auto a = run("vw --n 5 --workers 1");
    auto b = run("vw --n 5 --workers 8");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("scan csv schema and determinism") {
    auto r = run("scan --from 2 --to 4 --format csv");
    REQUIRE(r.exit_code == 0);
    std::istringstream is(r.out);
    std::string header;
    std::getline(is, header);
    CHECK(header == "n,vw,bound,primes_scanned,num_exceptions,largest_exception");
    std::string row;
    std::getline(is, row);
    CHECK(row.rfind("2,11,", 0) == 0);
}

TEST_CASE("scan bfile format") {
    auto r = run("scan --from 2 --to 4 --format bfile");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out == "2 11\n3 31\n4 41\n");
}

TEST_CASE("scan --out overwrites atomically") {
    auto out = fs::temp_directory_path() / "vwx_scan.csv";
    std::ofstream(out) << "stale contents\n";
    auto r = run("scan --from 2 --to 3 --out " + out.string());
    REQUIRE(r.exit_code == 0);
    std::string body = slurp(out);
    CHECK(body.find("stale") == std::string::npos);
    CHECK(body.rfind("n,vw,", 0) == 0);
    // re-run appends nothing
    auto again = run("scan --from 2 --to 3 --out " + out.string());
    CHECK(slurp(out) == body);
}

TEST_CASE("verify-oeis agreement") {
    auto good = write_temp("vwx_good.bfile", "# A-file comment\n2 11\n3 31\n");
    CHECK(run("verify-oeis --file " + good.string()).exit_code == 0);

    auto bad = write_temp("vwx_bad.bfile", "2 13\n");
    CHECK(run("verify-oeis --file " + bad.string()).exit_code == 1);

    auto junk = write_temp("vwx_junk.bfile", "x y\n");
    auto r = run("verify-oeis --file " + junk.string());
    CHECK(r.exit_code == 2);
    CHECK(r.out.find("line 1") != std::string::npos);
}

TEST_CASE("verify-oeis --to bounds the work") {
    auto f = write_temp("vwx_to.bfile", "2 11\n50 1\n");
    CHECK(run("verify-oeis --file " + f.string() + " --to 2").exit_code == 0);
}

TEST_CASE("bench runs at toy size") {
    auto r = run("bench --p 11 --n 2 --json");
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("naive_median_ns") != std::string::npos);
    CHECK(r.out.find("fast_median_ns") != std::string::npos);
}

TEST_CASE("spectrum examples") {
    auto r7 = run("spectrum --p 7 --n 2 --json");
    REQUIRE(r7.exit_code == 0);
    CHECK(r7.out.find("\"solution_count_exact\":3") != std::string::npos);
    CHECK(r7.out.find("\"identity_pass\":true") != std::string::npos);

    auto rt = run("spectrum --p 7 --n 6 --json");
    REQUIRE(rt.exit_code == 0);
    CHECK(rt.out.find("\"uniformity_pass\":true") != std::string::npos);

    auto r101 = run("spectrum --p 101 --n 4 --json");
    REQUIRE(r101.exit_code == 0);
    CHECK(r101.out.find("\"uniformity_pass\":true") != std::string::npos);
}
